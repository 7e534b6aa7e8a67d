"""Finite-dimensional polyhedral normed spaces over Q.

A :class:`PolySpace` is ``Q^dim`` with the norm whose unit ball is a
symmetric rational polytope.  Either representation of the ball may be
supplied; the other is computed (and canonicalised) on first use.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

from .errors import PreconditionError, ResourceError
from .lp import EQ, LE, LinearProgram, lp_max, lp_min
from .polytope import (SymHRep, SymVRep, canonicalize_hrep, canonicalize_vrep, gauge,
                       hrep_to_vrep, norm_h, vrep_to_hrep)
from .rational import (ZERO, QMat, QVec, complete_basis, dot, independent_subset, inverse,
                       is_zero, kernel_basis, linear_combination, neg, rank, rank_of,
                       scale, sign_normalize, solve, unit, vec, zeros)

log = logging.getLogger(__name__)

# A linear map is just its matrix (codomain_dim x domain_dim).
LinearMap = QMat

DEFAULT_VERTEX_CAP = 16


class PolySpace:
    """``Q^dim`` normed by a symmetric polytope given in V- or H-form."""

    def __init__(self, dim: int, ball_v: Optional[SymVRep] = None,
                 ball_h: Optional[SymHRep] = None, canonical: bool = False):
        if ball_v is None and ball_h is None:
            raise ValueError("a space needs at least one ball representation")
        for rep in (ball_v, ball_h):
            if rep is not None and rep.dim != dim:
                raise ValueError(f"ball of dim {rep.dim} for a space of dim {dim}")
        self.dim = dim
        if not canonical:
            ball_v = canonicalize_vrep(ball_v) if ball_v is not None else None
            ball_h = canonicalize_hrep(ball_h) if ball_h is not None else None
        self._v = ball_v
        self._h = ball_h

    @classmethod
    def from_vertices(cls, dim: int, generators) -> "PolySpace":
        return cls(dim, ball_v=SymVRep.of(dim, generators))

    @classmethod
    def from_facets(cls, dim: int, functionals) -> "PolySpace":
        return cls(dim, ball_h=SymHRep.of(dim, functionals))

    @property
    def ball_v(self) -> SymVRep:
        if self._v is None:
            self._v = hrep_to_vrep(self._h)
        return self._v

    @property
    def ball_h(self) -> SymHRep:
        if self._h is None:
            self._h = vrep_to_hrep(self._v)
        return self._h

    def signed_vertices(self) -> List[QVec]:
        return self.ball_v.vertices()

    def norm(self, x) -> Fraction:
        return norm(self, x)

    def check(self) -> bool:
        """Re-derive each representation from the other and compare."""
        v, h = self.ball_v, self.ball_h
        if any(norm_h(h, g) != 1 for g in v.generators):
            return False
        return hrep_to_vrep(h) == v and vrep_to_hrep(v) == h

    def __eq__(self, other):
        if not isinstance(other, PolySpace):
            return NotImplemented
        if self.dim != other.dim:
            return False
        if self._v is not None and other._v is not None:
            return self._v == other._v
        if self._h is not None and other._h is not None:
            return self._h == other._h
        return self.ball_v == other.ball_v

    __hash__ = None

    def __repr__(self):
        if self._v is not None:
            return f"PolySpace(dim={self.dim}, vertices={len(self._v.generators)})"
        return f"PolySpace(dim={self.dim}, facets={len(self._h.functionals)})"


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: Tuple[QVec, ...]

    def __post_init__(self):
        for b in self.basis:
            if len(b) != self.ambient_dim:
                raise ValueError(f"basis vector {b} is not in Q^{self.ambient_dim}")
        if rank_of(list(self.basis), self.ambient_dim) != len(self.basis):
            raise PreconditionError("subspace basis is linearly dependent")

    @classmethod
    def of(cls, ambient_dim: int, basis) -> "Subspace":
        return cls(ambient_dim, tuple(vec(b) for b in basis))

    @classmethod
    def span(cls, vectors, ambient_dim: int) -> "Subspace":
        """Subspace spanned by possibly dependent vectors (greedy basis)."""
        vectors = [vec(v) for v in vectors]
        idx = independent_subset(vectors, ambient_dim)
        return cls(ambient_dim, tuple(vectors[i] for i in idx))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit(n, i) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def matrix(self) -> QMat:
        """``ambient_dim x dim`` matrix whose columns are the basis."""
        return QMat.from_columns(self.basis, self.ambient_dim)

    def coords(self, x) -> Optional[QVec]:
        """Basis coordinates of ``x``, or None when ``x`` is not in the subspace."""
        return solve(self.matrix, vec(x))

    def contains(self, x) -> bool:
        return self.coords(x) is not None

    def point(self, coords) -> QVec:
        return linear_combination(vec(coords), self.basis, self.ambient_dim)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def same_as(self, other: "Subspace") -> bool:
        return (self.ambient_dim == other.ambient_dim and self.dim == other.dim
                and self.contains_subspace(other))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("subspaces of different ambient spaces")
        # solve sum x_i b_i - sum y_j c_j = 0
        cols = list(self.basis) + [neg(c) for c in other.basis]
        if not cols:
            return Subspace.zero(self.ambient_dim)
        ker = kernel_basis(QMat.from_columns(cols, self.ambient_dim))
        vecs = [linear_combination(k[:self.dim], self.basis, self.ambient_dim) for k in ker]
        return Subspace.span(vecs, self.ambient_dim)


def _lin_map_shape(m: QMat, domain_dim: int, codomain_dim: int) -> None:
    if m.cols != domain_dim or m.rows != codomain_dim:
        raise ValueError(f"map of shape {m.rows}x{m.cols} cannot go from Q^{domain_dim} "
                         f"to Q^{codomain_dim}")


# --------------------------------------------------------------------------
# standard spaces


def l1_space(n: int) -> PolySpace:
    return PolySpace(n, ball_v=SymVRep(n, tuple(sorted(unit(n, i) for i in range(n)))),
                     canonical=True)


def linf_space(n: int) -> PolySpace:
    return PolySpace(n, ball_h=SymHRep(n, tuple(sorted(unit(n, i) for i in range(n)))),
                     canonical=True)


def hexagon_space() -> PolySpace:
    return PolySpace.from_vertices(2, [(1, 0), (0, 1), (1, 1)])


def trivial_space() -> PolySpace:
    return PolySpace(0, ball_v=SymVRep(0, ()), ball_h=SymHRep(0, ()), canonical=True)


# --------------------------------------------------------------------------
# operations


def norm(s: PolySpace, x) -> Fraction:
    x = vec(x)
    if len(x) != s.dim:
        raise ValueError(f"vector of dim {len(x)} in a space of dim {s.dim}")
    return norm_h(s.ball_h, x)


def dual(s: PolySpace) -> PolySpace:
    """The dual space: vertices and facets swap roles."""
    return PolySpace(s.dim, ball_v=SymVRep(s.dim, s.ball_h.functionals),
                     ball_h=SymHRep(s.dim, s.ball_v.generators), canonical=True)


def subspace_space(s: PolySpace, sub: Subspace) -> PolySpace:
    """The subspace with the restricted norm, in basis coordinates."""
    if sub.ambient_dim != s.dim:
        raise ValueError("subspace lives in a different ambient space")
    k = sub.dim
    if k == 0:
        return trivial_space()
    pulled = [tuple(dot(u, b) for b in sub.basis) for u in s.ball_h.functionals]
    pulled = [u for u in pulled if not is_zero(u)]
    return PolySpace(k, ball_h=SymHRep(k, tuple(pulled)))


def quotient_coordinates(dim: int, sub: Subspace) -> Tuple[QMat, QMat]:
    """Projection ``Q^dim -> Q^dim / sub`` and a lift back.

    The quotient is coordinatised by the lexicographically first standard
    basis vectors completing ``sub.basis``; the lift sends quotient
    coordinates to the matching combination of those standard vectors.
    """
    comp = complete_basis(list(sub.basis), dim)
    q = len(comp)
    lift = QMat.from_columns([unit(dim, i) for i in comp], dim) if q else QMat.zero(dim, 0)
    if dim == 0:
        return QMat.zero(0, 0), lift
    full = QMat.from_columns([unit(dim, i) for i in comp] + list(sub.basis), dim)
    inv = inverse(full)
    proj = QMat(q, dim, inv.data[:q])
    return proj, lift


def quotient_space(s: PolySpace, sub: Subspace) -> Tuple[PolySpace, QMat]:
    """``s / sub`` with the quotient norm, plus the projection map."""
    if sub.ambient_dim != s.dim:
        raise ValueError("subspace lives in a different ambient space")
    proj, _ = quotient_coordinates(s.dim, sub)
    q = proj.rows
    if q == 0:
        return trivial_space(), proj
    images = [proj.apply(g) for g in s.ball_v.generators]
    space = PolySpace(q, ball_v=SymVRep(q, tuple(images)))
    return space, proj


def _product_reps(xs: Sequence[QVec], ys: Sequence[QVec]) -> Tuple[QVec, ...]:
    out = set()
    for a in xs:
        for b in ys:
            out.add(sign_normalize(a + b))
            out.add(sign_normalize(a + neg(b)))
    return tuple(sorted(out))


def _block_union(xs: Sequence[QVec], dx: int, ys: Sequence[QVec], dy: int) -> Tuple[QVec, ...]:
    return tuple(sorted([a + zeros(dy) for a in xs] + [zeros(dx) + b for b in ys]))


def l1_sum(x: PolySpace, y: PolySpace) -> PolySpace:
    """``X + Y`` with ``||(a, b)|| = ||a|| + ||b||``."""
    d = x.dim + y.dim
    ball_v = SymVRep(d, _block_union(x.ball_v.generators, x.dim, y.ball_v.generators, y.dim))
    ball_h = None
    if x._h is not None and y._h is not None:
        # facets of the l1-sum are the pairs of facets (vertices of the dual product)
        ball_h = SymHRep(d, _product_reps(x._h.functionals or ((),), y._h.functionals or ((),)))
    return PolySpace(d, ball_v=ball_v, ball_h=ball_h, canonical=True)


def linf_sum(x: PolySpace, y: PolySpace) -> PolySpace:
    """``X + Y`` with ``||(a, b)|| = max(||a||, ||b||)``."""
    d = x.dim + y.dim
    ball_h = SymHRep(d, _block_union(x.ball_h.functionals, x.dim, y.ball_h.functionals, y.dim))
    ball_v = None
    if x._v is not None and y._v is not None:
        ball_v = SymVRep(d, _product_reps(x._v.generators or ((),), y._v.generators or ((),)))
    return PolySpace(d, ball_v=ball_v, ball_h=ball_h, canonical=True)


def l1_power(c: PolySpace, n: int) -> PolySpace:
    """The n-fold l1-sum ``C + ... + C`` (V-representation only)."""
    d = c.dim * n
    gens = []
    for i in range(n):
        for g in c.ball_v.generators:
            gens.append(zeros(i * c.dim) + g + zeros((n - 1 - i) * c.dim))
    return PolySpace(d, ball_v=SymVRep(d, tuple(sorted(gens))), canonical=True)


def pullback_hrep(dst: PolySpace, m: QMat) -> SymHRep:
    """Canonical H-form of ``{x : m x in B_dst}`` (``m`` injective)."""
    funcs = [tuple(dot(u, c) for c in m.columns()) for u in dst.ball_h.functionals]
    funcs = [u for u in funcs if not is_zero(u)]
    return canonicalize_hrep(SymHRep(m.cols, tuple(funcs)))


def is_isometric_embedding(src: PolySpace, dst: PolySpace, m: QMat) -> bool:
    """Injective and norm preserving, decided by comparing the balls exactly."""
    return isometric_embedding_defect(src, dst, m) is None


def _pulled_ball_support(dst: PolySpace, m: QMat, u: QVec) -> Tuple[Fraction, QVec]:
    """``max u.c`` over ``{c : m c in B_dst}`` from the vertices of ``B_dst``."""
    gens = dst.ball_v.generators
    k, p = m.cols, len(gens)
    n = k + 2 * p
    cons = []
    for r in range(m.rows):
        row = tuple(m.data[r]) + tuple(-g[r] for g in gens) + tuple(g[r] for g in gens)
        cons.append((row, ZERO, EQ))
    cons.append(((ZERO,) * k + (Fraction(1),) * (2 * p), Fraction(1), LE))
    out = lp_max(tuple(u) + (ZERO,) * (2 * p), cons, n, nonneg=range(k, n))
    return out.value, out.point[:k]


def isometric_embedding_defect(src: PolySpace, dst: PolySpace, m: QMat) -> Optional[QVec]:
    """A unit vector of ``src`` whose norm ``m`` changes, or None if ``m`` is isometric.

    With ``dst`` facets at hand the pulled-back facets are compared with
    those of ``src``.  Otherwise only ``dst`` vertices are used: ``m`` must
    keep every ``src`` vertex on the unit sphere, and no ``src`` facet may
    exceed 1 on the pulled-back ball.  Both tests compare the balls exactly.
    """
    _lin_map_shape(m, src.dim, dst.dim)
    if src.dim == 0:
        return None
    if rank(m) != src.dim:
        return kernel_basis(m)[0]
    if dst._h is not None:
        pulled = pullback_hrep(dst, m)
        if pulled == src.ball_h:
            return None
        candidates = list(src.ball_v.generators + hrep_to_vrep(pulled).generators)
        dst_norm = dst.norm
    else:
        def dst_norm(x):
            return gauge(dst.ball_v, x)

        candidates = list(src.ball_v.generators)
        if all(dst_norm(m.apply(v)) == 1 for v in candidates):
            for u in src.ball_h.functionals:
                value, c = _pulled_ball_support(dst, m, u)
                if value > 1:
                    candidates.append(c)
                    break
            else:
                return None
    for v in candidates:
        n = norm(src, v)
        if n != dst_norm(m.apply(v)):
            return scale(1 / n, v)
    raise AssertionError("balls differ but no vertex witnesses it")  # pragma: no cover


def is_surjective_isometry(s: PolySpace, g: QMat) -> bool:
    if g.shape != (s.dim, s.dim):
        return False
    if s.dim == 0:
        return True
    if rank(g) != s.dim:
        return False
    verts = set(s.signed_vertices())
    return all(g.apply(v) in verts for v in verts)


def vertex_permutation(s: PolySpace, g: QMat) -> List[int]:
    verts = s.signed_vertices()
    index = {v: i for i, v in enumerate(verts)}
    return [index[g.apply(v)] for v in verts]


def _perm_order(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    order = 1
    for i in range(len(perm)):
        if not seen[i]:
            length, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            order = lcm(order, length)
    return order


def isometry_order(s: PolySpace, g: QMat) -> int:
    """Least ``n >= 1`` with ``g^n = id``."""
    if not is_surjective_isometry(s, g):
        raise PreconditionError("map is not a surjective isometry of the space")
    if s.dim == 0:
        return 1
    bound = _perm_order(vertex_permutation(s, g))
    power = g
    for n in range(1, bound + 1):
        if power.is_identity():
            return n
        power = power @ g
    raise AssertionError("vertex permutation order does not bound the map order")  # pragma: no cover


def _profile(s: PolySpace, v: QVec, verts: Sequence[QVec]) -> Tuple[Fraction, ...]:
    return tuple(sorted(norm(s, tuple(a - b for a, b in zip(v, w))) for w in verts))


def isometry_group(s: PolySpace, vertex_cap: int = DEFAULT_VERTEX_CAP) -> List[QMat]:
    """All surjective linear isometries, as matrices in a fixed order.

    Each isometry permutes the signed vertices; we try every assignment of a
    vertex basis to signed vertices with a matching distance profile and keep
    the linear maps that carry the vertex set onto itself.
    """
    if s.dim < 1:
        raise PreconditionError("isometry_group needs dim >= 1")
    gens = list(s.ball_v.generators)
    if len(gens) > vertex_cap:
        raise ResourceError(f"{len(gens)} vertex pairs exceed the cap of {vertex_cap}")
    verts = s.signed_vertices()
    vert_set = set(verts)
    profiles = {v: _profile(s, v, verts) for v in verts}
    basis_idx = independent_subset(gens, s.dim)
    basis = [gens[i] for i in basis_idx]
    binv = inverse(QMat.from_columns(basis, s.dim))
    candidates = [[w for w in verts if profiles[w] == profiles[b]] for b in basis]
    found = set()
    for images in itertools.product(*candidates):
        pairs = {sign_normalize(w) for w in images}
        if len(pairs) != len(images):
            continue
        m = QMat.from_columns(images, s.dim) @ binv
        if all(m.apply(v) in vert_set for v in gens) and rank(m) == s.dim:
            found.add(m.data)
    return [QMat(s.dim, s.dim, d) for d in sorted(found)]


# --------------------------------------------------------------------------
# LP-based norm minimisation


def min_sum_of_norms(blocks, num_vars: int):
    """Minimise ``sum_k ||base_k + D_k s||_{space_k}`` over free ``s``.

    ``blocks`` is a list of ``(space, base, D)`` with ``D`` a QMat of shape
    ``space.dim x num_vars``.  Returns ``(value, s)``.
    """
    nb = len(blocks)
    total = num_vars + nb
    cons = []
    for k, (sp, base, dmat) in enumerate(blocks):
        for u in sp.ball_h.functionals:
            coeff = tuple(dot(u, dmat.column(j)) for j in range(num_vars))
            const = dot(u, base)
            for sign in (1, -1):
                row = [sign * c for c in coeff] + [ZERO] * nb
                row[num_vars + k] = Fraction(-1)
                cons.append((tuple(row), -sign * const, LE))
    objective = (ZERO,) * num_vars + (Fraction(1),) * nb
    prog = LinearProgram(objective, tuple(cons), total,
                         frozenset(range(num_vars, total)))
    out = lp_min(prog)
    if not out.optimal:  # pragma: no cover - norms are bounded below
        raise AssertionError(f"norm minimisation came back {out.status}")
    return out.value, out.point[:num_vars]


def quotient_norm_lp(s: PolySpace, sub: Subspace, x) -> Fraction:
    """``inf_{u in sub} ||x + u||`` by one exact LP."""
    x = vec(x)
    dmat = sub.matrix if sub.dim else QMat.zero(s.dim, 0)
    value, _ = min_sum_of_norms([(s, x, dmat)], sub.dim)
    return value
