"""Centrally symmetric rational polytopes used as unit balls.

A ball is stored either by its vertices (one representative per antipodal
pair, :class:`SymVRep`) or by its facet functionals ``u`` with the ball equal
to ``{x : |u . x| <= 1 for all u}`` (:class:`SymHRep`).  Both conversions run
the same exact double-description vertex enumeration: the facet functionals
of ``absconv(V)`` are the vertices of the polar ``{u : |u . v| <= 1}``.

Conversions are exponential in the worst case; they are comfortable up to
dimension about 6 with a few dozen vertex pairs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

from .errors import DegenerateBallError, PreconditionError, SeminormError
from .lp import EQ, LinearProgram, lp_min
from .rational import (ZERO, QMat, QVec, dot, independent_subset, inverse, is_zero,
                       kernel_basis, neg, primitive_int, rank_of, sign_normalize, vec)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SymVRep:
    dim: int
    generators: Tuple[QVec, ...]

    def __post_init__(self):
        for g in self.generators:
            if len(g) != self.dim:
                raise ValueError(f"generator {g} does not have {self.dim} coordinates")

    @classmethod
    def of(cls, dim: int, generators) -> "SymVRep":
        return cls(dim, tuple(vec(g) for g in generators))

    def vertices(self) -> List[QVec]:
        """All vertices, both members of every antipodal pair."""
        out = []
        for g in self.generators:
            out.append(g)
            out.append(neg(g))
        return out


@dataclass(frozen=True)
class SymHRep:
    dim: int
    functionals: Tuple[QVec, ...]

    def __post_init__(self):
        for u in self.functionals:
            if len(u) != self.dim:
                raise ValueError(f"functional {u} does not have {self.dim} coordinates")

    @classmethod
    def of(cls, dim: int, functionals) -> "SymHRep":
        return cls(dim, tuple(vec(u) for u in functionals))


# --------------------------------------------------------------------------
# double description


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _int_row(u: QVec) -> Tuple[int, ...]:
    """Integer row ``(q, -w)`` for the homogenised constraint ``u . x <= t``."""
    den = 1
    for a in u:
        den = den * a.denominator // gcd(den, a.denominator)
    w = [int(a * den) for a in u]
    row = [den] + [-x for x in w]
    g = 0
    for x in row:
        g = gcd(g, x)
    return tuple(x // g for x in row)


def _primitive(v: List[int]) -> Tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in v)
    return tuple(v)


def enumerate_vertices(functionals: Sequence[QVec], dim: int) -> List[QVec]:
    """Vertices of the bounded polytope ``{x : |u . x| <= 1}``, both signs.

    The functionals must separate points (checked by the callers).
    """
    if dim == 0:
        return [()]
    rows = []
    seen = set()
    for u in functionals:
        if is_zero(u):
            continue
        for s in (u, neg(u)):
            r = _int_row(s)
            if r not in seen:
                seen.add(r)
                rows.append(r)
    D = dim + 1
    as_frac = [tuple(Fraction(x) for x in r) for r in rows]
    init = independent_subset(as_frac, D)
    if len(init) < D:
        raise SeminormError("functionals do not separate points")
    order = init + [i for i in range(len(rows)) if i not in set(init)]
    rows = [rows[i] for i in order]

    inv = inverse(QMat(D, D, tuple(as_frac[i] for i in init)))
    rays: List[Tuple[int, ...]] = [_primitive(primitive_int(c)) for c in inv.columns()]
    full = (1 << D) - 1
    zsets = [full & ~(1 << i) for i in range(D)]

    for pos in range(D, len(rows)):
        a = rows[pos]
        vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
        plus = [i for i, v in enumerate(vals) if v > 0]
        minus = [i for i, v in enumerate(vals) if v < 0]
        if not minus:
            bit = 1 << pos
            zsets = [z | bit if vals[i] == 0 else z for i, z in enumerate(zsets)]
            continue
        bit = 1 << pos
        new_rays = []
        new_z = []
        for i, v in enumerate(vals):
            if v >= 0:
                new_rays.append(rays[i])
                new_z.append(zsets[i] | bit if v == 0 else zsets[i])
        need = D - 2
        for ip in plus:
            zp = zsets[ip]
            for im in minus:
                common = zp & zsets[im]
                if _popcount(common) < need:
                    continue
                adjacent = True
                for k, zk in enumerate(zsets):
                    if k != ip and k != im and common & zk == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vm = vals[ip], vals[im]
                rp, rm = rays[ip], rays[im]
                r = [vp * y - vm * x for x, y in zip(rp, rm)]
                new_rays.append(_primitive(r))
                new_z.append(common | bit)
        rays, zsets = new_rays, new_z
    log.debug("double description: %d rows, %d vertices in dim %d", len(rows), len(rays), dim)
    out = []
    for r in rays:
        t = r[0]
        if t <= 0:
            raise SeminormError("polytope is unbounded")
        out.append(tuple(Fraction(x, t) for x in r[1:]))
    return out


def _canonical_list(vectors) -> Tuple[QVec, ...]:
    return tuple(sorted(set(sign_normalize(v) for v in vectors if not is_zero(v))))


def _check_separates(functionals, dim):
    if dim == 0:
        return
    if rank_of(list(functionals), dim) < dim:
        mat = QMat(len(functionals), dim, tuple(functionals)) if functionals else QMat.zero(0, dim)
        witness = kernel_basis(mat)[0]
        raise SeminormError(f"functionals do not separate points; kernel vector {witness}",
                            witness=witness)


def _check_spans(generators, dim):
    if rank_of(list(generators), dim) < dim:
        raise DegenerateBallError(f"generators do not span Q^{dim}")


# --------------------------------------------------------------------------
# conversions


def vrep_to_hrep(v: SymVRep) -> SymHRep:
    """Facet functionals of the absolutely convex hull of ``v``."""
    _check_spans(v.generators, v.dim)
    if v.dim == 0:
        return SymHRep(0, ())
    facets = enumerate_vertices(v.generators, v.dim)
    return SymHRep(v.dim, _canonical_list(facets))


def hrep_to_vrep(h: SymHRep) -> SymVRep:
    """Extreme points of ``{x : |u . x| <= 1}``."""
    _check_separates(h.functionals, h.dim)
    if h.dim == 0:
        return SymVRep(0, ())
    return SymVRep(h.dim, _canonical_list(enumerate_vertices(h.functionals, h.dim)))


def gauge_lp(generators: Sequence[QVec], dim: int, x: QVec):
    """``min sum |mu_i|`` with ``sum mu_i g_i = x``, or None if x is outside the span."""
    m = len(generators)
    if is_zero(x):
        return ZERO
    if m == 0:
        return None
    cons = []
    for i in range(dim):
        row = tuple(g[i] for g in generators) + tuple(-g[i] for g in generators)
        cons.append((row, x[i], EQ))
    prog = LinearProgram((Fraction(1),) * (2 * m), tuple(cons), 2 * m, frozenset(range(2 * m)))
    out = lp_min(prog)
    return out.value if out.optimal else None


def gauge(v: SymVRep, x) -> Fraction:
    """Minkowski functional of the ball ``absconv(v.generators)`` at ``x``."""
    x = vec(x)
    if len(x) != v.dim:
        raise ValueError(f"point of dim {len(x)} for a ball of dim {v.dim}")
    value = gauge_lp(v.generators, v.dim, x)
    if value is None:
        raise DegenerateBallError("point lies outside the span of the generators")
    return value


def norm_h(h: SymHRep, x) -> Fraction:
    x = vec(x)
    if len(x) != h.dim:
        raise ValueError(f"point of dim {len(x)} for a ball of dim {h.dim}")
    return max((abs(dot(u, x)) for u in h.functionals), default=ZERO)


def canonicalize_vrep(v: SymVRep) -> SymVRep:
    _check_spans(v.generators, v.dim)
    gens = list(_canonical_list(v.generators))
    i = 0
    while i < len(gens):
        others = gens[:i] + gens[i + 1:]
        value = gauge_lp(others, v.dim, gens[i])
        if value is not None and value <= 1:
            del gens[i]
        else:
            i += 1
    return SymVRep(v.dim, tuple(gens))


def facet_functionals(functionals: Sequence[QVec], vertices: Sequence[QVec], dim: int) -> List[QVec]:
    """Those functionals that are tight on ``dim`` independent vertices."""
    out = []
    for u in functionals:
        tight = []
        for x in vertices:
            val = dot(u, x)
            if val == 1:
                tight.append(x)
            elif val == -1:
                tight.append(neg(x))
        if tight and rank_of(tight, dim) == dim:
            out.append(u)
    return out


def canonicalize_hrep(h: SymHRep) -> SymHRep:
    _check_separates(h.functionals, h.dim)
    if h.dim == 0:
        return SymHRep(0, ())
    funcs = _canonical_list(h.functionals)
    verts = enumerate_vertices(funcs, h.dim)
    return SymHRep(h.dim, tuple(facet_functionals(funcs, verts, h.dim)))


def canonicalize(rep):
    """Canonical form of a :class:`SymVRep` or :class:`SymHRep`.

    Redundant members are dropped, each antipodal pair is represented by the
    member whose first nonzero coordinate is positive, and the list is
    sorted, so equal balls have identical canonical forms.
    """
    if isinstance(rep, SymVRep):
        return canonicalize_vrep(rep)
    if isinstance(rep, SymHRep):
        return canonicalize_hrep(rep)
    raise TypeError(f"cannot canonicalize {type(rep).__name__}")


def is_smooth_point(h: SymHRep, x) -> bool:
    """True iff exactly one facet pair supports the ball at the unit vector ``x``."""
    x = vec(x)
    if norm_h(h, x) != 1:
        raise PreconditionError(f"{x} is not on the unit sphere")
    return sum(1 for u in h.functionals if abs(dot(u, x)) == 1) == 1
