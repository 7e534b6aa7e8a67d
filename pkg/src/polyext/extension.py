"""Extending a partial isometry to a surjective isometry of a larger space.

For ``o = (C, f : A -> B)`` and ``n >= 1`` the cyclic construction takes
``E0 = C + ... + C`` (n-fold l1-sum) with the cyclic shift ``g0``, divides
out the g0-invariant subspace ``N`` spanned by ``(.., a, -f(a), ..)`` over
adjacent slots (and the wrap-around ``(-f(a), .., a)``), and embeds ``C``
as the first slot.  The embedding is isometric exactly when

    ||a_0 - f(a_{n-1})|| <= sum_{i<n-1} ||a_{i+1} - f(a_i)||

holds for all ``a_0, ..., a_{n-1}`` in ``A``, so running the construction
decides that inequality at a fixed ``n``.  Success yields a certificate
(an :class:`IsometrySystem`); failure yields a violating tuple.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .errors import EmbeddingError, PreconditionError
from .partiso import IsometrySystem, PartialIsometry, validate
from .rational import (QMat, QVec, add, independent_subset, linear_combination, neg,
                       sub, unit, vec, zeros)
from .space import (PolySpace, Subspace, is_isometric_embedding, is_surjective_isometry,
                    isometric_embedding_defect, isometry_order, l1_power, l1_space, l1_sum,
                    min_sum_of_norms, norm, quotient_coordinates, quotient_space,
                    subspace_space)

log = logging.getLogger(__name__)


def gurarii_counterexample() -> PartialIsometry:
    """``C = l1^2``, ``A = Q(1,0)``, ``B = Q(1,1)``, ``f(t,0) = (t/2, t/2)``."""
    return PartialIsometry.of(l1_space(2), [(1, 0)], [(1, 1)], [["1/2"]])


def rotation_partiso() -> PartialIsometry:
    """The full isometry ``(x, y) -> (-y, x)`` of ``l1^2``."""
    return PartialIsometry.of(l1_space(2), [(1, 0), (0, 1)], [(0, 1), (-1, 0)],
                              [[1, 0], [0, 1]])


def _require_valid(o: PartialIsometry) -> None:
    v = validate(o)
    if not v:
        raise PreconditionError(f"invalid partial isometry: {v.reason}")


# --------------------------------------------------------------------------
# cyclic extension


class CyclicExtension(NamedTuple):
    space: PolySpace
    auto: QMat
    embed: QMat


def _slot(vector: QVec, i: int, n: int, d: int) -> Tuple[QVec, ...]:
    return zeros(i * d) + tuple(vector) + zeros((n - 1 - i) * d)


def cyclic_kernel(o: PartialIsometry, n: int) -> Subspace:
    """The g0-invariant subspace ``N`` of ``C^n`` divided out by the construction."""
    d = o.space.dim
    gens = []
    for a in o.dom.basis:
        fa = o.apply(a)
        if n == 1:
            gens.append(sub(a, fa))
            continue
        for i in range(n - 1):
            gens.append(add(_slot(a, i, n, d), _slot(neg(fa), i + 1, n, d)))
        gens.append(add(_slot(neg(fa), 0, n, d), _slot(a, n - 1, n, d)))
    return Subspace.span(gens, n * d)


def cyclic_shift(d: int, n: int) -> QMat:
    """``(c_0, ..., c_{n-1}) -> (c_1, ..., c_{n-1}, c_0)`` on ``(Q^d)^n``."""
    rows = []
    for i in range(n):
        src = (i + 1) % n
        for r in range(d):
            rows.append(unit(n * d, src * d + r))
    return QMat(n * d, n * d, tuple(rows))


def cyclic_extension(o: PartialIsometry, n: int) -> CyclicExtension:
    """``E = C^n / N`` with the induced shift and the first-slot embedding.

    Always returns; the embedding is isometric iff the cyclic inequality
    holds at this ``n``.
    """
    if n < 1:
        raise PreconditionError("n must be at least 1")
    _require_valid(o)
    c = o.space
    d = c.dim
    e0 = l1_power(c, n)
    kern = cyclic_kernel(o, n)
    e, proj = quotient_space(e0, kern)
    _, lift = quotient_coordinates(n * d, kern)
    auto = proj @ cyclic_shift(d, n) @ lift
    first = QMat.from_columns([_slot(unit(d, i), 0, n, d) for i in range(d)], n * d) \
        if d else QMat.zero(n * d, 0)
    embed = proj @ first
    log.debug("cyclic extension n=%d: dim E0=%d, dim N=%d, dim E=%d", n, n * d, kern.dim, e.dim)
    return CyclicExtension(e, auto, embed)


# --------------------------------------------------------------------------
# the cyclic inequality


def cyclic_sides(o: PartialIsometry, points: Sequence) -> Tuple[Fraction, Fraction]:
    """``(||a_0 - f(a_{n-1})||, sum_i ||a_{i+1} - f(a_i)||)`` for ambient points."""
    pts = [vec(p) for p in points]
    if not pts:
        raise ValueError("need at least one point")
    c = o.space
    lhs = norm(c, sub(pts[0], o.apply(pts[-1])))
    rhs = sum((norm(c, sub(pts[i + 1], o.apply(pts[i]))) for i in range(len(pts) - 1)),
              Fraction(0))
    return lhs, rhs


@dataclass(frozen=True)
class Condition3Report:
    """Outcome of the cyclic inequality at one ``n``.

    ``witness`` holds ``a_0, ..., a_{n-1}`` in domain-basis coordinates
    when the inequality fails; ``system`` is the certificate when it holds.
    """

    n: int
    holds: bool
    witness: Optional[Tuple[QVec, ...]] = None
    lhs: Optional[Fraction] = None
    rhs: Optional[Fraction] = None
    system: Optional[IsometrySystem] = None

    def witness_points(self, o: PartialIsometry) -> List[QVec]:
        return [o.dom.point(w) for w in self.witness or ()]

    def recheck(self, o: PartialIsometry) -> bool:
        """Re-evaluate the certificate from scratch."""
        if self.holds:
            if self.system is None:
                return False
            sys_ok = self.system.is_sound() and (self.system.auto ** self.n).is_identity()
            return sys_ok and self.system.source == o
        if self.witness is None or len(self.witness) != self.n:
            return False
        if any(len(w) != o.dom.dim for w in self.witness):
            return False
        lhs, rhs = cyclic_sides(o, self.witness_points(o))
        return lhs == self.lhs and rhs == self.rhs and lhs > rhs


def _decode_witness(o: PartialIsometry, n: int, c: QVec) -> Tuple[QVec, ...]:
    """Minimise ``||(c,0,..,0) + u||`` over ``u`` in ``N`` parametrised by ``a_i``.

    A general ``u`` in ``N`` is ``(a_0 - f(a_{n-1}), a_1 - f(a_0), ...,
    a_{n-1} - f(a_{n-2}))``, so the optimiser returns the tuple directly.
    """
    sp = o.space
    d, k = sp.dim, o.dom.dim
    amb = o.dom.matrix
    fmat = o.matrix_ambient
    nvars = n * k
    blocks = []
    for j in range(n):
        # slot j: a_j - f(a_{j-1})
        cols = []
        for i in range(n):
            for t in range(k):
                col = [Fraction(0)] * d
                if i == j:
                    col = [x + y for x, y in zip(col, amb.column(t))]
                if i == (j - 1) % n:
                    col = [x - y for x, y in zip(col, fmat.column(t))]
                cols.append(tuple(col))
        dmat = QMat.from_columns(cols, d) if cols else QMat.zero(d, 0)
        base = c if j == 0 else zeros(d)
        blocks.append((sp, base, dmat))
    value, s = min_sum_of_norms(blocks, nvars)
    if value >= norm(sp, c):
        raise AssertionError("coset of c does not drop in norm")  # pragma: no cover
    return tuple(tuple(s[i * k:(i + 1) * k]) for i in range(n))


def check_condition3(o: PartialIsometry, n: int) -> Condition3Report:
    """Decide the cyclic inequality at ``n`` via the cyclic extension."""
    ext = cyclic_extension(o, n)
    c = o.space
    bad = isometric_embedding_defect(c, ext.space, ext.embed)
    if bad is None:
        order = isometry_order(ext.space, ext.auto)
        system = IsometrySystem(ext.space, ext.auto, ext.embed, order, source=o)
        return Condition3Report(n, True, system=system)
    witness = _decode_witness(o, n, bad)
    lhs, rhs = cyclic_sides(o, [o.dom.point(w) for w in witness])
    if not lhs > rhs:
        raise AssertionError("decoded tuple does not violate the inequality")  # pragma: no cover
    return Condition3Report(n, False, witness=witness, lhs=lhs, rhs=rhs)


class SearchResult(NamedTuple):
    n: Optional[int]
    system: Optional[IsometrySystem]
    reports: Tuple[Condition3Report, ...]


def search_extendability(o: PartialIsometry, n_max: int) -> SearchResult:
    """Least ``n <= n_max`` at which the inequality holds, or ``n = None``.

    ``None`` means unknown up to ``n_max``: there is no bound on ``n`` to
    make the search complete.
    """
    reports = []
    for n in range(1, n_max + 1):
        rep = check_condition3(o, n)
        reports.append(rep)
        if rep.holds:
            return SearchResult(n, rep.system, tuple(reports))
    return SearchResult(None, None, tuple(reports))


# --------------------------------------------------------------------------
# amalgamation over an isometry system


class Amalgam(NamedTuple):
    partiso: PartialIsometry
    jt: QMat
    kt: QMat


def _check_embedding_of_system(e: PolySpace, g: QMat, o: PartialIsometry, j: QMat, name: str):
    if j.shape != (o.space.dim, e.dim):
        raise EmbeddingError(f"{name} has shape {j.shape}, expected {(o.space.dim, e.dim)}")
    if not is_isometric_embedding(e, o.space, j):
        raise EmbeddingError(f"{name} is not an isometric embedding")
    for i in range(e.dim):
        x = unit(e.dim, i)
        jx = j.apply(x)
        if not o.dom.contains(jx):
            raise EmbeddingError(f"{name}({x}) is not in the domain", vector=x)
        if o.apply(jx) != j.apply(g.apply(x)):
            raise EmbeddingError(f"{name} is not equivariant at {x}", vector=x)


def amalgamate(system: IsometrySystem, o2: PartialIsometry, j: QMat,
               o3: PartialIsometry, k: QMat) -> Amalgam:
    """Amalgamate ``o2`` and ``o3`` over ``(E, g)`` in ``(C2 + C3)/N``.

    ``N = {(j(e), -k(e))}`` and the sum carries the l1 norm.  The returned
    maps satisfy ``jt . j = kt . k`` on ``E``.
    """
    e, g = system.space, system.auto
    if not is_surjective_isometry(e, g):
        raise PreconditionError("the system's map is not a surjective isometry")
    _check_embedding_of_system(e, g, o2, j, "j")
    _check_embedding_of_system(e, g, o3, k, "k")
    c2, c3 = o2.space, o3.space
    total = l1_sum(c2, c3)
    dim = total.dim
    kern = Subspace.span([j.apply(x) + neg(k.apply(x)) for x in
                          (unit(e.dim, i) for i in range(e.dim))], dim)
    c4, proj = quotient_space(total, kern)
    left = QMat.from_columns([unit(dim, i) for i in range(c2.dim)], dim) \
        if c2.dim else QMat.zero(dim, 0)
    right = QMat.from_columns([unit(dim, c2.dim + i) for i in range(c3.dim)], dim) \
        if c3.dim else QMat.zero(dim, 0)
    jt = proj @ left
    kt = proj @ right

    span_src, span_img = [], []
    for a in o2.dom.basis:
        span_src.append(jt.apply(a))
        span_img.append(jt.apply(o2.apply(a)))
    for a in o3.dom.basis:
        span_src.append(kt.apply(a))
        span_img.append(kt.apply(o3.apply(a)))
    idx = independent_subset(span_src, c4.dim)
    a4 = Subspace(c4.dim, tuple(span_src[i] for i in idx))
    b4 = Subspace.span([jt.apply(b) for b in o2.ran.basis] + [kt.apply(b) for b in o3.ran.basis],
                       c4.dim)
    images = [span_img[i] for i in idx]
    for s, t in zip(span_src, span_img):
        coords = a4.coords(s)
        if linear_combination(coords, images, c4.dim) != t:
            raise EmbeddingError("f4 is not well defined", vector=s)
    cols = [b4.coords(t) for t in images]
    if any(col is None for col in cols):
        raise EmbeddingError("f4 does not map into B4")  # pragma: no cover
    fmap = QMat.from_columns(cols, b4.dim) if cols else QMat.zero(b4.dim, 0)
    o4 = PartialIsometry(c4, a4, b4, fmap)
    check = validate(o4)
    if not check:
        raise AssertionError(f"amalgam is not a partial isometry: {check.reason}")
    return Amalgam(o4, jt, kt)


# --------------------------------------------------------------------------
# eventual core


class Core(NamedTuple):
    core: Subspace
    restricted: QMat
    steps: int


def eventual_core(o: PartialIsometry) -> Core:
    """Largest subspace ``E`` with ``f(E) = E``, by ``E_{v+1} = f^-1(B & E_v)``.

    ``steps`` is the first ``v`` with ``E_{v+1} = E_v``; it never exceeds
    ``dim C``.  The restricted map is given in core-basis coordinates.
    """
    _require_valid(o)
    d = o.space.dim
    current = Subspace.full(d)
    steps = 0
    while True:
        inter = o.ran.intersect(current)
        nxt = Subspace.span([o.inverse_apply(b) for b in inter.basis], d)
        if nxt.same_as(current):
            break
        current = nxt
        steps += 1
    cols = [current.coords(o.apply(b)) for b in current.basis]
    r = current.dim
    restricted = QMat.from_columns(cols, r) if r else QMat.zero(0, 0)
    if not is_surjective_isometry(subspace_space(o.space, current), restricted):
        raise AssertionError("restriction to the core is not a surjective isometry")  # pragma: no cover
    return Core(current, restricted, steps)
