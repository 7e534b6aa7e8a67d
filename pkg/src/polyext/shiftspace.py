"""Finitely supported sequences ``Z -> C`` with the l1 norm, and the quotient
by the shift-invariant subspace spanned by ``(.., -f(a), a, ..)``.

Only windows matter: for ``a`` supported in ``[k, l]`` the quotient norm is
attained by generators living inside ``[k, l]``, so one exact LP suffices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

from .errors import PreconditionError
from .partiso import PartialIsometry
from .rational import QMat, QVec, is_zero, neg, sub, vec, zeros
from .space import PolySpace, min_sum_of_norms, norm


@dataclass(frozen=True, eq=False)
class FinSupportSeq:
    space: PolySpace
    entries: Tuple[Tuple[int, QVec], ...]

    @classmethod
    def of(cls, space: PolySpace, entries: Dict[int, Iterable]) -> "FinSupportSeq":
        clean = {}
        for k, v in entries.items():
            v = vec(v)
            if len(v) != space.dim:
                raise ValueError(f"entry at {k} has {len(v)} coordinates, expected {space.dim}")
            if not is_zero(v):
                clean[int(k)] = v
        return cls(space, tuple(sorted(clean.items())))

    def as_dict(self) -> Dict[int, QVec]:
        return dict(self.entries)

    def __getitem__(self, k: int) -> QVec:
        return self.as_dict().get(k, zeros(self.space.dim))

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(k for k, _ in self.entries)

    def __eq__(self, other):
        if not isinstance(other, FinSupportSeq):
            return NotImplemented
        return self.space == other.space and self.entries == other.entries

    __hash__ = None

    def __sub__(self, other: "FinSupportSeq") -> "FinSupportSeq":
        out = self.as_dict()
        for k, v in other.entries:
            out[k] = sub(out.get(k, zeros(self.space.dim)), v)
        return FinSupportSeq.of(self.space, out)


def d_norm(a: FinSupportSeq) -> Fraction:
    return sum((norm(a.space, v) for _, v in a.entries), Fraction(0))


def shift(a: FinSupportSeq) -> FinSupportSeq:
    """``(shift a)(k) = a(k - 1)``."""
    return FinSupportSeq(a.space, tuple((k + 1, v) for k, v in a.entries))


def embed_at(space: PolySpace, c, k: int = 0) -> FinSupportSeq:
    return FinSupportSeq.of(space, {k: c})


def windowed_quotient_norm(a: FinSupportSeq, o: PartialIsometry, k: int, l: int) -> Fraction:
    """``inf ||a + eta||`` over ``eta`` spanned by generators inside ``[k, l]``.

    The generator with ``x`` at ``r`` and ``-f(x)`` at ``r - 1`` needs both
    ``r - 1`` and ``r`` in the window.
    """
    if o.space != a.space:
        raise PreconditionError("partial isometry lives on a different space")
    if k > l:
        raise PreconditionError(f"empty window [{k}, {l}]")
    outside = [i for i in a.support if not k <= i <= l]
    if outside:
        raise PreconditionError(f"support index {outside[0]} lies outside [{k}, {l}]")
    sp = o.space
    d, m = sp.dim, o.dom.dim
    amb = o.dom.matrix
    fmat = o.matrix_ambient
    rs = list(range(k + 1, l + 1))
    nvars = len(rs) * m
    blocks = []
    for j in range(k, l + 1):
        cols = []
        for r in rs:
            for t in range(m):
                if j == r:
                    cols.append(amb.column(t))
                elif j == r - 1:
                    cols.append(neg(fmat.column(t)))
                else:
                    cols.append(zeros(d))
        dmat = QMat.from_columns(cols, d) if cols else QMat.zero(d, 0)
        blocks.append((sp, a[j], dmat))
    if nvars == 0:
        return d_norm(a)
    value, _ = min_sum_of_norms(blocks, nvars)
    return value


def check_shift_equivariance(o: PartialIsometry, samples, candidate: Optional[QMat] = None) -> bool:
    """True iff ``shift(j(a))`` and ``j(f(a))`` define the same coset for every sample.

    ``candidate`` replaces ``f`` on the right-hand side by another
    ``dim C x dim A`` matrix (A-coordinates to C), which lets a corrupted
    claim be checked against the true quotient.
    """
    sp = o.space
    for a in samples:
        a = vec(a)
        coords = o.dom.coords(a)
        if coords is None:
            raise PreconditionError(f"{a} is not in the domain of f")
        fa = o.apply(a) if candidate is None else candidate.apply(coords)
        diff = shift(embed_at(sp, a, 0)) - embed_at(sp, fa, 0)
        if windowed_quotient_norm(diff, o, 0, 1) != 0:
            return False
    return True
