"""Exact rational scalars, vectors and dense matrices.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator).  Vectors are plain tuples of fractions.  Matrices are
:class:`QMat` values with an explicit shape so that ``0 x n`` and ``n x 0``
matrices keep their dimensions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple

Rat = Fraction
QVec = Tuple[Fraction, ...]

_RAT_RE = re.compile(r"^\s*([-−+]?)(\d+)(?:/(\d+))?\s*$")

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(x) -> Fraction:
    """Coerce ints, fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: they would silently smuggle rounding in.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def parse_rat(text: str) -> Fraction:
    m = _RAT_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational {text!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    value = Fraction(int(num), int(den) if den else 1)
    return -value if sign in ("-", "−") else value


def format_rat(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vec(values: Iterable) -> QVec:
    return tuple(rat(v) for v in values)


def zeros(n: int) -> QVec:
    return (ZERO,) * n


def unit(n: int, i: int) -> QVec:
    return tuple(ONE if k == i else ZERO for k in range(n))


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), ZERO)


def add(u: QVec, v: QVec) -> QVec:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: QVec, v: QVec) -> QVec:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Fraction, v: QVec) -> QVec:
    return tuple(c * a for a in v)


def neg(v: QVec) -> QVec:
    return tuple(-a for a in v)


def is_zero(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


def linear_combination(coeffs: Sequence[Fraction], vectors: Sequence[QVec], dim: int) -> QVec:
    out = [ZERO] * dim
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                out[i] += c * a
    return tuple(out)


def sign_normalize(v: QVec) -> QVec:
    """Return the one of ``v, -v`` whose first nonzero entry is positive."""
    for a in v:
        if a > 0:
            return v
        if a < 0:
            return neg(v)
    return v


def primitive_int(v: Sequence[Fraction]) -> Tuple[int, ...]:
    """Scale a rational vector to a coprime integer vector (same direction)."""
    den = 1
    for a in v:
        den = den * a.denominator // gcd(den, a.denominator)
    ints = [int(a * den) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g > 1:
        ints = [a // g for a in ints]
    return tuple(ints)


@dataclass(frozen=True)
class QMat:
    """Dense rational matrix, stored row-major as a tuple of row tuples."""

    rows: int
    cols: int
    data: Tuple[QVec, ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError(f"entries do not match shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: Optional[int] = None) -> "QMat":
        data = tuple(vec(r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable], rows: int) -> "QMat":
        columns = [vec(c) for c in columns]
        data = tuple(tuple(c[i] for c in columns) for i in range(rows))
        return cls(rows, len(columns), data)

    @classmethod
    def identity(cls, n: int) -> "QMat":
        return cls(n, n, tuple(unit(n, i) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "QMat":
        return cls(rows, cols, tuple(zeros(cols) for _ in range(rows)))

    # Shape names used by the map-level API.
    @property
    def domain_dim(self) -> int:
        return self.cols

    @property
    def codomain_dim(self) -> int:
        return self.rows

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def column(self, j: int) -> QVec:
        return tuple(r[j] for r in self.data)

    def columns(self) -> Tuple[QVec, ...]:
        return tuple(self.column(j) for j in range(self.cols))

    @property
    def T(self) -> "QMat":
        return QMat(self.cols, self.rows, self.columns())

    def apply(self, x: Sequence[Fraction]) -> QVec:
        if len(x) != self.cols:
            raise ValueError(f"vector of dim {len(x)} applied to {self.rows}x{self.cols} matrix")
        return tuple(sum((a * b for a, b in zip(r, x)), ZERO) for r in self.data)

    def __matmul__(self, other: "QMat") -> "QMat":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return QMat(self.rows, other.cols,
                    tuple(tuple(dot(r, c) for c in cols) for r in self.data))

    def __pow__(self, k: int) -> "QMat":
        if self.rows != self.cols or k < 0:
            raise ValueError("only nonnegative powers of square matrices")
        result, base = QMat.identity(self.rows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __neg__(self) -> "QMat":
        return QMat(self.rows, self.cols, tuple(neg(r) for r in self.data))

    def __sub__(self, other: "QMat") -> "QMat":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return QMat(self.rows, self.cols, tuple(sub(a, b) for a, b in zip(self.data, other.data)))

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == QMat.identity(self.rows)


def hstack(blocks: Sequence[QMat]) -> QMat:
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise ValueError("hstack needs equal row counts")
    data = tuple(sum((b.data[i] for b in blocks), ()) for i in range(rows))
    return QMat(rows, sum(b.cols for b in blocks), data)


def block_diag(blocks: Sequence[QMat]) -> QMat:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = []
    offset = 0
    for b in blocks:
        for r in b.data:
            data.append(zeros(offset) + r + zeros(cols - offset - b.cols))
        offset += b.cols
    return QMat(rows, cols, tuple(data))


def _row_reduce(rows: Sequence[Sequence[Fraction]], ncols: int):
    """Reduced row echelon form.  Returns (rref rows, pivot columns).

    Pivot choice only affects speed: among candidate rows we take the entry
    with the smallest numerator/denominator size.
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        best = None
        for i in range(r, len(m)):
            a = m[i][c]
            if a:
                size = abs(a.numerator) + a.denominator
                if best is None or size < best[0]:
                    best = (size, i)
        if best is None:
            continue
        i = best[1]
        m[r], m[i] = m[i], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [a / p for a in m[r]]
        pr = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [a - f * b for a, b in zip(m[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(m: QMat) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_row_reduce(m.data, m.cols)[1])


def rank_of(vectors: Sequence[QVec], dim: int) -> int:
    if not vectors or dim == 0:
        return 0
    return len(_row_reduce(vectors, dim)[1])


def kernel_basis(m: QMat) -> list:
    """Basis of ``{x : m x = 0}``; one vector per free column."""
    if m.rows == 0:
        return [unit(m.cols, j) for j in range(m.cols)]
    red, pivots = _row_reduce(m.data, m.cols)
    free = [j for j in range(m.cols) if j not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * m.cols
        x[f] = ONE
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(m: QMat, b: Sequence[Fraction]) -> Optional[QVec]:
    """One exact solution of ``m x = b`` (free variables set to 0), or None."""
    if len(b) != m.rows:
        raise ValueError(f"right-hand side has dim {len(b)}, matrix has {m.rows} rows")
    if m.rows == 0:
        return zeros(m.cols)
    aug = [tuple(r) + (rat(bi),) for r, bi in zip(m.data, b)]
    red, pivots = _row_reduce(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for row, p in zip(red, pivots):
        x[p] = row[m.cols]
    return tuple(x)


def inverse(m: QMat) -> QMat:
    if m.rows != m.cols:
        raise ValueError("only square matrices are invertible")
    n = m.rows
    aug = [tuple(r) + unit(n, i) for i, r in enumerate(m.data)]
    red, pivots = _row_reduce(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return QMat(n, n, tuple(tuple(row[n:]) for row in red))


def independent_subset(vectors: Sequence[QVec], dim: int, start: Sequence[QVec] = ()) -> list:
    """Indices of a greedy maximal subset of ``vectors`` independent modulo ``start``."""
    basis_rows: list = []
    pivots: list = []

    def reduce(v):
        v = list(v)
        for row, p in zip(basis_rows, pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def insert(v):
        v = reduce(v)
        for p, a in enumerate(v):
            if a:
                v = [x / a for x in v]
                for k, row in enumerate(basis_rows):
                    if row[p]:
                        f = row[p]
                        basis_rows[k] = [x - f * y for x, y in zip(row, v)]
                basis_rows.append(v)
                pivots.append(p)
                return True
        return False

    for s in start:
        insert(s)
    return [i for i, v in enumerate(vectors) if insert(v)]


def complete_basis(vectors: Sequence[QVec], dim: int) -> list:
    """Indices of the lexicographically first standard basis vectors completing
    ``vectors`` to a basis of Q^dim."""
    return independent_subset([unit(dim, i) for i in range(dim)], dim, start=vectors)
