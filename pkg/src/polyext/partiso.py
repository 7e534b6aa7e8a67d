"""Partial isometries ``(C, f : A -> B)`` and isometry systems ``(E, g)``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import PreconditionError
from .rational import QMat, QVec, complete_basis, inverse, kernel_basis, rank, sub, unit, vec
from .space import (PolySpace, Subspace, is_isometric_embedding, is_surjective_isometry,
                    isometric_embedding_defect, norm, subspace_space)


@dataclass(frozen=True, eq=False)
class PartialIsometry:
    """A linear isometry ``f`` from ``dom`` onto ``ran``, both subspaces of ``space``.

    ``map`` is the square matrix of ``f`` from ``dom`` basis coordinates to
    ``ran`` basis coordinates.
    """

    space: PolySpace
    dom: Subspace
    ran: Subspace
    map: QMat

    @classmethod
    def of(cls, space: PolySpace, dom_basis, ran_basis, matrix) -> "PartialIsometry":
        d = space.dim
        dom = Subspace.of(d, dom_basis)
        ran = Subspace.of(d, ran_basis)
        m = QMat.from_rows(matrix, cols=dom.dim)
        return cls(space, dom, ran, m)

    @property
    def matrix_ambient(self) -> QMat:
        """``f`` as a ``dim C x dim A`` matrix taking A-coordinates to C."""
        return self.ran.matrix @ self.map

    def apply_coords(self, coords) -> QVec:
        return self.ran.point(self.map.apply(vec(coords)))

    def apply(self, a) -> QVec:
        """``f(a)`` for an ambient vector ``a`` in the domain."""
        coords = self.dom.coords(a)
        if coords is None:
            raise PreconditionError(f"{tuple(a)} is not in the domain of f")
        return self.apply_coords(coords)

    def inverse_apply(self, b) -> QVec:
        coords = self.ran.coords(b)
        if coords is None:
            raise PreconditionError(f"{tuple(b)} is not in the range of f")
        return self.dom.point(inverse(self.map).apply(coords))

    def __eq__(self, other):
        if not isinstance(other, PartialIsometry):
            return NotImplemented
        return (self.space == other.space and self.dom == other.dom
                and self.ran == other.ran and self.map == other.map)

    __hash__ = None


@dataclass(frozen=True)
class Validation:
    ok: bool
    reason: Optional[str] = None
    witness: Optional[QVec] = None
    detail: Optional[str] = None

    def __bool__(self):
        return self.ok


def validate(o: PartialIsometry) -> Validation:
    """Check every PartialIsometry invariant; never raises."""
    d = o.space.dim
    if o.dom.ambient_dim != d:
        return Validation(False, "domain is not a subspace of the space")
    if o.ran.ambient_dim != d:
        return Validation(False, "range is not a subspace of the space")
    k = o.dom.dim
    if o.map.shape != (k, k) or o.ran.dim != k:
        return Validation(False, "map is not square between domain and range",
                          detail=f"map {o.map.rows}x{o.map.cols}, dom {k}, ran {o.ran.dim}")
    if rank(o.map) != k:
        w = o.dom.point(kernel_basis(o.map)[0])
        return Validation(False, "map is not invertible", witness=w)
    a_space = subspace_space(o.space, o.dom)
    b_space = subspace_space(o.space, o.ran)
    bad = isometric_embedding_defect(a_space, b_space, o.map)
    if bad is not None:
        a = o.dom.point(bad)
        na, nb = norm(o.space, a), norm(o.space, o.apply_coords(bad))
        return Validation(False, "map is not isometric", witness=a,
                          detail=f"||a|| = {na}, ||f(a)|| = {nb}")
    return Validation(True)


@dataclass(frozen=True, eq=False)
class IsometrySystem:
    """A surjective isometry ``auto`` of ``space`` with an embedding of ``source``.

    ``embed`` maps ``source.space`` into ``space``; ``order`` is the least
    ``n`` with ``auto^n = id``.
    """

    space: PolySpace
    auto: QMat
    embed: QMat
    order: int
    source: Optional[PartialIsometry] = field(default=None)

    def failures(self) -> List[str]:
        """Names of violated invariants (empty when sound)."""
        out = []
        e = self.space
        if not is_surjective_isometry(e, self.auto):
            out.append("auto is not a surjective isometry")
        elif not (self.auto ** self.order).is_identity():
            out.append("auto^order is not the identity")
        elif any((self.auto ** m).is_identity() for m in range(1, self.order)):
            out.append("order is not minimal")
        if self.source is not None:
            c = self.source.space
            if self.embed.shape != (e.dim, c.dim):
                out.append("embed has the wrong shape")
                return out
            if not is_isometric_embedding(c, e, self.embed):
                out.append("embed is not an isometric embedding")
            for a in self.source.dom.basis:
                lhs = self.auto.apply(self.embed.apply(a))
                rhs = self.embed.apply(self.source.apply(a))
                if lhs != rhs:
                    out.append(f"equivariance fails at {a}")
                    break
        return out

    def is_sound(self) -> bool:
        return not self.failures()


def linear_hrushovski_extension(ambient_dim: int, dom: Subspace, images: QMat
                                ) -> Tuple[int, QMat]:
    """Extend a partial linear injection of ``Q^d`` to an automorphism.

    ``images`` is the ``d x k`` matrix whose columns are the images of
    ``dom.basis``.  Returns ``(d', g)`` with ``g`` invertible on
    ``Q^{d'}``, ``d' = d + (d - k)``, agreeing with ``images`` on ``dom``.
    """
    d, k = ambient_dim, dom.dim
    if dom.ambient_dim != d or images.shape != (d, k):
        raise PreconditionError("domain basis and image matrix do not fit Q^d")
    if rank(images) != k:
        raise PreconditionError("the partial map is not injective")
    if k == 0:
        return d, QMat.identity(d)
    if k == d:
        return d, images @ inverse(dom.matrix)
    m = d - k
    dd = d + m
    imgs = images.columns()
    u_idx = complete_basis(list(dom.basis), d)
    z_idx = complete_basis(list(imgs), d)
    pad = (Fraction(0),) * m

    def up(v):
        return tuple(v) + pad

    fresh = [unit(dd, d + i) for i in range(m)]
    src = [up(b) for b in dom.basis] + [up(unit(d, i)) for i in u_idx] + fresh
    dst = [up(v) for v in imgs] + fresh + [up(unit(d, i)) for i in z_idx]
    g = QMat.from_columns(dst, dd) @ inverse(QMat.from_columns(src, dd))
    return dd, g


def restriction_of(space: PolySpace, g: QMat, dom: Subspace) -> PartialIsometry:
    """The partial isometry ``g|dom : dom -> g(dom)``."""
    images = [g.apply(b) for b in dom.basis]
    ran = Subspace(space.dim, tuple(images))
    return PartialIsometry(space, dom, ran, QMat.identity(dom.dim))


def difference_norm(o: PartialIsometry, a: QVec, b: QVec) -> Fraction:
    """``||a - f(b)||`` for ambient ``a`` and domain vector ``b``."""
    return norm(o.space, sub(a, o.apply(b)))
