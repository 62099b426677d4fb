"""The planar groups SO(2)_p^kappa, parametrised by the projective line.

A point ``[s:t]`` gives the rotation

    1/(t^2 + a s^2) * [[t^2 - a s^2, -2 a s t], [2 s t, t^2 - a s^2]]

which preserves ``x^2 + a y^2``. The low-level helpers take the ratio ``a``
directly so that :mod:`padic_so3.so3` can reuse them for planes whose ratio is
not one of the canonical representatives.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InvalidColumn,
    KappaMismatch,
    NotOrthogonal,
    PrecisionExhausted,
    ZeroVector,
)
from .linalg import det, mat_equals, matmul, transpose
from .padic import PadicContext, PadicNumber
from .quadforms import KappaLabel


class ProjectivePoint:
    """A point of P^1(Q_p) kept as ``[sigma:1]`` or ``[1:tau]`` with ``v(tau) > 0``."""

    __slots__ = ("s", "t")

    def __init__(self, s: PadicNumber, t: PadicNumber):
        self.s, self.t = _normalise(s, t)

    @classmethod
    def affine(cls, ctx: PadicContext, sigma) -> "ProjectivePoint":
        return cls(ctx(sigma), ctx.one)

    @classmethod
    def infinity(cls, ctx: PadicContext) -> "ProjectivePoint":
        return cls(ctx.one, ctx.zero)

    @classmethod
    def origin(cls, ctx: PadicContext) -> "ProjectivePoint":
        return cls(ctx.zero, ctx.one)

    @property
    def ctx(self) -> PadicContext:
        return self.s.ctx

    @property
    def is_infinity(self) -> bool:
        return _negligible(self.t)

    @property
    def is_origin(self) -> bool:
        return _negligible(self.s)

    @property
    def sigma(self) -> PadicNumber:
        """Affine coordinate ``s/t``; undefined at infinity."""
        return self.s / self.t

    def equals(self, other: "ProjectivePoint") -> bool:
        return (self.s * other.t - other.s * self.t).equals(self.ctx.zero)

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def __str__(self) -> str:
        if self.is_infinity:
            return "inf"
        return f"{self.s}:{self.t}"

    def __repr__(self) -> str:
        return f"ProjectivePoint({self})"


def _negligible(x: PadicNumber) -> bool:
    # canonical coordinates are integral, so absolute precision is what counts
    return x.unit == 0 and (x.is_exact_zero or x.absprec >= x.ctx.threshold)


def _normalise(s: PadicNumber, t: PadicNumber):
    ctx = s.ctx
    if s.unit == 0 and t.unit == 0:
        if s.is_exact_zero and t.is_exact_zero:
            raise ZeroVector("[0:0] is not a projective point")
        raise PrecisionExhausted("both homogeneous coordinates are indistinguishable from zero")
    if t.unit == 0:
        return ctx.one, t / s
    if s.unit == 0:
        return s / t, ctx.one
    if s.val >= t.val:
        return s / t, ctx.one
    return ctx.one, t / s


# -- formulas in terms of the ratio alpha ------------------------------------


def block(point: ProjectivePoint, alpha: PadicNumber):
    """The 2x2 rotation matrix of ``point`` for the form ``x^2 + alpha y^2``."""
    s, t = point.s, point.t
    ss, tt, st = s * s, t * t, s * t
    d = tt + alpha * ss
    a = (tt - alpha * ss) / d
    c = (st + st) / d
    return ((a, -(alpha * c)), (c, a))


def compose_points(x: ProjectivePoint, y: ProjectivePoint, alpha: PadicNumber) -> ProjectivePoint:
    s, t, u, v = x.s, x.t, y.s, y.t
    return ProjectivePoint(s * v + t * u, t * v - alpha * s * u)


def inverse_point(x: ProjectivePoint) -> ProjectivePoint:
    return ProjectivePoint(-x.s, x.t)


def negate_point(x: ProjectivePoint, alpha: PadicNumber) -> ProjectivePoint:
    """The point whose rotation is the negative of the rotation of ``x``."""
    return ProjectivePoint(-x.t, alpha * x.s)


def point_from_column(a: PadicNumber, c: PadicNumber, alpha: PadicNumber) -> ProjectivePoint:
    """Recover the point from a first column ``(a, c)`` with ``a^2 + alpha c^2 = 1``.

    ``[c : 1+a]`` and ``[1-a : alpha c]`` name the same point; the pair with the
    larger entries is used, so ``a = -1`` and ``a = 1`` both come out cleanly.
    """
    ctx = a.ctx
    first = (c, ctx.one + a)
    second = (ctx.one - a, alpha * c)
    if min(x.val for x in first) <= min(x.val for x in second):
        return ProjectivePoint(*first)
    return ProjectivePoint(*second)


def solve_plane_rotation(vec, target, alpha: PadicNumber) -> ProjectivePoint:
    """Point whose rotation takes the planar vector ``vec`` to ``target``.

    Both vectors must have the same value of ``x^2 + alpha y^2``; the caller checks it.
    """
    v1, v2 = vec
    w1, w2 = target
    d = v1 * v1 + alpha * v2 * v2
    a = (v1 * w1 + alpha * v2 * w2) / d
    c = (v1 * w2 - v2 * w1) / d
    return point_from_column(a, c, alpha)


# -- the group SO(2)_p^kappa -------------------------------------------------


@dataclass(frozen=True, eq=False)
class Rotation2:
    kappa: KappaLabel
    point: ProjectivePoint

    @property
    def alpha(self) -> PadicNumber:
        return self.kappa.alpha

    @property
    def ctx(self) -> PadicContext:
        return self.alpha.ctx

    def equals(self, other: "Rotation2") -> bool:
        return self.kappa == other.kappa and self.point.equals(other.point)

    def __str__(self) -> str:
        return f"R_{self.kappa.label}({self.point})"


def gram2(kappa: KappaLabel):
    ctx = kappa.alpha.ctx
    return ((ctx.one, ctx.zero), (ctx.zero, kappa.alpha))


def rotation2(kappa: KappaLabel, sigma) -> Rotation2:
    """Convenience constructor: ``sigma`` is a point, ``"inf"`` or an affine value."""
    ctx = kappa.alpha.ctx
    if isinstance(sigma, ProjectivePoint):
        return Rotation2(kappa, sigma)
    if isinstance(sigma, str) and sigma.strip() == "inf":
        return Rotation2(kappa, ProjectivePoint.infinity(ctx))
    return Rotation2(kappa, ProjectivePoint.affine(ctx, sigma))


def matrix2(r: Rotation2):
    return block(r.point, r.alpha)


def _same_kappa(r: Rotation2, r2: Rotation2) -> None:
    if r.kappa != r2.kappa:
        raise KappaMismatch(f"cannot compose kappa={r.kappa} with kappa={r2.kappa}")


def compose2(r: Rotation2, r2: Rotation2) -> Rotation2:
    _same_kappa(r, r2)
    return Rotation2(r.kappa, compose_points(r.point, r2.point, r.alpha))


def inverse2(r: Rotation2) -> Rotation2:
    return Rotation2(r.kappa, inverse_point(r.point))


def negate_relation_check(r: Rotation2) -> Rotation2:
    return Rotation2(r.kappa, negate_point(r.point, r.alpha))


def is_member2(m, kappa: KappaLabel) -> bool:
    a = gram2(kappa)
    lhs = matmul(matmul(transpose(m), a), m)
    return mat_equals(lhs, a) and det(m).equals(kappa.alpha.ctx.one)


def from_matrix2(m, kappa: KappaLabel) -> Rotation2:
    ctx = kappa.alpha.ctx
    m = tuple(tuple(ctx(x) for x in row) for row in m)
    if not is_member2(m, kappa):
        raise NotOrthogonal(f"matrix is not in SO(2) for kappa={kappa}")
    return Rotation2(kappa, point_from_column(m[0][0], m[1][0], kappa.alpha))


def param_from_first_column(a, c, kappa: KappaLabel) -> ProjectivePoint:
    ctx = kappa.alpha.ctx
    a, c = ctx(a), ctx(c)
    if not (a * a + kappa.alpha * c * c).equals(ctx.one):
        raise InvalidColumn(f"({a}, {c}) is not a unit vector for x^2 + {kappa.alpha} y^2")
    return point_from_column(a, c, kappa.alpha)


def embed_T(r: Rotation2):
    """Representative of the class in PGL(2, Q_p) attached to ``r``."""
    s, t = r.point.s, r.point.t
    return ((t, -(r.alpha * s)), (s, t))


def projectively_equal(m1, m2) -> bool:
    """Equality of 2x2 matrices modulo nonzero scalars."""
    f1 = [x for row in m1 for x in row]
    f2 = [x for row in m2 for x in row]
    return all(
        (f1[i] * f2[j] - f1[j] * f2[i]).equals(f1[0].ctx.zero)
        for i in range(4)
        for j in range(i + 1, 4)
    )
