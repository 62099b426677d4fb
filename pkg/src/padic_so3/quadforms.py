"""Diagonal quadratic forms over Q_p and the definite forms used by the rotation groups."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import ContextMismatch, NotDefinite, UndefinedOnZero, ZeroVector
from .padic import (
    PadicContext,
    PadicNumber,
    SquareClass,
    class_of_int,
    hilbert_classes,
    hilbert_symbol,
    square_class,
)


@dataclass(frozen=True)
class DiagonalQuadraticForm:
    ctx: PadicContext
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.ctx(a) for a in self.coeffs)
        for a in coeffs:
            if a.is_exact_zero:
                raise UndefinedOnZero("diagonal form with a zero coefficient is degenerate")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def __call__(self, x) -> PadicNumber:
        return evaluate(self, x)


@dataclass(frozen=True)
class FormInvariants:
    rank: int
    discriminant: SquareClass
    hasse: int


@dataclass(frozen=True)
class KappaLabel:
    """One of the anisotropic binary classes, with its normalised ratio ``alpha``.

    The form attached to the label is ``x**2 + alpha * y**2`` up to scaling.
    """

    label: str
    alpha: PadicNumber

    @property
    def p(self) -> int:
        return self.alpha.ctx.p

    def __str__(self) -> str:
        return self.label

    def __eq__(self, other):
        return isinstance(other, KappaLabel) and self.p == other.p and self.label == other.label

    def __hash__(self):
        return hash((self.p, self.label))


def invariants(q: DiagonalQuadraticForm) -> FormInvariants:
    d = q.ctx.one
    for a in q.coeffs:
        d = d * a
    eps = 1
    for a, b in combinations(q.coeffs, 2):
        eps *= hilbert_symbol(a, b)
    return FormInvariants(q.rank, square_class(d), eps)


def equivalent(q1: DiagonalQuadraticForm, q2: DiagonalQuadraticForm) -> bool:
    if q1.ctx.p != q2.ctx.p:
        raise ContextMismatch("forms over different primes")
    return invariants(q1) == invariants(q2)


def represents_zero(q: DiagonalQuadraticForm) -> bool:
    n = q.rank
    if n <= 1:
        return False
    if n >= 5:
        return True
    p = q.ctx.p
    inv = invariants(q)
    d = inv.discriminant
    minus_one = class_of_int(p, -1)
    if n == 2:
        return d == minus_one
    if n == 3:
        minus_d = d * minus_one
        return inv.hasse == hilbert_classes(minus_one, minus_d)
    one = class_of_int(p, 1)
    if d != one:
        return True
    return inv.hasse == hilbert_classes(minus_one, minus_one)


# -- the rank-2 anisotropic classes ------------------------------------------


def kappa_labels(ctx: PadicContext) -> list[KappaLabel]:
    p = ctx.p
    if p == 2:
        return [KappaLabel(str(a), ctx(a)) for a in (1, 2, -2, 5, -5, 10, -10)]
    return [
        KappaLabel("-v", ctx(-ctx.v)),
        KappaLabel("p", ctx(p)),
        KappaLabel("up", ctx(Fraction(p, ctx.u))),
    ]


def kappa_from_label(ctx: PadicContext, label: str) -> KappaLabel:
    for k in kappa_labels(ctx):
        if k.label == label.strip():
            return k
    names = ", ".join(k.label for k in kappa_labels(ctx))
    raise ValueError(f"unknown kappa label {label!r} for p={ctx.p}; expected one of {names}")


def kappa_for_class(ctx: PadicContext, cls: SquareClass) -> KappaLabel:
    """The label whose ratio ``alpha`` lies in the square class ``cls``."""
    for k in kappa_labels(ctx):
        if square_class(k.alpha) == cls:
            return k
    raise NotDefinite(f"x^2 + a y^2 with a in class {cls.label} represents zero")


def classify_definite_2d(q: DiagonalQuadraticForm) -> KappaLabel:
    if q.rank != 2:
        raise ValueError("classify_definite_2d needs a rank-2 form")
    if represents_zero(q):
        raise NotDefinite(f"form {[str(a) for a in q.coeffs]} represents zero")
    return kappa_for_class(q.ctx, invariants(q).discriminant)


def definite_form(ctx: PadicContext, n) -> DiagonalQuadraticForm:
    """Canonical anisotropic form: rank 3 or 4, or the binary form of a kappa label."""
    p = ctx.p
    if isinstance(n, (KappaLabel, str)):
        kappa = kappa_from_label(ctx, n) if isinstance(n, str) else n
        if p != 2 and kappa.label == "up":
            return DiagonalQuadraticForm(ctx, (ctx.u, p))
        return DiagonalQuadraticForm(ctx, (1, kappa.alpha))
    if n == 3:
        return DiagonalQuadraticForm(ctx, (1, 1, 1) if p == 2 else (1, -ctx.v, p))
    if n == 4:
        if p == 2:
            return DiagonalQuadraticForm(ctx, (1, 1, 1, 1))
        return DiagonalQuadraticForm(ctx, (1, -ctx.v, p, -ctx.v * p))
    raise ValueError(f"no canonical definite form of rank {n!r}")


def isotropic_companion(ctx: PadicContext, n: int) -> DiagonalQuadraticForm:
    """``x1**2 + ... + x_{n-1}**2 - x_n**2``, the indefinite analogue."""
    if n < 2:
        raise ValueError("rank must be at least 2")
    return DiagonalQuadraticForm(ctx, (1,) * (n - 1) + (-1,))


# -- evaluation --------------------------------------------------------------


def _check_dim(q: DiagonalQuadraticForm, *vs) -> None:
    for v in vs:
        if len(v) != q.rank:
            raise ValueError(f"vector of length {len(v)} for a rank-{q.rank} form")


def evaluate(q: DiagonalQuadraticForm, x) -> PadicNumber:
    _check_dim(q, x)
    acc = q.ctx.zero
    for a, xi in zip(q.coeffs, x):
        acc = acc + a * q.ctx(xi) * q.ctx(xi)
    return acc


def bilinear(q: DiagonalQuadraticForm, x, y) -> PadicNumber:
    # sum a_i x_i y_i; equal to (Q(x+y)-Q(x)-Q(y))/2 but never divides by 2
    _check_dim(q, x, y)
    acc = q.ctx.zero
    for a, xi, yi in zip(q.coeffs, x, y):
        acc = acc + a * q.ctx(xi) * q.ctx(yi)
    return acc


# -- restriction of the ternary form to a plane ------------------------------


@dataclass(frozen=True)
class PlaneRestriction:
    """Orthogonal basis ``g, h`` of the plane orthogonal to ``n`` and ``alpha = Q(h)/Q(g)``."""

    kappa: KappaLabel
    g: tuple
    h: tuple
    alpha: PadicNumber


def restrict_to_plane(q: DiagonalQuadraticForm, n) -> PlaneRestriction:
    ctx = q.ctx
    if q.rank != 3:
        raise ValueError("restrict_to_plane needs a rank-3 form")
    n = tuple(ctx(x) for x in n)
    if len(n) != 3:
        raise ValueError("axis must have three components")
    if all(x.is_zero for x in n):
        raise ZeroVector("the zero vector has no orthogonal plane")
    w = tuple(a * x for a, x in zip(q.coeffs, n))
    k = min((i for i in range(3) if w[i].unit), key=lambda i: (w[i].val, i))
    others = [j for j in range(3) if j != k]

    def basis_vec(j):
        vec = [ctx.zero] * 3
        vec[j] = ctx.one
        vec[k] = -(w[j] / w[k])
        return tuple(vec)

    g = basis_vec(others[0])
    g1 = basis_vec(others[1])
    coef = bilinear(q, g1, g) / evaluate(q, g)
    h = tuple(b - coef * a for a, b in zip(g, g1))
    alpha = evaluate(q, h) / evaluate(q, g)
    return PlaneRestriction(kappa_for_class(ctx, square_class(alpha)), g, h, alpha)
