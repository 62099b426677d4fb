"""Cardano and Euler decompositions of SO(3)_p elements into reference rotations.

An order such as ``"ZYX"`` is read left to right as a matrix product, so a
:class:`Decomposition` with params ``(a, b, c)`` stands for
``R_z(a) R_y(b) R_x(c)``.

Every order ``n1 n2 n3`` reduces to one square test. Writing ``c`` for the
``n1`` coordinate of ``M e_n3``, the vector ``R_n2(b) e_n3`` has the same
``n1`` coordinate, and its remaining coordinate ``w`` must satisfy
``a_r w^2 = a_n3 - a_n1 c^2`` where ``a`` are the coefficients of the form and
``r`` is the coordinate of the plane of ``n2`` other than ``n1``. A
decomposition exists exactly when ``(a_n3 - a_n1 c^2) / a_r`` is zero or a
square; each square root gives one decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    DecompositionInfeasible,
    InternalConsistencyError,
    NotOrthogonal,
    UnsupportedPrime,
)
from .padic import PadicContext, PadicNumber, SquareClass, is_square, sqrt, square_class
from .so2 import (
    ProjectivePoint,
    compose_points,
    inverse_point,
    point_from_column,
    solve_plane_rotation,
)
from .so3 import (
    AXES,
    Rotation3,
    axis_alpha,
    is_member,
    plane_coords,
    q_plus,
    reference_rotation,
    rotation_taking,
)

CARDANO_ORDERS = ("ZYX", "ZXY", "XYZ", "YXZ", "XZY", "YZX")
EULER_ORDERS = ("XYX", "XZX", "YXY", "YZY", "ZXZ", "ZYZ")
ALL_ORDERS = CARDANO_ORDERS + EULER_ORDERS

# orders decomposed through the inverse matrix, paired with the order used there
_VIA_INVERSE = {"XYZ": "ZYX", "YXZ": "ZXY", "YZX": "XZY"}


def normalise_order(order: str) -> str:
    o = order.strip().upper()
    if o not in ALL_ORDERS:
        raise ValueError(f"unknown axis order {order!r}; expected one of {', '.join(ALL_ORDERS)}")
    return o


def is_euler(order: str) -> bool:
    return order[0] == order[2]


@dataclass(frozen=True)
class Decomposition:
    order: str
    params: tuple  # three ProjectivePoint, left to right

    def matrix(self, ctx: PadicContext) -> Rotation3:
        out = Rotation3.identity(ctx)
        for axis, pt in zip(self.order, self.params):
            out = out @ reference_rotation(ctx, axis.lower(), pt)
        return out

    def equals(self, other: "Decomposition") -> bool:
        return self.order == other.order and all(
            a.equals(b) for a, b in zip(self.params, other.params)
        )


@dataclass(frozen=True)
class FeasibilityReport:
    order: str
    feasible: bool
    witness: Optional[PadicNumber]
    witness_class: Optional[SquareClass]


def _third_coordinate(order: str) -> int:
    n1, n2 = order[0].lower(), order[1].lower()
    (i, j) = [AXES[a] for a in "xyz" if a != n2]
    return j if i == AXES[n1] else i


def _square_test_value(m: Rotation3, order: str):
    ctx = m.ctx
    a = q_plus(ctx).coeffs
    i1 = AXES[order[0].lower()]
    i3 = AXES[order[2].lower()]
    r = _third_coordinate(order)
    c = m.column(i3)[i1]
    q = (a[i3] - a[i1] * c * c) / a[r]
    return c, q, r


def feasibility_check(m: Rotation3, order: str) -> FeasibilityReport:
    order = normalise_order(order)
    if not is_member(m):
        raise NotOrthogonal("matrix does not lie in SO(3)_p")
    _, q, _ = _square_test_value(m, order)
    if q.is_zero or is_square(q):
        return FeasibilityReport(order, True, q, None if q.is_zero else square_class(q))
    return FeasibilityReport(order, False, q, square_class(q))


def verify_no_decomposition(m: Rotation3) -> dict:
    """Feasibility verdicts for all twelve orders."""
    return {o: feasibility_check(m, o) for o in ALL_ORDERS}


# -- solving -----------------------------------------------------------------


def _solve_direct(m: Rotation3, order: str) -> list[Decomposition]:
    ctx = m.ctx
    n1, n2, n3 = (o.lower() for o in order)
    i1, i3 = AXES[n1], AXES[n3]
    c, q, r = _square_test_value(m, order)
    if q.is_zero:
        roots = [ctx.zero]
    elif is_square(q):
        w = sqrt(q)
        roots = [w, -w]
    else:
        raise DecompositionInfeasible(FeasibilityReport(order, False, q, square_class(q)))
    target = m.column(i3)
    e3 = [ctx.zero] * 3
    e3[i3] = ctx.one
    out = []
    for w in roots:
        v = [ctx.zero] * 3
        v[i1] = c
        v[r] = w
        pv = plane_coords(n1, v)
        if all(x.is_zero for x in pv):
            # the n1 rotation is unconstrained; fix it to the identity
            s1 = ProjectivePoint.origin(ctx)
        else:
            s1 = solve_plane_rotation(pv, plane_coords(n1, target), axis_alpha(ctx, n1))
        s2 = solve_plane_rotation(plane_coords(n2, e3), plane_coords(n2, v), axis_alpha(ctx, n2))
        rest = (
            reference_rotation(ctx, n2, inverse_point(s2))
            @ reference_rotation(ctx, n1, inverse_point(s1))
            @ m
        )
        i, j = _plane_index(n3)
        s3 = point_from_column(rest.entries[i][i], rest.entries[j][i], axis_alpha(ctx, n3))
        out.append(Decomposition(order, (s1, s2, s3)))
    return out


def _plane_index(axis: str):
    return {"x": (1, 2), "y": (0, 2), "z": (0, 1)}[axis]


def twin(d: Decomposition, ctx: PadicContext) -> Decomposition:
    """The other decomposition with the same product.

    Cardano orders: ``(inf*a, [t : alpha s] for b=[s:t], inf*c)``.
    Euler orders: ``(inf*a, -b, inf*c)``.
    """
    n1, n2, n3 = (o.lower() for o in d.order)
    a, b, c = d.params
    inf = ProjectivePoint.infinity(ctx)
    a2 = compose_points(a, inf, axis_alpha(ctx, n1))
    c2 = compose_points(c, inf, axis_alpha(ctx, n3))
    if is_euler(d.order):
        b2 = inverse_point(b)
    else:
        b2 = ProjectivePoint(b.t, axis_alpha(ctx, n2) * b.s)
    return Decomposition(d.order, (a2, b2, c2))


def second_solution(d: Decomposition, ctx: PadicContext | None = None) -> Decomposition:
    if is_euler(d.order):
        raise ValueError("second_solution is defined for Cardano orders; use twin()")
    ctx = ctx or d.params[0].ctx
    return twin(d, ctx)


def _check(m: Rotation3, sols: list[Decomposition]) -> tuple[Decomposition, Decomposition]:
    ctx = m.ctx
    for d in sols:
        if not d.matrix(ctx).equals(m):
            raise InternalConsistencyError(f"decomposition {d.order} does not recompose to M")
    first = sols[0]
    other = twin(first, ctx)
    if len(sols) == 2:
        if not sols[1].equals(other):
            raise InternalConsistencyError("the two square roots do not give twin decompositions")
        if sols[0].equals(sols[1]):
            raise InternalConsistencyError("the two decompositions coincide")
        return sols[0], sols[1]
    if not other.matrix(ctx).equals(m):
        raise InternalConsistencyError("twin decomposition does not recompose to M")
    return first, other


def decompose(m: Rotation3, order: str) -> tuple[Decomposition, Decomposition]:
    """Both decompositions of ``m`` in the given order, for any prime.

    Raises :class:`DecompositionInfeasible` carrying the non-square witness when
    none exists. For Euler orders this solver goes beyond the general theory,
    which only guarantees existence for Cardano orders.
    """
    order = normalise_order(order)
    if not is_member(m):
        raise NotOrthogonal("matrix does not lie in SO(3)_p")
    if order in _VIA_INVERSE:
        report = feasibility_check(m, order)
        if not report.feasible:
            raise DecompositionInfeasible(report)
        base = decompose(m.inverse(), _VIA_INVERSE[order])
        sols = [
            Decomposition(order, tuple(inverse_point(x) for x in reversed(d.params))) for d in base
        ]
    else:
        sols = _solve_direct(m, order)
    return _check(m, sols)


def cardano_decompose(m: Rotation3, order: str = "ZYX"):
    order = normalise_order(order)
    if order not in ("ZYX", "ZXY", "XYZ", "YXZ"):
        raise ValueError(f"{order} is not one of the universally solvable orders")
    if m.ctx.p == 2:
        raise UnsupportedPrime("Cardano decompositions need not exist for p = 2")
    return decompose(m, order)


def cardano_zyx(m: Rotation3):
    return cardano_decompose(m, "ZYX")


def cardano_decompose_1mod4(m: Rotation3, order: str = "XZY"):
    order = normalise_order(order)
    if order not in ("XZY", "YZX"):
        raise ValueError("expected XZY or YZX")
    if m.ctx.p % 4 != 1:
        raise UnsupportedPrime(f"{order} is universally solvable only for p = 1 mod 4")
    return decompose(m, order)


# -- counterexamples ---------------------------------------------------------


def _vec(ctx, *xs):
    return tuple(ctx(x) for x in xs)


def _search_square(ctx: PadicContext, f, limit: int = 10_000):
    """First integer ``k`` (skipping multiples of p) with ``f(k)`` a nonzero square."""
    for k in range(1, limit):
        if k % ctx.p == 0:
            continue
        val = ctx(f(k))
        if not val.is_zero and is_square(val):
            return k, sqrt(val)
    raise InternalConsistencyError("no solution found in the search range")


def _solve_norm(ctx: PadicContext, t):
    """Integers-based solution of ``x^2 - v y^2 = t``."""
    v = ctx.v
    for y in range(0, 10_000):
        val = ctx(t + v * y * y)
        if not val.is_zero and is_square(val):
            return sqrt(val), ctx(y)
    raise InternalConsistencyError(f"x^2 - v y^2 = {t} has no small solution")


def _require_odd(ctx: PadicContext):
    if ctx.p == 2:
        raise UnsupportedPrime("this construction needs an odd prime")


def counterexample_xzy(ctx: PadicContext) -> Rotation3:
    """A member whose middle column has no y-component, so XZY fails."""
    if ctx.p % 4 != 3:
        raise UnsupportedPrime("the XZY counterexample needs p = 3 mod 4")
    e2 = _vec(ctx, 0, 1, 0)
    w = (sqrt(ctx(1 - ctx.p)), ctx.zero, ctx.one)
    return rotation_taking(e2, w)


def counterexample_euler(ctx: PadicContext, order: str) -> Rotation3:
    _require_odd(ctx)
    order = normalise_order(order)
    p, v = ctx.p, ctx.v
    if order == "XYX":
        m2, m1 = _search_square(ctx, lambda k: 1 + v * k * k)
        return rotation_taking(_vec(ctx, 1, 0, 0), (m1, ctx(m2), ctx.zero))
    if order == "YXY":
        m1, m2 = _search_square(ctx, lambda k: 1 + Fraction(k * k, v))
        return rotation_taking(_vec(ctx, 0, 1, 0), (ctx(m1), m2, ctx.zero))
    if order == "XZX":
        return rotation_taking(_vec(ctx, 1, 0, 0), (sqrt(ctx(1 - p)), ctx.zero, ctx.one))
    if order == "YZY":
        return rotation_taking(
            _vec(ctx, 0, 1, 0), (ctx.zero, sqrt(ctx(1 + Fraction(p, v))), ctx.one)
        )
    # ZYZ needs x^2 - v y^2 a non-square, ZXZ needs -v (x^2 - v y^2) a non-square
    t = v if order == "ZYZ" else -v * ctx.u
    x, y = _solve_norm(ctx, t)
    m3 = sqrt(ctx(1 - p * t))
    return rotation_taking(_vec(ctx, 0, 0, 1), (x * p, y * p, m3))


def counterexample_p2(ctx: PadicContext) -> Rotation3:
    if ctx.p != 2:
        raise UnsupportedPrime("the universal counterexample lives in SO(3)_2")
    r = sqrt(ctx(-7))
    half = ctx(Fraction(1, 2))
    a = (r + 1) * half
    b = (r - 1) * half
    rows = ((ctx(-2), ctx(-2), r), (a, b, ctx(2)), (b, a, ctx(2)))
    return Rotation3(ctx, rows)
