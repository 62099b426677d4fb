"""The compact group SO(3)_p of the definite ternary form.

The form is ``x^2 - v y^2 + p z^2`` for odd ``p`` and ``x^2 + y^2 + z^2`` for
``p = 2``. Every element fixes an axis ``n`` and acts on the plane orthogonal
to ``n`` as a planar rotation; :func:`rotation_about` builds such an element
from an axis and a projective parameter.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    IdentityHasNoAxis,
    NotInPlane,
    NotOrthogonal,
    ZeroVector,
)
from .linalg import (
    det,
    identity,
    inverse,
    kernel_vector,
    mat_agreement,
    mat_equals,
    matmul,
    matvec,
    transpose,
    vec_equals,
)
from .padic import PadicContext, PadicNumber, SquareClass, square_class
from .quadforms import (
    DiagonalQuadraticForm,
    bilinear,
    definite_form,
    evaluate,
    restrict_to_plane,
)
from .so2 import ProjectivePoint, block, negate_point, solve_plane_rotation

AXES = {"x": 0, "y": 1, "z": 2}
# coordinates spanned by the plane of each reference rotation, in block order
_PLANE = {"x": (1, 2), "y": (0, 2), "z": (0, 1)}


def q_plus(ctx: PadicContext) -> DiagonalQuadraticForm:
    return definite_form(ctx, 3)


def gram(ctx: PadicContext):
    a = q_plus(ctx).coeffs
    return tuple(tuple(a[i] if i == j else ctx.zero for j in range(3)) for i in range(3))


def axis_alpha(ctx: PadicContext, axis: str) -> PadicNumber:
    """Ratio of the form restricted to the plane of a reference axis."""
    a = q_plus(ctx).coeffs
    i, j = _PLANE[axis]
    return a[j] / a[i]


@dataclass(frozen=True, eq=False)
class Rotation3:
    ctx: PadicContext
    entries: tuple
    cached_axis: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(self.ctx(x) for x in row) for row in self.entries)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("a rotation needs a 3x3 matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def identity(cls, ctx: PadicContext) -> "Rotation3":
        return cls(ctx, identity(ctx, 3))

    def __matmul__(self, other):
        if isinstance(other, Rotation3):
            return Rotation3(self.ctx, matmul(self.entries, other.entries))
        return matvec(self.entries, tuple(self.ctx(x) for x in other))

    def apply(self, x) -> tuple:
        return matvec(self.entries, tuple(self.ctx(c) for c in x))

    def inverse(self) -> "Rotation3":
        """``A^-1 L^T A``, which is the inverse for every element of the group."""
        a = q_plus(self.ctx).coeffs
        lt = transpose(self.entries)
        rows = tuple(tuple(lt[i][j] * a[j] / a[i] for j in range(3)) for i in range(3))
        return Rotation3(self.ctx, rows)

    def equals(self, other: "Rotation3") -> bool:
        return mat_equals(self.entries, other.entries)

    def agreement(self, other: "Rotation3") -> float:
        return mat_agreement(self.entries, other.entries)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def __neg__(self):
        return Rotation3(self.ctx, tuple(tuple(-x for x in row) for row in self.entries))


def is_member(m, ctx: PadicContext | None = None) -> bool:
    """``L^T A L = A`` and ``det L = 1`` at comparison precision."""
    if isinstance(m, Rotation3):
        ctx, rows = m.ctx, m.entries
    else:
        rows = tuple(tuple(ctx(x) for x in row) for row in m)
    a = gram(ctx)
    lhs = matmul(matmul(transpose(rows), a), rows)
    if not mat_equals(lhs, a) or not det(rows).equals(ctx.one):
        return False
    # integrality is a theorem; a failure here means the input was inconsistent
    return all(x.val >= 0 for row in rows for x in row)


def as_rotation(m, ctx: PadicContext | None = None) -> Rotation3:
    rot = m if isinstance(m, Rotation3) else Rotation3(ctx, m)
    if not is_member(rot):
        raise NotOrthogonal("matrix does not lie in SO(3)_p")
    return rot


@dataclass(frozen=True)
class Axis:
    n: tuple
    q_class: SquareClass

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.n) + ")"


def canonical_axis(ctx: PadicContext, n) -> Axis:
    """Scale ``n`` so that its first least-valuation component equals 1."""
    n = tuple(ctx(x) for x in n)
    live = [i for i in range(3) if n[i].unit]
    if not live:
        raise ZeroVector("zero axis")
    k = min(live, key=lambda i: (n[i].val, i))
    c = n[k]
    n = tuple(ctx.one if i == k else x / c for i, x in enumerate(n))
    return Axis(n, square_class(evaluate(q_plus(ctx), n)))


def axis_of(rot: Rotation3) -> Axis:
    ctx = rot.ctx
    diff = tuple(
        tuple(x - (ctx.one if i == j else ctx.zero) for j, x in enumerate(row))
        for i, row in enumerate(rot.entries)
    )
    if all(x.is_zero for row in diff for x in row):
        if rot.equals(Rotation3.identity(ctx)):
            raise IdentityHasNoAxis("the identity fixes every vector")
    return canonical_axis(ctx, kernel_vector(diff))


def axis_residual(rot: Rotation3, n) -> float:
    """Least valuation among the components of ``(L - I) n``."""
    ln = rot.apply(n)
    return min((a - b).val for a, b in zip(ln, n))


def _basis(ctx: PadicContext, n):
    r = restrict_to_plane(q_plus(ctx), n)
    cols = (r.g, r.h, tuple(ctx(x) for x in n))
    return r, tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


def rotation_about(n, point: ProjectivePoint) -> Rotation3:
    n = n.n if isinstance(n, Axis) else n
    ctx = point.ctx
    r, basis = _basis(ctx, n)
    (a, b), (c, d) = block(point, r.alpha)
    z, one = ctx.zero, ctx.one
    local = ((a, b, z), (c, d, z), (z, z, one))
    m = matmul(matmul(basis, local), inverse(basis))
    return Rotation3(ctx, m, cached_axis=tuple(ctx(x) for x in n))


def reference_rotation(ctx: PadicContext, axis: str, point: ProjectivePoint) -> Rotation3:
    axis = axis.lower()
    (a, b), (c, d) = block(point, axis_alpha(ctx, axis))
    i, j = _PLANE[axis]
    k = AXES[axis]
    rows = [[ctx.zero] * 3 for _ in range(3)]
    rows[k][k] = ctx.one
    rows[i][i], rows[i][j], rows[j][i], rows[j][j] = a, b, c, d
    return Rotation3(ctx, tuple(tuple(r) for r in rows))


def plane_coords(axis: str, vec):
    i, j = _PLANE[axis]
    return vec[i], vec[j]


@dataclass(frozen=True)
class Infeasible:
    """No rotation exists; ``witness`` is the ratio of the two form values."""

    witness: PadicNumber
    witness_class: SquareClass


def find_rotation_in_plane(n, v, w):
    """Point ``sigma`` with ``rotation_about(n, sigma) v = w``, or :class:`Infeasible`."""
    n = n.n if isinstance(n, Axis) else n
    ctx = (v[0] if isinstance(v[0], PadicNumber) else n[0]).ctx
    q = q_plus(ctx)
    n, v, w = (tuple(ctx(x) for x in vec) for vec in (n, v, w))
    for vec in (v, w):
        if all(x.is_zero for x in vec):
            raise ZeroVector("vectors must be nonzero")
        if not bilinear(q, n, vec).equals(ctx.zero):
            raise NotInPlane("vector is not orthogonal to the axis")
    qv, qw = evaluate(q, v), evaluate(q, w)
    if not qv.equals(qw):
        ratio = qw / qv
        return Infeasible(ratio, square_class(ratio))
    r, basis = _basis(ctx, n)
    binv = inverse(basis)
    vs = matvec(binv, v)
    ws = matvec(binv, w)
    return solve_plane_rotation(vs[:2], ws[:2], r.alpha)


def _reflection(q: DiagonalQuadraticForm, u):
    """``x -> x - 2 B(x, u) / Q(u) u``, the reflection in the hyperplane orthogonal to ``u``."""
    ctx = q.ctx
    qu = evaluate(q, u)
    return tuple(
        tuple(
            (ctx.one if i == j else ctx.zero) - (u[i] * q.coeffs[j] * u[j] * 2) / qu
            for j in range(3)
        )
        for i in range(3)
    )


def rotation_taking(v, w) -> Rotation3:
    """Some element of SO(3)_p sending ``v`` to ``w``; requires ``Q(v) = Q(w)``.

    Built as a product of two reflections. Since ``Q(v+w) + Q(v-w) = 4 Q(v)``
    one of the two mirrors ``v+w``, ``v-w`` has a small value and is used, which
    keeps the precision loss to a few digits.
    """
    ctx = v[0].ctx
    v, w = tuple(ctx(x) for x in v), tuple(ctx(x) for x in w)
    q = q_plus(ctx)
    qv, qw = evaluate(q, v), evaluate(q, w)
    if qv.is_zero:
        raise ZeroVector("vectors must be nonzero")
    if not qv.equals(qw):
        raise NotOrthogonal(f"Q(v) and Q(w) differ by the factor {qw / qv}")
    if vec_equals(v, w):
        return Rotation3.identity(ctx)
    plus = tuple(a + b for a, b in zip(v, w))
    minus = tuple(a - b for a, b in zip(v, w))
    q_plus_val, q_minus_val = evaluate(q, plus), evaluate(q, minus)
    if q_minus_val.is_zero or (not q_plus_val.is_zero and q_plus_val.val <= q_minus_val.val):
        # v -> -w -> w
        m = matmul(_reflection(q, w), _reflection(q, plus))
    else:
        # v -> w, then a mirror containing w
        m = matmul(_reflection(q, restrict_to_plane(q, w).g), _reflection(q, minus))
    return Rotation3(ctx, m)


def random_point(ctx: PadicContext, rng: random.Random, alpha: PadicNumber) -> ProjectivePoint:
    sigma = ProjectivePoint.affine(ctx, rng.randrange(ctx.p**ctx.precision))
    if rng.random() < 0.5:
        return sigma
    return negate_point(sigma, alpha)


def random_element(ctx: PadicContext, seed) -> Rotation3:
    """Deterministic product ``R_z R_y R_x`` with parameters from both integral branches."""
    rng = random.Random(seed)
    out = Rotation3.identity(ctx)
    for axis in ("z", "y", "x"):
        pt = random_point(ctx, rng, axis_alpha(ctx, axis))
        out = out @ reference_rotation(ctx, axis, pt)
    return out
