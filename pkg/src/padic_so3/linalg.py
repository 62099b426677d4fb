"""Small dense linear algebra over Q_p on tuples of :class:`PadicNumber`.

Matrices are tuples of row tuples. Elimination always pivots on the entry of
least valuation, the non-archimedean counterpart of partial pivoting: dividing
by the largest available entry keeps every multiplier integral and so loses no
absolute precision.
"""

from __future__ import annotations

from typing import Sequence

from .errors import DivideByZero, PrecisionExhausted
from .padic import PadicContext, PadicNumber

Vector = tuple  # tuple[PadicNumber, ...]
Matrix = tuple  # tuple[tuple[PadicNumber, ...], ...]


def identity(ctx: PadicContext, n: int = 3) -> Matrix:
    return tuple(tuple(ctx.one if i == j else ctx.zero for j in range(n)) for i in range(n))


def diag(ctx: PadicContext, entries: Sequence) -> Matrix:
    n = len(entries)
    return tuple(
        tuple(ctx(entries[i]) if i == j else ctx.zero for j in range(n)) for i in range(n)
    )


def as_matrix(ctx: PadicContext, rows) -> Matrix:
    return tuple(tuple(ctx(x) for x in row) for row in rows)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def _dot(xs, ys, zero):
    acc = zero
    for x, y in zip(xs, ys):
        acc = acc + x * y
    return acc


def matmul(a: Matrix, b: Matrix) -> Matrix:
    zero = a[0][0].ctx.zero
    cols = transpose(b)
    return tuple(tuple(_dot(row, col, zero) for col in cols) for row in a)


def matvec(a: Matrix, x: Vector) -> Vector:
    zero = a[0][0].ctx.zero
    return tuple(_dot(row, x, zero) for row in a)


def scale(c: PadicNumber, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def det(a: Matrix) -> PadicNumber:
    n = len(a)
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if n == 3:
        return (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )
    raise ValueError("det is implemented for 2x2 and 3x3 matrices")


def _pivot_key(x: PadicNumber):
    # nonzero entries first, smallest valuation first
    return (0, x.val) if x.unit else (1, 0)


def inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse with least-valuation pivoting."""
    ctx = a[0][0].ctx
    n = len(a)
    rows = [list(a[i]) + [ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = min(range(col, n), key=lambda r: _pivot_key(rows[r][col]))
        if rows[piv][col].unit == 0:
            if rows[piv][col].is_exact_zero:
                raise DivideByZero("matrix is singular")
            raise PrecisionExhausted("matrix is singular to working precision")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = ctx.one / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and not rows[r][col].is_exact_zero:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return tuple(tuple(row[n:]) for row in rows)


def kernel_vector(a: Matrix) -> Vector:
    """A nonzero vector spanning the kernel of a 3x3 matrix of rank 2.

    Full pivoting on least valuation. Raises :class:`PrecisionExhausted` when
    the matrix looks like rank 1 or less, since then the kernel is not a line.
    """
    ctx = a[0][0].ctx
    m = [list(r) for r in a]
    n = len(m)
    perm = list(range(n))
    for step in range(2):
        cands = [(i, j) for i in range(step, n) for j in range(step, n) if m[i][j].unit]
        if not cands:
            raise PrecisionExhausted("kernel has dimension > 1 at working precision")
        i, j = min(cands, key=lambda ij: (m[ij[0]][ij[1]].val, ij))
        m[step], m[i] = m[i], m[step]
        for row in m:
            row[step], row[j] = row[j], row[step]
        perm[step], perm[j] = perm[j], perm[step]
        inv = ctx.one / m[step][step]
        m[step] = [x * inv for x in m[step]]
        for r in range(n):
            if r != step and not m[r][step].is_exact_zero:
                f = m[r][step]
                m[r] = [x - f * y for x, y in zip(m[r], m[step])]
    # reduced form: columns 0,1 are pivots, so x = (-m[0][2], -m[1][2], 1) in permuted coordinates
    y = [-m[0][2], -m[1][2], ctx.one]
    x = [ctx.zero] * n
    for k in range(n):
        x[perm[k]] = y[k]
    return tuple(x)


def cross(x: Vector, y: Vector) -> Vector:
    return (
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    )


def min_valuation(xs) -> float:
    return min(x.val for x in xs)


def mat_agreement(a: Matrix, b: Matrix) -> float:
    """Digits of absolute agreement, minimised over entries."""
    return min(x.agreement(y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _scale(entries) -> float | None:
    vals = [x.val for x in entries if x.unit != 0]
    return min(vals) if vals else None


def mat_equals(a: Matrix, b: Matrix) -> bool:
    """Entrywise equality, with shared digits counted from the largest entry."""
    pairs = [(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb)]
    scale = _scale([x for pair in pairs for x in pair])
    return all(x.equals(y, scale) for x, y in pairs)


def vec_equals(x: Vector, y: Vector) -> bool:
    scale = _scale(list(x) + list(y))
    return all(a.equals(b, scale) for a, b in zip(x, y))
