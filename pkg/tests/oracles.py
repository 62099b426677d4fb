"""Independent reference computations used to anchor the library in tests.

Nothing here imports the code under test; each oracle works with plain
integers and fractions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def _squares(m: int) -> set[int]:
    return {(t * t) % m for t in range(m)}


def hilbert_bruteforce(p: int, a: int, b: int, k: int | None = None) -> int:
    """+1 iff ``z^2 = a x^2 + b y^2`` has a primitive solution modulo ``p^k``.

    A primitive solution can be rescaled so that one coordinate equals 1,
    which leaves three one-parameter searches instead of a cube.
    """
    if k is None:
        k = 6 if p == 2 else 4
    m = p**k
    sq = _squares(m)
    a %= m
    b %= m
    b_sq = {(b * s) % m for s in sq}
    for t in range(m):
        tt = t * t
        # z = 1, x = t, any y:  1 - a t^2 in b * squares
        if (1 - a * tt) % m in b_sq:
            return 1
        # x = 1, y = t, any z:  a + b t^2 is a square
        if (a + b * tt) % m in sq:
            return 1
        # y = 1, x = t, any z:  b + a t^2 is a square
        if (b + a * tt) % m in sq:
            return 1
    return -1


def legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def smallest_nonresidue(p: int) -> int:
    return next(a for a in range(2, p) if legendre(a, p) == -1)


def class_reps(p: int) -> list[int]:
    if p == 2:
        return [1, -1, 2, -2, 5, -5, 10, -10]
    u = smallest_nonresidue(p)
    return [1, u, p, u * p]


def frac_block(alpha: Fraction, sigma: Fraction):
    """Planar rotation matrix for an affine parameter, in exact rationals."""
    d = 1 + alpha * sigma * sigma
    a = (1 - alpha * sigma * sigma) / d
    c = 2 * sigma / d
    return ((a, -alpha * c), (c, a))


def frac_matmul(x, y):
    n = len(x)
    return tuple(
        tuple(sum((x[i][t] * y[t][j] for t in range(n)), Fraction(0)) for j in range(n))
        for i in range(n)
    )


def frac_mod(x: Fraction, p: int, k: int) -> int:
    m = p**k
    return x.numerator * pow(x.denominator, -1, m) % m


def congruence_solutions_2x2(p: int, alpha: Fraction, k: int = 1) -> set:
    """All 2x2 matrices mod p^k with ``M^T diag(1, alpha) M = diag(1, alpha)``, det 1."""
    m = p**k
    al = frac_mod(alpha, p, k)
    out = set()
    for a, b, c, d in product(range(m), repeat=4):
        if (a * d - b * c) % m != 1 % m:
            continue
        if (a * a + al * c * c - 1) % m:
            continue
        if (a * b + al * c * d) % m:
            continue
        if (b * b + al * d * d - al) % m:
            continue
        out.add(((a, b), (c, d)))
    return out


def digits_of(n: int, p: int, count: int) -> list[int]:
    out = []
    for _ in range(count):
        n, r = divmod(n, p)
        out.append(r)
    return out
