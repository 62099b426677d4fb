"""Reductions modulo p^k and enumeration of the finite quotient groups.

Enumeration works with exact rational matrices: every parametrised rotation
with an integral parameter has entries in ``Z_(p)`` (rationals with unit
denominator), so reducing them modulo ``p^k`` is exact and needs no p-adic
precision bookkeeping.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

from sympy import factorint

from .errors import BudgetExceeded, NotIntegral, PrecisionExhausted
from .padic import legendre
from .so2 import Rotation2, matrix2
from .so3 import Rotation3


@dataclass(frozen=True)
class ModularMatrix:
    p: int
    k: int
    entries: tuple

    @property
    def modulus(self) -> int:
        return self.p**self.k

    def __matmul__(self, other: "ModularMatrix") -> "ModularMatrix":
        return ModularMatrix(self.p, self.k, _mul(self.entries, other.entries, self.modulus))

    def reduce(self, k: int) -> "ModularMatrix":
        if k > self.k:
            raise PrecisionExhausted(f"known modulo p^{self.k}, asked for p^{k}")
        m = self.p**k
        return ModularMatrix(self.p, k, tuple(tuple(x % m for x in r) for r in self.entries))


@dataclass
class FiniteGroupReport:
    p: int
    k: int
    group: str
    order: int
    closed: bool
    max_elt_order: int
    method: str
    generators_used: str
    lower_bound: bool = False
    extra: dict = field(default_factory=dict)

    @property
    def cyclic_evidence(self) -> bool:
        return self.max_elt_order == self.order

    def as_dict(self) -> dict:
        d = {
            "p": self.p,
            "k": self.k,
            "group": self.group,
            "order": self.order,
            "closed": self.closed,
            "max_elt_order": self.max_elt_order,
            "method": self.method,
            "generators_used": self.generators_used,
            "lower_bound": self.lower_bound,
        }
        if self.group == "so2":
            d["cyclic_evidence"] = self.cyclic_evidence
        d.update(self.extra)
        return d


def _mul(a, b, m):
    n = len(a)
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(n)) % m for j in range(n)) for i in range(n)
    )


def reduce(rot, k: int) -> ModularMatrix:
    """Entrywise reduction of a rotation modulo ``p^k``."""
    if isinstance(rot, Rotation2):
        rows = matrix2(rot)
        ctx = rot.ctx
    elif isinstance(rot, Rotation3):
        rows = rot.entries
        ctx = rot.ctx
    else:
        raise TypeError("reduce expects a Rotation2 or Rotation3")
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > ctx.precision - ctx.guard:
        raise PrecisionExhausted(f"k={k} exceeds precision {ctx.precision} minus guard {ctx.guard}")
    return ModularMatrix(ctx.p, k, tuple(tuple(x.residue(k) for x in r) for r in rows))


# -- exact rational rotations ------------------------------------------------


def _fmod(x: Fraction, p: int, m: int) -> int:
    if x.denominator % p == 0:
        raise NotIntegral(f"{x} is not p-integral")
    return x.numerator * pow(x.denominator, -1, m) % m


def _block(alpha: Fraction, sigma: int):
    d = 1 + alpha * sigma * sigma
    a = (1 - alpha * sigma * sigma) / d
    c = Fraction(2 * sigma) / d
    return a, -alpha * c, c, a


def _axis_alphas(p: int) -> dict:
    if p == 2:
        return {"x": Fraction(1), "y": Fraction(1), "z": Fraction(1)}
    u = next(a for a in range(2, p) if legendre(a, p) == -1)
    v = -1 if p % 4 == 3 else -u
    return {"x": Fraction(-p, v), "y": Fraction(p), "z": Fraction(-v)}


def kappa_alpha(p: int, label: str) -> Fraction:
    if p == 2:
        if label not in ("1", "2", "-2", "5", "-5", "10", "-10"):
            raise ValueError(f"unknown kappa {label!r} for p=2")
        return Fraction(int(label))
    u = next(a for a in range(2, p) if legendre(a, p) == -1)
    v = -1 if p % 4 == 3 else -u
    table = {"-v": Fraction(-v), "p": Fraction(p), "up": Fraction(p, u)}
    if label not in table:
        raise ValueError(f"unknown kappa {label!r}; expected -v, p or up")
    return table[label]


def _param_range(p: int, k: int) -> int:
    # 1 + alpha sigma^2 can have valuation up to 2 when p = 2, so sigma is
    # needed modulo 2^(k+2) to fix the rotation modulo 2^k
    return 2 ** (k + 2) if p == 2 else p**k


def so2_images(p: int, alpha: Fraction, k: int, budget: int = 10**6) -> set:
    """Reductions of ``+-R(sigma)`` for all integral ``sigma``, as 2x2 tuples."""
    m = p**k
    n = _param_range(p, k)
    if 2 * n > budget:
        raise BudgetExceeded(f"{2 * n} parameters exceed the budget {budget}")
    if p == 2 and alpha == -5:
        # sigma = 1 gives the entry (1+5)/(1-5) = -3/2: this group does not preserve Z_2^2
        raise NotIntegral("SO(2) of x^2 - 5y^2 over Q_2 is not contained in GL(2, Z_2)")
    out = set()
    for s in range(n):
        a, b, c, d = (_fmod(x, p, m) for x in _block(alpha, s))
        out.add(((a, b), (c, d)))
        out.add(((-a % m, -b % m), (-c % m, -d % m)))
    return out


_PLANE = {"x": (1, 2), "y": (0, 2), "z": (0, 1)}


def _embed(axis: str, blk, m: int):
    (a, b), (c, d) = blk
    i, j = _PLANE[axis]
    rows = [[0] * 3 for _ in range(3)]
    rows["xyz".index(axis)]["xyz".index(axis)] = 1 % m
    rows[i][i], rows[i][j], rows[j][i], rows[j][j] = a, b, c, d
    return tuple(tuple(r) for r in rows)


def axis_images(p: int, k: int, budget: int = 10**6) -> dict:
    """Images modulo ``p^k`` of the three reference subgroups, as 3x3 tuples."""
    m = p**k
    alphas = _axis_alphas(p)
    return {
        ax: {_embed(ax, blk, m) for blk in so2_images(p, alphas[ax], k, budget)}
        for ax in ("x", "y", "z")
    }


def _identity(n: int, m: int):
    return tuple(tuple((1 if i == j else 0) % m for j in range(n)) for i in range(n))


def _mat_pow(g, e: int, m: int):
    out = _identity(len(g), m)
    while e:
        if e & 1:
            out = _mul(out, g, m)
        g = _mul(g, g, m)
        e >>= 1
    return out


def element_order(g, m: int, group_order: int) -> int:
    """Order of ``g`` in a group of known order, by repeated squaring over divisors."""
    e = _identity(len(g), m)
    if _mat_pow(g, group_order, m) != e:
        raise ValueError("element order does not divide the group order")
    o = group_order
    for q in factorint(group_order):
        while o % q == 0 and _mat_pow(g, o // q, m) == e:
            o //= q
    return o


def is_closed(elements: set, m: int, budget: int = 10**6) -> bool:
    """Whether a finite set of matrices is a group under multiplication mod ``m``.

    Grows a generating set greedily and compares the generated group with the
    input, which costs about ``|S| * log|S|`` products instead of ``|S|^2``.
    """
    if not elements:
        return False
    gens: list = []
    group = {_identity(len(next(iter(elements))), m)}
    for x in sorted(elements):
        if x not in group:
            gens.append(x)
            group = bfs_closure(gens, m, budget)
            if not group <= elements:
                return False
    return group == elements


def bfs_closure(generators, m: int, budget: int = 10**6) -> set:
    gens = list(generators)
    if not gens:
        return set()
    start = _identity(len(gens[0]), m)
    seen = {start}
    queue = deque([start])
    work = 0
    while queue:
        x = queue.popleft()
        for g in gens:
            work += 1
            if work > budget:
                raise BudgetExceeded("BFS closure exceeded the budget")
            y = _mul(x, g, m)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def satisfies_congruence(mat, gram_diag, p: int, k: int) -> bool:
    """``M^T A M = A`` and ``det M = 1`` modulo ``p^k`` for a diagonal Gram matrix.

    Gram entries may be non-integral (``p/u``); both sides are then scaled by
    the common denominator, which is a unit.
    """
    m = p**k
    den = 1
    for a in gram_diag:
        den = den * Fraction(a).denominator // gcd(den, Fraction(a).denominator)
    a = [int(Fraction(x) * den) for x in gram_diag]
    n = len(mat)
    for i in range(n):
        for j in range(n):
            s = sum(mat[t][i] * a[t] * mat[t][j] for t in range(n))
            if (s - (a[i] if i == j else 0)) % m:
                return False
    return _det(mat) % m == 1 % m


def _det(a):
    if len(a) == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def _max_order(elements: set, m: int, cap: int) -> int:
    return max(element_order(g, m, cap) for g in elements)


def enumerate_so2_mod(p: int, kappa: str, k: int, budget: int = 10**6):
    """The image of SO(2)_p^kappa modulo ``p^k``, with a report."""
    if k == 0:
        e = ((0, 0), (0, 0))
        rep = FiniteGroupReport(p, 0, "so2", 1, True, 1, "trivial", "none")
        return rep, {e}
    alpha = kappa_alpha(p, kappa)
    m = p**k
    elements = so2_images(p, alpha, k, budget)
    closed = is_closed(elements, m, budget)
    rep = FiniteGroupReport(
        p,
        k,
        "so2",
        len(elements),
        closed,
        _max_order(elements, m, len(elements)),
        "parameter-scan",
        f"+-R_{kappa}(sigma), sigma mod {_param_range(p, k)}",
        extra={"kappa": kappa},
    )
    return rep, elements


def enumerate_so3_mod(p: int, k: int, budget: int = 10**6):
    """The image of SO(3)_p modulo ``p^k``.

    For odd ``p`` this is the product set ``G_z G_y G_x`` of the reference
    subgroups, complete because every element has a ZYX decomposition. For
    ``p = 2`` only the subgroup generated by the reference rotations is
    produced, and the report marks it as a lower bound.
    """
    if k == 0:
        e = tuple(tuple(0 for _ in range(3)) for _ in range(3))
        return FiniteGroupReport(p, 0, "so3", 1, True, 1, "trivial", "none"), {e}
    m = p**k
    imgs = axis_images(p, k, budget)
    gens = imgs["x"] | imgs["y"] | imgs["z"]
    if p == 2:
        elements = bfs_closure(gens, m, budget * 10)
        method, lower = "bfs-closure", True
    else:
        n = len(imgs["x"]) * len(imgs["y"]) * len(imgs["z"])
        if n > budget:
            raise BudgetExceeded(f"{n} products exceed the budget {budget}")
        elements = {
            _mul(_mul(gz, gy, m), gx, m)
            for gz, gy, gx in product(imgs["z"], imgs["y"], imgs["x"])
        }
        method, lower = "cardano-product", False
    # every element lies in the generated group, so stability under right
    # multiplication by the generators proves the set is that group
    if len(elements) * len(gens) > budget * 10:
        raise BudgetExceeded("closure check exceeds the budget")
    closed = all(_mul(x, g, m) in elements for x in elements for g in gens)
    rep = FiniteGroupReport(
        p,
        k,
        "so3",
        len(elements),
        closed,
        _max_order(elements, m, len(elements)),
        method,
        "reference subgroups G_x, G_y, G_z",
        lower_bound=lower,
    )
    return rep, elements


def so3_gram(p: int) -> tuple:
    if p == 2:
        return (1, 1, 1)
    u = next(a for a in range(2, p) if legendre(a, p) == -1)
    v = -1 if p % 4 == 3 else -u
    return (1, -v, p)
