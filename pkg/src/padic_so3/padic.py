"""Fixed-precision p-adic numbers with tracked precision.

A nonzero value is stored in scaled-unit form ``p**val * unit`` where ``unit``
is an integer in ``[1, p**prec)`` prime to ``p`` and ``prec`` counts the base-p
digits of the unit that are actually known. Two kinds of zero exist: the exact
zero, and the approximate zero ``O(p**a)`` produced when a subtraction cancels
every known digit. The latter records what is known (the value is divisible by
``p**a``) without inventing a leading digit.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy import isprime
from sympy.ntheory import sqrt_mod

from .errors import (
    ContextMismatch,
    DivideByZero,
    Incomparable,
    NotASquare,
    ParseError,
    PrecisionExhausted,
    UndefinedOnZero,
)

INF = math.inf

Rational = Union[int, Fraction]


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def legendre(a: int, p: int) -> int:
    """Legendre symbol of ``a`` modulo an odd prime ``p``."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@dataclass(frozen=True)
class PadicContext:
    """Prime, working precision and comparison slack shared by a family of numbers.

    ``u`` is the smallest positive quadratic non-residue modulo ``p`` and ``v``
    is the non-square used by the definite ternary form (``-1`` when
    ``p = 3 mod 4``, ``-u`` when ``p = 1 mod 4``). Both are ``None`` for ``p = 2``.
    """

    p: int
    precision: int = 48
    guard: int = 8
    u: int | None = field(init=False, default=None)
    v: int | None = field(init=False, default=None)

    def __post_init__(self):
        if not isinstance(self.p, int) or not isprime(self.p):
            raise ValueError(f"p must be prime, got {self.p!r}")
        if not (self.precision > 2 * self.guard >= 2):
            raise ValueError(
                f"need precision > 2*guard >= 2, got precision={self.precision}, guard={self.guard}"
            )
        if self.p != 2:
            u = next(a for a in range(2, self.p) if legendre(a, self.p) == -1)
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", -1 if self.p % 4 == 3 else -u)

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    @property
    def threshold(self) -> int:
        """Shared digits required before two numbers are declared equal."""
        return self.precision - self.guard

    def with_precision(self, precision: int, guard: int | None = None) -> "PadicContext":
        return PadicContext(self.p, precision, self.guard if guard is None else guard)

    def __call__(self, value) -> "PadicNumber":
        if isinstance(value, PadicNumber):
            if value.ctx.p != self.p:
                raise ContextMismatch(f"cannot convert a {value.ctx.p}-adic number to p={self.p}")
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not p-adic numbers")
        if isinstance(value, int):
            return PadicNumber.from_int(self, value)
        if isinstance(value, Fraction):
            return PadicNumber.from_fraction(self, value)
        if isinstance(value, str):
            return parse_literal(self, value)
        raise TypeError(f"cannot build a p-adic number from {type(value).__name__}")

    @property
    def zero(self) -> "PadicNumber":
        return PadicNumber(self, INF, 0, 0)

    @property
    def one(self) -> "PadicNumber":
        return PadicNumber(self, 0, 1, self.precision)

    def approx_zero(self, absprec: int) -> "PadicNumber":
        return PadicNumber(self, absprec, 0, 0)


class PadicNumber:
    __slots__ = ("ctx", "val", "unit", "prec")

    # For nonzero values ``val`` is the valuation. For the approximate zero it is
    # the absolute precision, for the exact zero it is ``INF``. In all three
    # cases it is a lower bound for the true valuation.

    def __init__(self, ctx: PadicContext, val, unit: int, prec: int):
        self.ctx = ctx
        self.val = val
        self.unit = unit
        self.prec = prec

    @classmethod
    def from_int(cls, ctx: PadicContext, n: int) -> "PadicNumber":
        if n == 0:
            return ctx.zero
        v = _vp(n, ctx.p)
        return cls(ctx, v, (n // ctx.p**v) % ctx.modulus, ctx.precision)

    @classmethod
    def from_fraction(cls, ctx: PadicContext, q: Fraction) -> "PadicNumber":
        if q.denominator == 1:
            return cls.from_int(ctx, q.numerator)
        num = cls.from_int(ctx, q.numerator)
        den = cls.from_int(ctx, q.denominator)
        return num / den

    @classmethod
    def from_digits(cls, ctx: PadicContext, val: int, digits) -> "PadicNumber":
        digits = list(digits)
        if not digits or digits[0] == 0:
            raise ValueError("unit digits must be nonempty with nonzero leading digit")
        p = ctx.p
        unit = sum(d * p**i for i, d in enumerate(digits))
        return cls(ctx, val, unit, len(digits))

    # -- inspection --------------------------------------------------------

    @property
    def is_exact_zero(self) -> bool:
        return self.val == INF

    @property
    def is_approx_zero(self) -> bool:
        return self.unit == 0 and self.val != INF

    @property
    def is_zero(self) -> bool:
        """True for both the exact zero and an indistinguishable-from-zero value."""
        return self.unit == 0

    @property
    def valuation(self):
        if self.is_approx_zero:
            raise PrecisionExhausted(f"valuation of {self} is unknown (all digits cancelled)")
        return self.val

    @property
    def absprec(self):
        return self.val + self.prec if self.unit else self.val

    @property
    def digits(self) -> list[int]:
        out = []
        n = self.unit
        for _ in range(self.prec):
            n, d = divmod(n, self.ctx.p)
            out.append(d)
        return out

    def is_integral(self) -> bool:
        return self.val >= 0

    def is_unit(self) -> bool:
        return self.unit != 0 and self.val == 0

    def residue(self, k: int = 1) -> int:
        """The value modulo ``p**k`` as an integer in ``[0, p**k)``."""
        if self.val < 0:
            raise ValueError(f"{self} is not a p-adic integer")
        if self.is_exact_zero:
            return 0
        if self.absprec < k:
            raise PrecisionExhausted(f"{self} is known only modulo p^{self.absprec}, need p^{k}")
        if self.unit == 0 or self.val >= k:
            return 0
        m = self.ctx.p**k
        return (self.unit * self.ctx.p**self.val) % m

    def to_fraction(self) -> Fraction:
        """A rational number agreeing with this value on every known digit."""
        if self.unit == 0:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.ctx.p) ** self.val

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            if other.ctx.p != self.ctx.p:
                raise ContextMismatch(f"p={self.ctx.p} vs p={other.ctx.p}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ctx(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _add(self, other)

    __radd__ = __add__

    def __neg__(self):
        if self.unit == 0:
            return self
        m = self.ctx.p**self.prec
        return PadicNumber(self.ctx, self.val, (-self.unit) % m, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _add(other, -self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _div(other, self)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.ctx.one / self**(-n)
        result = self.ctx.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison --------------------------------------------------------

    def agreement(self, other) -> float:
        """Absolute number of p-adic digits on which the two values are known to agree."""
        d = self - self._coerce(other)
        if d.is_exact_zero:
            return INF
        return d.val

    def equals(self, other, scale: float | None = None) -> bool:
        """Digitwise equality with at least ``N - g`` shared digits.

        Shared digits are counted from the smaller valuation of the two
        operands, or from ``scale`` when given (used for matrices and vectors,
        whose entries are compared relative to the largest entry).
        Raises :class:`Incomparable` when every known digit agrees but fewer
        than ``N - g`` digits are shared.
        """
        other = self._coerce(other)
        d = _add(self, -other)
        if d.is_exact_zero:
            return True
        if d.unit != 0:
            return False
        if scale is not None:
            ref = scale
        else:
            refs = [x.val for x in (self, other) if x.unit != 0]
            ref = min(refs) if refs else 0
        if d.val - ref >= self.ctx.threshold:
            return True
        raise Incomparable(f"{self} and {other} share only {d.val - ref} digits")

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, PadicNumber) else other
        if other is NotImplemented:
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    # -- text --------------------------------------------------------------

    def __str__(self) -> str:
        return format_literal(self)

    def __repr__(self) -> str:
        return f"PadicNumber({format_literal(self)!r})"


def _add(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    if x.is_exact_zero:
        return y
    if y.is_exact_zero:
        return x
    ctx = x.ctx
    p = ctx.p
    a = min(x.absprec, y.absprec)
    m = min(x.val, y.val)
    if a <= m:
        return ctx.approx_zero(a)
    width = a - m
    mod = p**width
    s = 0
    if x.unit and x.val - m < width:
        s += x.unit * p ** (x.val - m)
    if y.unit and y.val - m < width:
        s += y.unit * p ** (y.val - m)
    s %= mod
    if s == 0:
        return ctx.approx_zero(a)
    k = 0
    while s % p == 0:
        s //= p
        k += 1
    return PadicNumber(ctx, m + k, s, width - k)


def _mul(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    ctx = x.ctx
    if x.is_exact_zero or y.is_exact_zero:
        return ctx.zero
    if x.unit == 0 or y.unit == 0:
        return ctx.approx_zero(x.val + y.val)
    prec = min(x.prec, y.prec)
    return PadicNumber(ctx, x.val + y.val, (x.unit * y.unit) % ctx.p**prec, prec)


def _div(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    ctx = x.ctx
    if y.unit == 0:
        raise DivideByZero(f"division by {y}")
    if x.is_exact_zero:
        return ctx.zero
    if x.unit == 0:
        return ctx.approx_zero(x.val - y.val)
    prec = min(x.prec, y.prec)
    m = ctx.p**prec
    return PadicNumber(ctx, x.val - y.val, (x.unit * pow(y.unit, -1, m)) % m, prec)


# -- literal text format ------------------------------------------------------

_FULL = re.compile(
    r"^\s*(?P<p>\d+)\^(?P<val>-?\d+)\s*\*\s*(?P<digits>\d+(?:\s*,\s*\d+)*)\s*"
    r"\(\s*O\(\s*(?P<p2>\d+)\^(?P<abs>-?\d+)\s*\)\s*\)\s*$"
)
_BIGO = re.compile(r"^\s*O\(\s*(?P<p>\d+)\^(?P<abs>-?\d+)\s*\)\s*$")
_RATIONAL = re.compile(r"^\s*[+-]?\d+(?:\s*/\s*\d+)?\s*$")


def format_literal(x: PadicNumber) -> str:
    p = x.ctx.p
    if x.is_exact_zero:
        return "0"
    if x.unit == 0:
        return f"O({p}^{x.val})"
    digits = ",".join(str(d) for d in x.digits)
    return f"{p}^{x.val} * {digits} (O({p}^{x.val + x.prec}))"


def parse_literal(ctx: PadicContext, text: str) -> PadicNumber:
    """Parse the literal format, ``O(p^a)``, or a plain integer / fraction."""
    if text.strip() == "0":
        return ctx.zero
    m = _FULL.match(text)
    if m:
        p = int(m["p"])
        if p != ctx.p or int(m["p2"]) != p:
            raise ContextMismatch(f"literal {text!r} is {p}-adic, context has p={ctx.p}")
        digits = [int(d) for d in m["digits"].split(",")]
        pos = m.start("digits")
        if any(d >= p for d in digits):
            raise ParseError(f"digit out of range for base {p}", text, pos)
        if digits[0] == 0:
            raise ParseError("leading unit digit must be nonzero", text, pos)
        val = int(m["val"])
        if int(m["abs"]) != val + len(digits):
            raise ParseError("precision bound does not match digit count", text, m.start("abs"))
        return PadicNumber.from_digits(ctx, val, digits)
    m = _BIGO.match(text)
    if m:
        if int(m["p"]) != ctx.p:
            raise ContextMismatch(f"literal {text!r} is not {ctx.p}-adic")
        return ctx.approx_zero(int(m["abs"]))
    if _RATIONAL.match(text):
        q = Fraction(text.replace(" ", ""))
        if q == 0:
            return ctx.zero
        return ctx(q)
    stripped = text.lstrip()
    raise ParseError("unrecognised p-adic literal", text, len(text) - len(stripped))


# -- squares, square classes and the Hilbert symbol --------------------------


@lru_cache(maxsize=None)
def _residue_roots(c: int, p: int) -> tuple[int, ...]:
    return tuple(sorted(sqrt_mod(c, p, all_roots=True)))


def _require_nonzero(x: PadicNumber) -> None:
    if x.is_exact_zero:
        raise UndefinedOnZero("undefined on zero")
    if x.unit == 0:
        raise PrecisionExhausted(f"{x} is indistinguishable from zero")


def is_square(x: PadicNumber) -> bool:
    _require_nonzero(x)
    if x.val % 2:
        return False
    p = x.ctx.p
    if p == 2:
        if x.prec < 3:
            raise PrecisionExhausted("need three unit digits to test a 2-adic square")
        return x.unit % 8 == 1
    return legendre(x.unit, p) == 1


def sqrt(x: PadicNumber) -> PadicNumber:
    """Canonical square root.

    For odd ``p`` the root whose leading digit is the smaller residue root; for
    ``p = 2`` the root congruent to 1 modulo 4. The other root is the negative.
    """
    if x.is_exact_zero:
        return x
    if not is_square(x):
        raise NotASquare(f"{x} is not a square in Q_{x.ctx.p}")
    ctx = x.ctx
    p = ctx.p
    c = x.unit
    if p == 2:
        prec = x.prec - 1
        r = 1
        for i in range(3, x.prec):
            if (r * r - c) % 2 ** (i + 1):
                r += 2 ** (i - 1)
        m = 2**prec
        r %= m
        if r % 4 == 3:
            r = (-r) % m
        return PadicNumber(ctx, x.val // 2, r, prec)
    prec = x.prec
    r = _residue_roots(c % p, p)[0]
    k = 1
    while k < prec:
        k = min(2 * k, prec)
        m = p**k
        r = (r - (r * r - c) * pow(2 * r, -1, m)) % m
    return PadicNumber(ctx, x.val // 2, r, prec)


def hensel_solve_square(c: PadicNumber) -> tuple[PadicNumber, PadicNumber]:
    """Both roots ``(r, -r)`` of ``m**2 = c``."""
    r = sqrt(c)
    return r, -r


@dataclass(frozen=True)
class SquareClass:
    """An element of ``Q_p* / (Q_p*)**2`` identified by its integer representative.

    Representatives are ``1, u, p, u*p`` for odd ``p`` and
    ``+-1, +-2, +-5, +-10`` for ``p = 2``.
    """

    p: int
    rep: int

    @property
    def label(self) -> str:
        if self.p == 2:
            return str(self.rep)
        if self.rep == 1:
            return "1"
        if self.rep == self.p:
            return "p"
        if self.rep % self.p == 0:
            return "up"
        return "u"

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if self.p != other.p:
            raise ContextMismatch("square classes of different primes")
        return class_of_int(self.p, self.rep * other.rep)

    def __str__(self) -> str:
        return self.label


def _unit_class_2(unit_mod8: int) -> int:
    return {1: 1, 3: -5, 5: 5, 7: -1}[unit_mod8]


@lru_cache(maxsize=None)
def _nonresidue(p: int) -> int:
    return next(a for a in range(2, p) if legendre(a, p) == -1)


def class_of_int(p: int, n: int) -> SquareClass:
    """Square class of a nonzero rational integer (or ``Fraction``)."""
    q = Fraction(n)
    if q == 0:
        raise UndefinedOnZero("zero has no square class")
    v = _vp(q.numerator, p) - _vp(q.denominator, p)
    unit = Fraction(q.numerator // p ** _vp(q.numerator, p), q.denominator // p ** _vp(q.denominator, p))
    if p == 2:
        u8 = (unit.numerator * pow(unit.denominator, -1, 8)) % 8
        rep = _unit_class_2(u8) * (2 if v % 2 else 1)
        # 2 * -5 = -10 etc. are already representatives
        return SquareClass(2, rep)
    u_int = (unit.numerator * pow(unit.denominator, -1, p)) % p
    rep = 1 if legendre(u_int, p) == 1 else _nonresidue(p)
    if v % 2:
        rep *= p
    return SquareClass(p, rep)


def square_class(x: PadicNumber) -> SquareClass:
    _require_nonzero(x)
    p = x.ctx.p
    if p == 2:
        if x.prec < 3:
            raise PrecisionExhausted("need three unit digits for a 2-adic square class")
        return class_of_int(2, (x.unit % 8) * (2 if x.val % 2 else 1))
    return class_of_int(p, (x.unit % p) * (p if x.val % 2 else 1))


def square_classes(p: int) -> list[SquareClass]:
    if p == 2:
        return [SquareClass(2, r) for r in (1, -1, 2, -2, 5, -5, 10, -10)]
    u = _nonresidue(p)
    return [SquareClass(p, r) for r in (1, u, p, u * p)]


def _hilbert_int(p: int, a: int, b: int) -> int:
    alpha = _vp(a, p)
    beta = _vp(b, p)
    ua = a // p**alpha
    ub = b // p**beta
    if p == 2:
        def eps(n):
            return ((n - 1) // 2) % 2

        def omega(n):
            return ((n * n - 1) // 8) % 2

        e = eps(ua) * eps(ub) + alpha * omega(ub) + beta * omega(ua)
        return -1 if e % 2 else 1
    s = -1 if (alpha * beta * (p - 1) // 2) % 2 else 1
    if beta % 2:
        s *= legendre(ua, p)
    if alpha % 2:
        s *= legendre(ub, p)
    return s


def hilbert_classes(a: SquareClass, b: SquareClass) -> int:
    if a.p != b.p:
        raise ContextMismatch("square classes of different primes")
    return _hilbert_int(a.p, a.rep, b.rep)


def hilbert_symbol(a: PadicNumber, b: PadicNumber) -> int:
    """``+1`` iff ``z**2 = a x**2 + b y**2`` has a nontrivial solution in ``Q_p``."""
    return hilbert_classes(square_class(a), square_class(b))
