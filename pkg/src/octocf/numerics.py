"""Exact arithmetic in the quadratic field Q(sqrt(2)) and 2x2 linear algebra over it.

Every geometric predicate in this package reduces to the exact sign of an
element ``a + b*sqrt(2)`` with rational ``a, b``.  Values are immutable and
canonical (component-wise equality is field equality), so they can be shared
freely and used as dict keys.

Decimal output is quarantined in :func:`to_decimal`; nothing in this package
branches on a decimal rendering.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
import re

__all__ = [
    "QuadNum",
    "Vec2",
    "Mat2",
    "ProjVal",
    "INFINITY",
    "QuadNumParseError",
    "moebius",
    "to_decimal",
    "ZERO",
    "ONE",
    "SQRT2",
]


class QuadNumParseError(ValueError):
    """Raised when a string does not denote an exact element of Q(sqrt(2))."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


@dataclass(frozen=True)
class QuadNum:
    """The real number ``a + b*sqrt(2)`` with ``a, b`` rational.

    The representation is unique because sqrt(2) is irrational, so structural
    equality is numeric equality.  Arithmetic is exact; division uses the
    field conjugate ``a - b*sqrt(2)``.
    """

    a: Fraction
    b: Fraction

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _as_fraction(a))
        object.__setattr__(self, "b", _as_fraction(b))

    # -- ring structure ----------------------------------------------------

    def __add__(self, other: "QuadNum") -> "QuadNum":
        other = _coerce(other)
        return QuadNum(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other: "QuadNum") -> "QuadNum":
        other = _coerce(other)
        return QuadNum(self.a - other.a, self.b - other.b)

    def __rsub__(self, other) -> "QuadNum":
        return _coerce(other) - self

    def __neg__(self) -> "QuadNum":
        return QuadNum(-self.a, -self.b)

    def __mul__(self, other) -> "QuadNum":
        other = _coerce(other)
        return QuadNum(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QuadNum":
        other = _coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "QuadNum":
        return _coerce(other) * self.inverse()

    def inverse(self) -> "QuadNum":
        """Exact inverse via the conjugate: 1/(a+b*sqrt2) = (a-b*sqrt2)/(a^2-2b^2)."""
        norm = self.a * self.a - 2 * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(2))")
        return QuadNum(self.a / norm, -self.b / norm)

    def conjugate(self) -> "QuadNum":
        return QuadNum(self.a, -self.b)

    # -- order structure ---------------------------------------------------

    def sign(self) -> int:
        """Exact sign of the real number a + b*sqrt(2).

        If a and b agree in sign the answer is immediate; otherwise compare
        a^2 against 2*b^2, which decides |a| against |b*sqrt(2)| in exact
        integer arithmetic.
        """
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == 0:
            return sb
        if sb == 0 or sa == sb:
            return sa
        d = self.a * self.a - 2 * self.b * self.b
        if d > 0:
            return sa
        if d < 0:
            return sb
        return 0  # unreachable for nonzero input: sqrt(2) is irrational

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __lt__(self, other) -> bool:
        return (self - _coerce(other)).sign() < 0

    def __le__(self, other) -> bool:
        return (self - _coerce(other)).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - _coerce(other)).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - _coerce(other)).sign() >= 0

    def __abs__(self) -> "QuadNum":
        return -self if self.sign() < 0 else self

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- integer part ------------------------------------------------------

    def floor(self) -> int:
        """Exact floor, bracketing b*sqrt(2) between consecutive integers.

        2*R^2 is never a perfect square for R != 0, so the bracket is strict
        and refining the scale always terminates.
        """
        if self.b == 0:
            return self.a.numerator // self.a.denominator
        den = self.a.denominator * self.b.denominator // _gcd(
            self.a.denominator, self.b.denominator
        )
        p = self.a.numerator * (den // self.a.denominator)
        r = self.b.numerator * (den // self.b.denominator)
        scale = 1
        while True:
            rs = r * scale
            t = isqrt(2 * rs * rs)
            lo = t if rs >= 0 else -t - 1
            num_lo = p * scale + lo
            d = den * scale
            if (num_lo + 1) % d == 0 or num_lo // d == (num_lo + 1) // d:
                return num_lo // d
            scale *= 10

    # -- conversions -------------------------------------------------------

    def __float__(self) -> float:
        # Display/diagnostic helper only; all logic uses exact predicates.
        return (self * 10**18).floor() / 1e18

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if abs(self.b) == 1:
            tail = "sqrt(2)"
        else:
            tail = f"{abs(self.b)}*sqrt(2)"
        sign = "-" if self.b < 0 else ("+" if self.a != 0 else "")
        head = "" if self.a == 0 else str(self.a)
        return f"{head}{sign}{tail}"

    def __repr__(self) -> str:
        return f"QuadNum({self.a!r}, {self.b!r})"

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b)}

    @staticmethod
    def from_json(obj: dict) -> "QuadNum":
        return QuadNum(Fraction(obj["a"]), Fraction(obj["b"]))

    @staticmethod
    def parse(text: str) -> "QuadNum":
        """Parse an exact string like ``3``, ``-1/2``, ``1+sqrt2``, ``2-3/2*sqrt(2)``.

        The unicode radical (as in ``1+√2`` or ``-3/2√2``) is accepted as well.
        """
        s = text.strip().replace(" ", "")
        s = s.replace("√2", "@").replace("sqrt(2)", "@").replace("sqrt2", "@")
        s = s.replace("*@", "@")
        if not s:
            raise QuadNumParseError("empty literal")
        if "@" not in s:
            m = re.fullmatch(r"[+-]?\d+(?:/\d+)?", s)
            if not m:
                raise QuadNumParseError(f"cannot parse {text!r} as an element of Q(sqrt(2))")
            return QuadNum(Fraction(s))
        m = re.fullmatch(
            r"(?:(?P<ra>[+-]?\d+(?:/\d+)?)(?=[+-]))?"
            r"(?P<sb>[+-])?(?P<rb>\d+(?:/\d+)?)?@",
            s,
        )
        if not m:
            raise QuadNumParseError(f"cannot parse {text!r} as an element of Q(sqrt(2))")
        a = Fraction(m.group("ra")) if m.group("ra") else Fraction(0)
        b = Fraction(m.group("rb")) if m.group("rb") else Fraction(1)
        if m.group("sb") == "-":
            b = -b
        return QuadNum(a, b)


def _coerce(x) -> QuadNum:
    if isinstance(x, QuadNum):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadNum(x)
    raise TypeError(f"cannot coerce {type(x).__name__} into Q(sqrt(2))")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


ZERO = QuadNum(0)
ONE = QuadNum(1)
SQRT2 = QuadNum(0, 1)
HALF_SQRT2 = QuadNum(0, Fraction(1, 2))  # 1/sqrt(2)


def to_decimal(q: QuadNum, digits: int) -> str:
    """Correctly rounded decimal string of ``q`` with ``digits`` places.

    The irrational part is enclosed between consecutive integers at a scale
    refined until rounding is unambiguous, so the output is exact
    round-half-even of the true real value.  For irrational q no tie is
    possible; rational ties round half to even.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    scaled = q * 10**digits
    if scaled.b == 0:
        n = _round_half_even(scaled.a)
    else:
        # No tie: scaled is irrational, so floor(scaled + 1/2) is its rounding.
        n = (scaled + Fraction(1, 2)).floor()
    sign = "-" if n < 0 else ""
    n = abs(n)
    intpart, fracpart = divmod(n, 10**digits)
    return f"{sign}{intpart}.{fracpart:0{digits}d}"


def _round_half_even(x: Fraction) -> int:
    fl = x.numerator // x.denominator
    rem = x - fl
    if rem > Fraction(1, 2):
        return fl + 1
    if rem < Fraction(1, 2):
        return fl
    return fl if fl % 2 == 0 else fl + 1


@dataclass(frozen=True)
class Vec2:
    """A planar vector with exact Q(sqrt(2)) components."""

    x: QuadNum
    y: QuadNum

    def __init__(self, x, y):
        object.__setattr__(self, "x", _coerce(x))
        object.__setattr__(self, "y", _coerce(y))

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def scale(self, c) -> "Vec2":
        c = _coerce(c)
        return Vec2(self.x * c, self.y * c)

    def cross(self, other: "Vec2") -> QuadNum:
        return self.x * other.y - self.y * other.x

    def dot(self, other: "Vec2") -> QuadNum:
        return self.x * other.x + self.y * other.y

    def norm2(self) -> QuadNum:
        return self.dot(self)

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"

    def to_json(self) -> dict:
        return {"x": self.x.to_json(), "y": self.y.to_json()}

    @staticmethod
    def from_json(obj: dict) -> "Vec2":
        return Vec2(QuadNum.from_json(obj["x"]), QuadNum.from_json(obj["y"]))


@dataclass(frozen=True)
class Mat2:
    """A 2x2 matrix over Q(sqrt(2)); group elements here have det +-1."""

    a: QuadNum
    b: QuadNum
    c: QuadNum
    d: QuadNum

    def __init__(self, a, b, c, d):
        object.__setattr__(self, "a", _coerce(a))
        object.__setattr__(self, "b", _coerce(b))
        object.__setattr__(self, "c", _coerce(c))
        object.__setattr__(self, "d", _coerce(d))

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self) -> QuadNum:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mat2":
        det = self.det()
        if det.is_zero():
            raise ZeroDivisionError("singular matrix")
        inv = det.inverse()
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    def apply(self, v: Vec2) -> Vec2:
        return Vec2(self.a * v.x + self.b * v.y, self.c * v.x + self.d * v.y)

    @staticmethod
    def identity() -> "Mat2":
        return Mat2(1, 0, 0, 1)

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"

    def to_json(self) -> list:
        return [[self.a.to_json(), self.b.to_json()], [self.c.to_json(), self.d.to_json()]]


class ProjVal:
    """A point of the projective line over Q(sqrt(2)): a field value or infinity."""

    __slots__ = ("value",)

    def __init__(self, value: QuadNum | None):
        self.value = value

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjVal):
            if self.value is None:
                return NotImplemented
            return self.value == _coerce(other)
        return self.value == other.value

    def __hash__(self) -> int:
        return hash(("ProjVal", self.value))

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)

    def __repr__(self) -> str:
        return f"ProjVal({self.value!r})"


INFINITY = ProjVal(None)


def finite(q) -> ProjVal:
    return ProjVal(_coerce(q))


def moebius(m: Mat2, u: ProjVal) -> ProjVal:
    """The Moebius action (a*u+b)/(c*u+d) on the projective line, total on RP^1."""
    if m.det().is_zero():
        raise ValueError("Moebius action requires an invertible matrix")
    if u.is_infinite:
        if m.c.is_zero():
            return INFINITY
        return ProjVal(m.a / m.c)
    den = m.c * u.value + m.d
    if den.is_zero():
        return INFINITY
    return ProjVal((m.a * u.value + m.b) / den)
