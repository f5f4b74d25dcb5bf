"""Exact Gaussian-rational scalars: the base field Q(i) for every computation.

A value is stored as (a + b*i)/d with integers a, b and d > 0, gcd(a, b, d) = 1,
so equality is plain structural equality.  The .re/.im accessors hand back
ordinary Fractions in lowest terms.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class GaussianRational:
    __slots__ = ("a", "b", "d")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        self.a, self.b, self.d = _reduce(a, b, d)

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussianRational":
        # d > 0 and gcd(a, b, d) == 1 assumed
        self = object.__new__(cls)
        self.a, self.b, self.d = a, b, d
        return self

    @classmethod
    def make(cls, re_num: int, re_den: int = 1, im_num: int = 0, im_den: int = 1):
        """Build (re_num/re_den) + (im_num/im_den)*i, rejecting zero denominators."""
        if re_den == 0 or im_den == 0:
            raise ValueError("zero denominator")
        return cls(Fraction(re_num, re_den), Fraction(im_num, im_den))

    @property
    def re(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def im(self) -> Fraction:
        return Fraction(self.b, self.d)

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.d))
        return hash((self.a, self.b, self.d))

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a = self.a * other.d + other.a * self.d
        b = self.b * other.d + other.b * self.d
        return GaussianRational._raw(*_reduce(a, b, self.d * other.d))

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a = self.a * other.d - other.a * self.d
        b = self.b * other.d - other.b * self.d
        return GaussianRational._raw(*_reduce(a, b, self.d * other.d))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a = self.a * other.a - self.b * other.b
        b = self.a * other.b + self.b * other.a
        return GaussianRational._raw(*_reduce(a, b, self.d * other.d))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def inverse(self) -> "GaussianRational":
        n = self.a * self.a + self.b * self.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational._raw(*_reduce(self.a * self.d, -self.b * self.d, n))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.a, -self.b, self.d)

    def norm_sq(self) -> Fraction:
        """Squared modulus re**2 + im**2, as an exact Fraction."""
        return Fraction(self.a * self.a + self.b * self.b, self.d * self.d)

    def is_real(self) -> bool:
        return self.b == 0

    def __repr__(self):
        if self.b == 0:
            return _frac_str(self.a, self.d)
        if self.a == 0:
            return _imag_str(self.b, self.d)
        sign = "+" if self.b > 0 else "-"
        return f"{_frac_str(self.a, self.d)}{sign}{_imag_str(abs(self.b), self.d)}"

    def to_json(self) -> dict:
        return {"re": f"{self.a}/{self.d}", "im": f"{self.b}/{self.d}"}

    @classmethod
    def from_json(cls, obj) -> "GaussianRational":
        return cls(parse_rational(obj.get("re", "0")), parse_rational(obj.get("im", "0")))


def _reduce(a: int, b: int, d: int):
    if d < 0:
        a, b, d = -a, -b, -d
    g = gcd(gcd(a, b), d)
    if g > 1:
        a //= g
        b //= g
        d //= g
    if a == 0 and b == 0:
        d = 1
    return a, b, d


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    return None


def as_gq(x) -> GaussianRational:
    g = _coerce(x)
    if g is None:
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")
    return g


def _frac_str(n: int, d: int) -> str:
    return str(n) if d == 1 else f"{n}/{d}"


def _imag_str(n: int, d: int) -> str:
    if n == 1 and d == 1:
        return "i"
    if n == -1 and d == 1:
        return "-i"
    return _frac_str(n, d) + "i"


def parse_rational(s) -> Fraction:
    """Parse "p/q" or "p" (denominator 1 may be omitted on input)."""
    if isinstance(s, int):
        return Fraction(s)
    text = str(s).strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def rational_str(f: Fraction) -> str:
    f = Fraction(f)
    return f"{f.numerator}/{f.denominator}"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
HALF_I = GaussianRational(0, Fraction(1, 2))
