"""Exact arithmetic in Q(sqrt2, sqrt3) and the interchangeable float backend.

A :class:`Surd` is ``(a + b*sqrt2 + c*sqrt3 + d*sqrt6) / den`` with integer
numerators and one positive common denominator, kept in lowest terms.  That
normal form makes equality a tuple comparison and keeps multiplication to
sixteen integer products plus one gcd.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import InexactValue, NegativeInput

__all__ = [
    "Surd",
    "Backend",
    "EXACT",
    "FLOAT",
    "SQRT2",
    "SQRT3",
    "SQRT6",
    "parse_rational",
    "format_rational",
    "surd_mul",
    "surd_inv",
    "surd_to_float",
    "surd_sqrt_if_exact",
]

_RAT_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (q a positive decimal integer)."""
    if not isinstance(text, str):
        raise ValueError(f"rational literal must be a string, got {type(text).__name__}")
    match = _RAT_RE.match(text)
    if match is None:
        raise ValueError(f"malformed rational literal {text!r}")
    p = int(match.group(1))
    q = int(match.group(2)) if match.group(2) is not None else 1
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _isqrt_scaled(k: int, bits: int) -> int:
    return math.isqrt(k << (2 * bits))


@total_ordering
class Surd:
    """An element of Q(sqrt2, sqrt3), immutable and hashable."""

    __slots__ = ("_a", "_b", "_c", "_d", "_den", "_hash")

    def __init__(self, q=0, s2=0, s3=0, s6=0):
        fq, f2, f3, f6 = (Fraction(v) if not isinstance(v, str) else parse_rational(v)
                          for v in (q, s2, s3, s6))
        den = math.lcm(fq.denominator, f2.denominator, f3.denominator, f6.denominator)
        self._set(
            fq.numerator * (den // fq.denominator),
            f2.numerator * (den // f2.denominator),
            f3.numerator * (den // f3.denominator),
            f6.numerator * (den // f6.denominator),
            den,
        )

    def _set(self, a, b, c, d, den):
        g = math.gcd(a, b, c, d, den)
        if den < 0:
            g = -g
        if g != 1:
            a //= g
            b //= g
            c //= g
            d //= g
            den //= g
        self._a, self._b, self._c, self._d, self._den = a, b, c, d, den
        self._hash = None

    @classmethod
    def _raw(cls, a, b, c, d, den) -> Surd:
        obj = cls.__new__(cls)
        obj._set(a, b, c, d, den)
        return obj

    @classmethod
    def coerce(cls, value) -> Surd:
        if isinstance(value, Surd):
            return value
        if isinstance(value, int):
            return cls._raw(value, 0, 0, 0, 1)
        if isinstance(value, Fraction):
            return cls._raw(value.numerator, 0, 0, 0, value.denominator)
        if isinstance(value, str):
            return cls(parse_rational(value))
        raise TypeError(f"cannot coerce {type(value).__name__} to Surd exactly")

    # components -------------------------------------------------------

    @property
    def q(self) -> Fraction:
        return Fraction(self._a, self._den)

    @property
    def s2(self) -> Fraction:
        return Fraction(self._b, self._den)

    @property
    def s3(self) -> Fraction:
        return Fraction(self._c, self._den)

    @property
    def s6(self) -> Fraction:
        return Fraction(self._d, self._den)

    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.q, self.s2, self.s3, self.s6

    def is_rational(self) -> bool:
        return self._b == 0 and self._c == 0 and self._d == 0

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Surd):
            if isinstance(other, (int, Fraction)):
                other = Surd.coerce(other)
            else:
                return NotImplemented
        d1, d2 = self._den, other._den
        if d1 == d2:
            return Surd._raw(self._a + other._a, self._b + other._b,
                             self._c + other._c, self._d + other._d, d1)
        return Surd._raw(self._a * d2 + other._a * d1, self._b * d2 + other._b * d1,
                         self._c * d2 + other._c * d1, self._d * d2 + other._d * d1,
                         d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return Surd._raw(-self._a, -self._b, -self._c, -self._d, self._den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, Surd):
            if isinstance(other, (int, Fraction)):
                other = Surd.coerce(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return Surd.coerce(other) - self
        return NotImplemented

    def __mul__(self, other):
        if not isinstance(other, Surd):
            if isinstance(other, int):
                return Surd._raw(self._a * other, self._b * other, self._c * other,
                                 self._d * other, self._den)
            if isinstance(other, Fraction):
                p, r = other.numerator, other.denominator
                return Surd._raw(self._a * p, self._b * p, self._c * p, self._d * p,
                                 self._den * r)
            return NotImplemented
        a1, b1, c1, d1 = self._a, self._b, self._c, self._d
        a2, b2, c2, d2 = other._a, other._b, other._c, other._d
        # sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2*sqrt3, sqrt3*sqrt6 = 3*sqrt2, sqrt6^2 = 6
        a = a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2
        b = a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2)
        c = a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2)
        d = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2
        return Surd._raw(a, b, c, d, self._den * other._den)

    __rmul__ = __mul__

    def conjugate2(self) -> Surd:
        """Galois conjugate sqrt2 -> -sqrt2."""
        return Surd._raw(self._a, -self._b, self._c, -self._d, self._den)

    def conjugate3(self) -> Surd:
        """Galois conjugate sqrt3 -> -sqrt3."""
        return Surd._raw(self._a, self._b, -self._c, -self._d, self._den)

    def inverse(self) -> Surd:
        if not self:
            raise ZeroDivisionError("inverse of zero Surd")
        # x * conj3(x) lies in Q(sqrt2); times its sqrt2-conjugate it is rational
        c3 = self.conjugate3()
        t = self * c3
        t2 = t.conjugate2()
        norm = t * t2
        assert norm.is_rational()
        return c3 * t2 * Fraction(norm._den, norm._a)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of Surd by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, Surd):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Surd.coerce(other) * self.inverse()
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Surd._raw(1, 0, 0, 0, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # comparison -------------------------------------------------------

    def __bool__(self):
        return bool(self._a or self._b or self._c or self._d)

    def __eq__(self, other):
        if isinstance(other, Surd):
            return (self._a, self._b, self._c, self._d, self._den) == (
                other._a, other._b, other._c, other._d, other._den)
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._a, self._den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._a, self._den))
            else:
                self._hash = hash((self._a, self._b, self._c, self._d, self._den))
        return self._hash

    def sign(self) -> int:
        if not self:
            return 0
        if self.is_rational():
            return 1 if self._a > 0 else -1
        return 1 if float(self) > 0 else -1

    def __lt__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Surd.coerce(other)
        elif not isinstance(other, Surd):
            return NotImplemented
        return (self - other).sign() < 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # conversion -------------------------------------------------------

    def __float__(self):
        if self.is_rational():
            return self._a / self._den if abs(self._a) < 2**53 and self._den < 2**53 \
                else float(Fraction(self._a, self._den))
        height = max(abs(self._a), abs(self._b), abs(self._c), abs(self._d)).bit_length()
        # nonzero elements satisfy |x| >= 1/(den^4 * (4*height)^3), so this many
        # guard bits keep the final rounding faithful even under cancellation
        bits = 4 * (height + self._den.bit_length()) + 96
        num = (self._a << bits) + self._b * _isqrt_scaled(2, bits) \
            + self._c * _isqrt_scaled(3, bits) + self._d * _isqrt_scaled(6, bits)
        return float(Fraction(num, self._den << bits))

    def __repr__(self):
        parts = [format_rational(f) for f in self.components()]
        while len(parts) > 1 and parts[-1] == "0":
            parts.pop()
        return f"Surd({', '.join(repr(p) for p in parts)})"

    def __str__(self):
        terms = []
        for coeff, root in zip(self.components(), ("", "√2", "√3", "√6")):
            if coeff == 0:
                continue
            if root and abs(coeff) == 1:
                body = root
            elif root and abs(coeff).denominator != 1:
                body = f"({format_rational(abs(coeff))}){root}"
            elif root:
                body = f"{format_rational(abs(coeff))}{root}"
            else:
                body = format_rational(abs(coeff))
            terms.append(("-" if coeff < 0 else "+", body))
        if not terms:
            return "0"
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sgn, body in terms[1:]:
            out += f" {sgn} {body}"
        return out

    def sqrt_if_exact(self) -> Surd | None:
        return surd_sqrt_if_exact(self)


SQRT2 = Surd(0, 1)
SQRT3 = Surd(0, 0, 1)
SQRT6 = Surd(0, 0, 0, 1)


def surd_mul(a: Surd, b: Surd) -> Surd:
    return Surd.coerce(a) * Surd.coerce(b)


def surd_inv(a: Surd) -> Surd:
    return Surd.coerce(a).inverse()


def surd_to_float(a: Surd) -> float:
    return float(Surd.coerce(a))


def _rational_sqrt(r: Fraction) -> Fraction | None:
    p, q = r.numerator, r.denominator
    sp, sq = math.isqrt(p), math.isqrt(q)
    if sp * sp == p and sq * sq == q:
        return Fraction(sp, sq)
    return None


def surd_sqrt_if_exact(a: Surd) -> Surd | None:
    """Nonnegative square root when it has the form c, c√2, c√3 or c√6.

    Squares of those four shapes are rational, so an irrational input has no
    root in the searched set and yields None.
    """
    a = Surd.coerce(a)
    if a.sign() < 0:
        raise NegativeInput(f"square root of negative value {a}")
    if not a:
        return a
    if not a.is_rational():
        return None
    r = a.q
    for k, basis in ((1, Surd(1)), (2, SQRT2), (3, SQRT3), (6, SQRT6)):
        c = _rational_sqrt(r / k)
        if c is not None:
            return basis * c
    return None


@dataclass(frozen=True)
class Backend:
    """Scalar semantics used by polynomial and matrix code.

    ``exact=True`` stores :class:`Surd` values and compares them literally;
    ``exact=False`` stores Python floats and treats ``a == b`` as
    ``|a - b| <= tol * max(1, |a|, |b|)``.
    """

    exact: bool = True
    tol: float = 1e-9

    @property
    def name(self) -> str:
        return "exact" if self.exact else "float"

    def coerce(self, value):
        if self.exact:
            return Surd.coerce(value)
        return float(value)

    def zero(self):
        return Surd._raw(0, 0, 0, 0, 1) if self.exact else 0.0

    def one(self):
        return Surd._raw(1, 0, 0, 0, 1) if self.exact else 1.0

    def is_zero(self, value) -> bool:
        if self.exact:
            return not value
        return abs(float(value)) <= self.tol

    def eq(self, a, b) -> bool:
        if self.exact:
            return Surd.coerce(a) == Surd.coerce(b)
        a, b = float(a), float(b)
        return abs(a - b) <= self.tol * max(1.0, abs(a), abs(b))

    def sign(self, value) -> int:
        if self.exact:
            return Surd.coerce(value).sign()
        v = float(value)
        if abs(v) <= self.tol:
            return 0
        return 1 if v > 0 else -1

    def sqrt(self, value):
        """Square root, exact when possible; raises InexactValue otherwise."""
        if self.exact:
            root = surd_sqrt_if_exact(Surd.coerce(value))
            if root is None:
                raise InexactValue(f"sqrt({value}) is not in Q(√2,√3) in the searched forms")
            return root
        v = float(value)
        if v < 0:
            if v >= -self.tol:
                return 0.0
            raise NegativeInput(f"square root of negative value {v}")
        return math.sqrt(v)


EXACT = Backend()
FLOAT = Backend(exact=False, tol=1e-9)
