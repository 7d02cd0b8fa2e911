"""Exact arithmetic in real quadratic fields Q(sqrt(D)).

Every length, angle and orbit point handled by the package is a
:class:`QuadReal`, i.e. ``a + b*sqrt(d)`` with rational ``a`` and ``b``.
Rationals come from :class:`fractions.Fraction`.  Floating point is only
used to pick a starting guess; every decision (sign, order, floor) is exact.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from numbers import Rational as _RationalABC
from typing import Optional, Sequence, Union

from .errors import InvalidParams, RadicandMismatch, RationalInput

Rational = Fraction
Number = Union[int, Fraction, "QuadReal"]

__all__ = [
    "Rational",
    "QuadReal",
    "ContinuedFraction",
    "MovingAverageReport",
    "quad_arith",
    "compare",
    "floor_quad",
    "frac_quad",
    "beta",
    "golden",
    "cf_expand",
    "moving_average",
    "parse_quad",
    "to_decimal",
]


@lru_cache(maxsize=None)
def _squarefree_split(d: int) -> tuple[int, int]:
    """Return (k, m) with d == k*k*m and m squarefree."""
    k, m = 1, d
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            k *= p
        p += 1 if p == 2 else 2
    return k, m


def _sign(a: Fraction, b: Fraction, d: int) -> int:
    """Exact sign of a + b*sqrt(d) for squarefree d > 1."""
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: whichever of a^2 and b^2 d is larger wins
    return sa if a * a > b * b * d else sb


@total_ordering
class QuadReal:
    """An element ``a + b*sqrt(d)`` of a real quadratic field.

    ``d`` is kept squarefree.  Rational values are stored with ``b == 0`` and
    ``d == 1`` so that they combine freely with any radicand.
    """

    __slots__ = ("a", "b", "d", "_float")

    def __init__(self, a=0, b=0, d: int = 1):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if d < 0:
            raise InvalidParams(f"radicand must be non-negative, got {d}")
        if b and d > 1:
            k, m = _squarefree_split(d)
            b *= k
            d = m
        if d <= 1 or not b:
            if d == 1:
                a += b
            b = Fraction(0)
            d = 1
        self.a = a
        self.b = b
        self.d = d
        self._float = None

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> "QuadReal":
        # caller guarantees canonical form
        obj = cls.__new__(cls)
        obj.a = a
        obj.b = b if b else Fraction(0)
        obj.d = d if b else 1
        obj._float = None
        return obj

    @property
    def is_rational(self) -> bool:
        return not self.b

    # -- coercion -------------------------------------------------------

    @staticmethod
    def coerce(x) -> "QuadReal":
        if isinstance(x, QuadReal):
            return x
        if isinstance(x, (int, _RationalABC)):
            return QuadReal._raw(Fraction(x), Fraction(0), 1)
        raise TypeError(f"cannot coerce {type(x).__name__} to QuadReal")

    def _common(self, other: "QuadReal") -> int:
        if not self.b:
            return other.d
        if not other.b or self.d == other.d:
            return self.d
        raise RadicandMismatch(f"cannot combine sqrt({self.d}) with sqrt({other.d})")

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        try:
            other = QuadReal.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._common(other)
        return QuadReal._raw(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadReal._raw(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __sub__(self, other):
        try:
            other = QuadReal.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._common(other)
        return QuadReal._raw(self.a - other.a, self.b - other.b, d)

    def __rsub__(self, other):
        return QuadReal.coerce(other) - self

    def __mul__(self, other):
        try:
            other = QuadReal.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._common(other)
        if not other.b:
            return QuadReal._raw(self.a * other.a, self.b * other.a, d)
        if not self.b:
            return QuadReal._raw(self.a * other.a, self.a * other.b, d)
        return QuadReal._raw(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadReal":
        return QuadReal._raw(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm a^2 - b^2 d."""
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> "QuadReal":
        if not self.b:
            if not self.a:
                raise ZeroDivisionError("division by zero QuadReal")
            return QuadReal._raw(1 / self.a, Fraction(0), 1)
        n = self.norm()
        # n != 0 because d is not a square
        return QuadReal._raw(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        try:
            other = QuadReal.coerce(other)
        except TypeError:
            return NotImplemented
        self._common(other)
        if not other.b:
            if not other.a:
                raise ZeroDivisionError("division by zero QuadReal")
            return QuadReal._raw(self.a / other.a, self.b / other.a, self.d)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QuadReal.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadReal._raw(Fraction(1), Fraction(0), 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- order ----------------------------------------------------------

    def sign(self) -> int:
        return _sign(self.a, self.b, self.d)

    def __eq__(self, other):
        if isinstance(other, QuadReal):
            return self.a == other.a and self.b == other.b and (not self.b or self.d == other.d)
        if isinstance(other, (int, _RationalABC)):
            return not self.b and self.a == other
        return NotImplemented

    def __lt__(self, other):
        try:
            other = QuadReal.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.b and not other.b:
            return self.a < other.a
        d = self._common(other)
        return _sign(self.a - other.a, self.b - other.b, d) < 0

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    # -- conversions ----------------------------------------------------

    def approx(self, bits: int = 64) -> Fraction:
        """Rational approximation within ``2**-bits`` of the exact value."""
        if not self.b:
            return self.a
        mag = abs(self.b)
        extra = max(0, mag.numerator.bit_length() - mag.denominator.bit_length() + 1)
        k = bits + extra
        s = math.isqrt(self.d << (2 * k))
        return self.a + self.b * Fraction(s, 1 << k)

    def __float__(self):
        if self._float is None:
            self._float = float(self.approx(64))
        return self._float

    def __floor__(self):
        return floor_quad(self)

    def __repr__(self):
        if not self.b:
            return f"QuadReal({self.a!s})"
        return f"QuadReal({self.a!s}, {self.b!s}, {self.d})"

    def __str__(self):
        a, b = self.a, self.b
        if not b:
            return f"{a.numerator}/{a.denominator}" if a.denominator != 1 else str(a.numerator)
        return f"{a.numerator}/{a.denominator} + {b.numerator}/{b.denominator}*sqrt({self.d})"


def quad_arith(x: Number, y: Number, op: str) -> QuadReal:
    """Functional front end to the field operations (``add``/``sub``/``mul``/``div``)."""
    x = QuadReal.coerce(x)
    y = QuadReal.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise InvalidParams(f"unknown op {op!r}")


def compare(x: Number, y: Number) -> int:
    """Return -1, 0 or 1 as x <, ==, > y."""
    x = QuadReal.coerce(x)
    y = QuadReal.coerce(y)
    if not x.b and not y.b:
        return (x.a > y.a) - (x.a < y.a)
    d = x._common(y)
    return _sign(x.a - y.a, x.b - y.b, d)


def floor_quad(x: Number) -> int:
    x = QuadReal.coerce(x)
    if not x.b:
        return math.floor(x.a)
    # bracket with a rational approximation, then settle exactly
    n = math.floor(x.approx(32))
    while _sign(x.a - n, x.b, x.d) < 0:
        n -= 1
    while _sign(x.a - (n + 1), x.b, x.d) >= 0:
        n += 1
    return n


def frac_quad(x: Number) -> QuadReal:
    """Fractional part ``x - floor(x)``, in [0, 1)."""
    x = QuadReal.coerce(x)
    n = floor_quad(x)
    if not n:
        return x
    return QuadReal._raw(x.a - n, x.b, x.d)


def beta(L: int, S: int) -> QuadReal:
    """Positive root of ``L*beta + S*beta**2 == 1``."""
    if not (isinstance(L, int) and isinstance(S, int)) or L < 1 or S < 1:
        raise InvalidParams(f"beta needs integers L >= 1, S >= 1 (got L={L}, S={S})")
    return QuadReal(Fraction(-L, 2 * S), Fraction(1, 2 * S), L * L + 4 * S)


def golden() -> QuadReal:
    """The golden section (sqrt(5) - 1) / 2."""
    return beta(1, 1)


def to_decimal(x: Number, precision: int) -> str:
    """Decimal string of x rounded half-up at ``precision`` digits, exactly."""
    if precision < 0:
        raise InvalidParams("precision must be >= 0")
    x = QuadReal.coerce(x)
    scale = 10 ** precision
    n = floor_quad(x * scale + Fraction(1, 2))
    neg = n < 0
    digits = str(abs(n)).rjust(precision + 1, "0")
    body = digits if precision == 0 else f"{digits[:-precision]}.{digits[-precision:]}"
    return f"-{body}" if neg else body


_TERM = re.compile(r"^([+-]?)(?:(\d+)(?:/(\d+))?)?(?:(\*)?sqrt\((\d+)\))?$")


def parse_quad(text: str) -> QuadReal:
    """Parse ``p/q``, ``p/q + r/s*sqrt(D)`` and friends, or the keyword ``golden``."""
    s = text.strip().replace(" ", "")
    if s.lower() in ("golden", "gamma", "phi-1"):
        return golden()
    if not s:
        raise ValueError("empty number literal")
    s = s.replace("+-", "-").replace("-+", "-").replace("--", "+")
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise ValueError(f"cannot parse number literal {text!r}")
    a = Fraction(0)
    b = Fraction(0)
    d = None
    for term in terms:
        m = _TERM.match(term)
        if not m or (m.group(2) is None and m.group(5) is None):
            raise ValueError(f"cannot parse term {term!r} in {text!r}")
        sgn, num, den, star, rad = m.groups()
        if star and num is None:
            raise ValueError(f"cannot parse term {term!r} in {text!r}")
        if num is not None and rad is not None and not star:
            raise ValueError(f"missing '*' before sqrt in {term!r}")
        if den is not None and int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        coef = Fraction(int(num), int(den) if den else 1) if num is not None else Fraction(1)
        if sgn == "-":
            coef = -coef
        if rad is None:
            a += coef
            continue
        part = QuadReal(0, coef, int(rad))
        if part.b:
            if d is not None and part.d != d:
                raise RadicandMismatch(f"mixed radicands in {text!r}")
            d = part.d
            b += part.b
        else:
            a += part.a
    return QuadReal(a, b, d or 1)


# -- continued fractions ----------------------------------------------------


@dataclass(frozen=True)
class ContinuedFraction:
    a0: int
    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = ()
    terminated: bool = False

    def partial_quotient(self, j: int) -> int:
        """a_j for j >= 1, extending periodically."""
        if j < 1:
            raise IndexError("partial quotients beyond a0 start at j=1")
        k = j - 1
        if k < len(self.preperiod):
            return self.preperiod[k]
        if not self.period:
            raise IndexError(f"a_{j} not available (expansion ended)")
        return self.period[(k - len(self.preperiod)) % len(self.period)]

    def quotients(self, count: int) -> list[int]:
        """a_1..a_count (fewer if the expansion ended)."""
        avail = count if self.period else min(count, len(self.preperiod))
        return [self.partial_quotient(j) for j in range(1, avail + 1)]

    def convergents(self, count: int) -> list[Fraction]:
        """p_k/q_k for k = 0..count (fewer if the expansion ended)."""
        p_prev, p = 1, self.a0
        q_prev, q = 0, 1
        out = [Fraction(p, q)]
        for aj in self.quotients(count):
            p_prev, p = p, aj * p + p_prev
            q_prev, q = q, aj * q + q_prev
            out.append(Fraction(p, q))
        return out

    def __str__(self):
        if not self.preperiod and not self.period:
            return f"[{self.a0}]"
        head = ",".join(str(a) for a in self.preperiod)
        if self.period:
            tail = "(" + ",".join(str(a) for a in self.period) + ")"
            body = f"{head}, {tail}" if head else tail
        else:
            body = head
        return f"[{self.a0}; {body}]"


def cf_expand(x: Number, max_terms: int = 200) -> ContinuedFraction:
    """Continued fraction of x, run in exact arithmetic.

    The period is detected when a complete quotient x_k repeats exactly.
    If neither a repeat nor termination shows up within ``max_terms``
    partial quotients, the result has an empty period and
    ``terminated=False``.
    """
    if max_terms < 1:
        raise InvalidParams("max_terms must be >= 1")
    x = QuadReal.coerce(x)
    a0 = floor_quad(x)
    rem = x - a0
    quotients: list[int] = []
    seen: dict[QuadReal, int] = {}
    while len(quotients) < max_terms:
        if not rem:
            return ContinuedFraction(a0, tuple(quotients), (), True)
        xk = rem.inverse()
        if xk in seen:
            j = seen[xk]
            return ContinuedFraction(a0, tuple(quotients[:j]), tuple(quotients[j:]), False)
        seen[xk] = len(quotients)
        ak = floor_quad(xk)
        quotients.append(ak)
        rem = xk - ak
    if not rem:
        return ContinuedFraction(a0, tuple(quotients), (), True)
    # one more look: the next complete quotient may close the cycle
    xk = rem.inverse()
    if xk in seen:
        j = seen[xk]
        return ContinuedFraction(a0, tuple(quotients[:j]), tuple(quotients[j:]), False)
    return ContinuedFraction(a0, tuple(quotients), (), False)


@dataclass(frozen=True)
class MovingAverageReport:
    values: tuple[Fraction, ...]
    supremum_observed: Fraction
    limit: Optional[Fraction]
    bounded: bool

    def to_dict(self) -> dict:
        return {
            "values": [str(v) for v in self.values],
            "supremum_observed": str(self.supremum_observed),
            "limit": None if self.limit is None else str(self.limit),
            "bounded": self.bounded,
        }


def moving_average(cf: ContinuedFraction, M: int) -> MovingAverageReport:
    """Averages (1/m) * sum(a_1..a_m) of the partial quotients, m = 1..M."""
    if M < 1:
        raise InvalidParams("M must be >= 1")
    if cf.terminated:
        raise RationalInput("moving average criterion needs an irrational number")
    quotients = cf.quotients(M)
    if not quotients:
        raise InvalidParams("continued fraction has no partial quotients beyond a0")
    values = []
    total = 0
    for m, aj in enumerate(quotients, start=1):
        total += aj
        values.append(Fraction(total, m))
    if cf.period:
        limit = Fraction(sum(cf.period), len(cf.period))
        bounded = True
    else:
        limit = None
        bounded = False
    return MovingAverageReport(tuple(values), max(values), limit, bounded)


def as_quads(values: Sequence[Number]) -> list[QuadReal]:
    return [QuadReal.coerce(v) for v in values]
