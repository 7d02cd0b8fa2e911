"""Interval exchange transformations over exact quadratic lengths.

Combinatorial data uses the two-row convention: ``pi0`` lists the interval
labels from left to right before the exchange and ``pi1`` lists them after
it.  ``pi0 = (1, 2, 3), pi1 = (3, 2, 1)`` is the symmetric 3-IET.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    HypothesisViolated,
    InvalidParams,
    MismatchAt,
    NonPositiveLength,
    NonPositiveResult,
    NoReturnWithinBudget,
    NotFoundWithinWindow,
    OutOfDomain,
    RadicandMismatch,
)
from .quadratic import (
    ContinuedFraction,
    MovingAverageReport,
    QuadReal,
    beta,
    cf_expand,
    frac_quad,
    moving_average,
    parse_quad,
)

LEFT_CLOSED = "left"   # intervals [l, r)
RIGHT_CLOSED = "right"  # intervals (l, r]


@dataclass(frozen=True)
class CombinatorialData:
    pi0: tuple[int, ...]
    pi1: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "pi0", tuple(int(a) for a in self.pi0))
        object.__setattr__(self, "pi1", tuple(int(a) for a in self.pi1))
        n = len(self.pi0)
        expected = set(range(1, n + 1))
        if n < 1 or set(self.pi0) != expected or len(self.pi1) != n or set(self.pi1) != expected:
            raise InvalidParams(f"pi0={self.pi0}, pi1={self.pi1} are not permutations of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.pi0)

    @classmethod
    def standard(cls, pi1: Sequence[int]) -> "CombinatorialData":
        """Combinatorial data with pi0 the identity."""
        return cls(tuple(range(1, len(pi1) + 1)), tuple(pi1))

    def position0(self, label: int) -> int:
        return self.pi0.index(label) + 1

    def position1(self, label: int) -> int:
        return self.pi1.index(label) + 1


def is_admissible(comb: CombinatorialData) -> bool:
    """True iff no proper prefix of the top row equals (as a set) the same-length prefix of the bottom row."""
    top: set[int] = set()
    bottom: set[int] = set()
    for k in range(comb.n - 1):
        top.add(comb.pi0[k])
        bottom.add(comb.pi1[k])
        if top == bottom:
            return False
    return True


def _check_lengths(lengths) -> tuple[QuadReal, ...]:
    lengths = tuple(QuadReal.coerce(x) for x in lengths)
    radicands = {x.d for x in lengths if x.b}
    if len(radicands) > 1:
        raise RadicandMismatch(f"lengths mix radicands {sorted(radicands)}")
    for i, lam in enumerate(lengths, start=1):
        if lam.sign() <= 0:
            raise NonPositiveLength(f"length of interval {i} is {lam}, must be > 0")
    return lengths


class IET:
    """Interval exchange ``f = j1 o j0^{-1}`` on ``[0, total)``.

    ``lengths[a - 1]`` is the length of the interval labelled ``a``.  With
    ``convention="right"`` the intervals are ``(l, r]`` and the domain is
    ``(0, total]``.
    """

    def __init__(self, comb: CombinatorialData, lengths, convention: str = LEFT_CLOSED):
        if convention not in (LEFT_CLOSED, RIGHT_CLOSED):
            raise InvalidParams(f"unknown interval convention {convention!r}")
        lengths = _check_lengths(lengths)
        if len(lengths) != comb.n:
            raise InvalidParams(f"{comb.n} intervals but {len(lengths)} lengths")
        self.comb = comb
        self.lengths = lengths
        self.convention = convention
        n = comb.n
        self.total = sum(lengths, QuadReal(0))

        left0 = [QuadReal(0)] * n
        left1 = [QuadReal(0)] * n
        acc = QuadReal(0)
        starts0 = []
        for a in comb.pi0:
            left0[a - 1] = acc
            starts0.append(acc)
            acc = acc + lengths[a - 1]
        acc = QuadReal(0)
        starts1 = []
        for a in comb.pi1:
            left1[a - 1] = acc
            starts1.append(acc)
            acc = acc + lengths[a - 1]
        self.left0 = tuple(left0)
        self.left1 = tuple(left1)
        self.w = tuple(left1[i] - left0[i] for i in range(n))
        self._starts0 = starts0
        self._starts1 = starts1

    @property
    def n(self) -> int:
        return self.comb.n

    @property
    def breakpoints0(self) -> tuple[QuadReal, ...]:
        return tuple(self._starts0) + (self.total,)

    @property
    def breakpoints1(self) -> tuple[QuadReal, ...]:
        return tuple(self._starts1) + (self.total,)

    def __repr__(self):
        return f"IET(pi0={self.comb.pi0}, pi1={self.comb.pi1}, lengths={[str(x) for x in self.lengths]})"

    def in_domain(self, x: QuadReal) -> bool:
        if self.convention == LEFT_CLOSED:
            return 0 <= x < self.total
        return 0 < x <= self.total

    def _locate(self, starts, row, x) -> int:
        if not self.in_domain(x):
            raise OutOfDomain(f"{x} is outside the domain of length {self.total}")
        if self.convention == LEFT_CLOSED:
            p = bisect_right(starts, x) - 1
        else:
            p = bisect_left(starts, x) - 1
        return row[p]

    def interval_of(self, x) -> int:
        """Label of the pre-image interval containing x."""
        return self._locate(self._starts0, self.comb.pi0, QuadReal.coerce(x))

    def __call__(self, x) -> QuadReal:
        return evaluate(self, x)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "pi0": list(self.comb.pi0),
            "pi1": list(self.comb.pi1),
            "lengths": [str(x) for x in self.lengths],
            "w": [str(x) for x in self.w],
            "convention": self.convention,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "IET":
        comb = CombinatorialData(data["pi0"], data["pi1"])
        lengths = [parse_quad(s) for s in data["lengths"]]
        return cls(comb, lengths, data.get("convention", LEFT_CLOSED))

    @classmethod
    def from_json(cls, text: str) -> "IET":
        return cls.from_dict(json.loads(text))


def build_iet(comb: CombinatorialData, lengths, convention: str = LEFT_CLOSED) -> IET:
    return IET(comb, lengths, convention)


def evaluate(f: IET, x) -> QuadReal:
    x = QuadReal.coerce(x)
    a = f.interval_of(x)
    return x + f.w[a - 1]


def evaluate_inverse(f: IET, y) -> QuadReal:
    y = QuadReal.coerce(y)
    a = f._locate(f._starts1, f.comb.pi1, y)
    return y - f.w[a - 1]


@dataclass
class OrbitSegment:
    base_point: QuadReal
    first_index: int
    points: list[QuadReal]
    interval_itinerary: list[int]

    def __getitem__(self, k: int) -> QuadReal:
        """The point f^k(base_point)."""
        return self.points[k - self.first_index]

    def to_dict(self) -> dict:
        return {
            "base_point": str(self.base_point),
            "first_index": self.first_index,
            "points": [str(p) for p in self.points],
            "itinerary": list(self.interval_itinerary),
        }


def orbit(f: IET, x0, start: int, stop: int) -> OrbitSegment:
    """Points f^k(x0) for start <= k <= stop, with the label of the interval each lies in."""
    if start > stop:
        raise InvalidParams("orbit needs start <= stop")
    x0 = QuadReal.coerce(x0)
    if not f.in_domain(x0):
        raise OutOfDomain(f"{x0} is outside the domain of length {f.total}")
    y = x0
    for _ in range(-start if start < 0 else 0):
        y = evaluate_inverse(f, y)
    for _ in range(start if start > 0 else 0):
        y = evaluate(f, y)
    points = []
    labels = []
    for _ in range(start, stop + 1):
        a = f.interval_of(y)
        points.append(y)
        labels.append(a)
        y = y + f.w[a - 1]
    return OrbitSegment(x0, start, points, labels)


# -- three intervals --------------------------------------------------------


def n3_standard(lA, lB, lC, convention: str = LEFT_CLOSED) -> IET:
    """The 3-IET with the order of A, B, C reversed by the exchange."""
    return IET(CombinatorialData((1, 2, 3), (3, 2, 1)), (lA, lB, lC), convention)


@dataclass(frozen=True)
class N3Certificate:
    rho: QuadReal
    irrational: bool
    cf: ContinuedFraction
    moving_average: Optional[MovingAverageReport]
    verdict: bool

    def to_dict(self) -> dict:
        return {
            "rho": str(self.rho),
            "irrational": self.irrational,
            "cf": str(self.cf),
            "moving_average": None if self.moving_average is None else {
                "limit": None if self.moving_average.limit is None else str(self.moving_average.limit),
                "supremum_observed": str(self.moving_average.supremum_observed),
                "bounded": self.moving_average.bounded,
            },
            "low_discrepancy": self.verdict,
        }


def rotation_number(lA, lB, lC) -> QuadReal:
    """(lB + lC) / (total + lB): the angle of the rotation that induces the 3-IET, normalised."""
    lA, lB, lC = _check_lengths((lA, lB, lC))
    return (lB + lC) / (lA + lB + lC + lB)


def n3_certificate(lA, lB, lC, max_terms: int = 500, averages: int = 100) -> N3Certificate:
    """Decide whether every orbit of ``n3_standard(lA, lB, lC)`` is low-discrepancy."""
    rho = rotation_number(lA, lB, lC)
    cf = cf_expand(rho, max_terms)
    if rho.is_rational:
        return N3Certificate(rho, False, cf, None, False)
    report = moving_average(cf, averages)
    return N3Certificate(rho, True, cf, report, report.bounded)


def n3_from_gamma(gamma, lC) -> tuple[QuadReal, QuadReal, QuadReal]:
    """Lengths with total 1, the given lC and (lB + lC) / (1 + lB) == gamma."""
    gamma = QuadReal.coerce(gamma)
    lC = QuadReal.coerce(lC)
    if not (0 < gamma < 1):
        raise InvalidParams(f"gamma must lie in (0, 1), got {gamma}")
    if lC.sign() <= 0:
        raise InvalidParams(f"lambda_C must be positive, got {lC}")
    lB = (gamma - lC) / (1 - gamma)
    lA = 1 - lB - lC
    if lB.sign() <= 0:
        raise NonPositiveResult(f"lambda_B = {lB} <= 0 (lambda_C = {lC} >= gamma)", which="B")
    if lA.sign() <= 0:
        raise NonPositiveResult(
            f"lambda_A = {lA} <= 0 (lambda_C = {lC} is at most (2 gamma - 1) / gamma)", which="A"
        )
    return lA, lB, lC


def first_return(rotation_total, angle, I_right, x, max_steps: int = 1000) -> tuple[QuadReal, int]:
    """Iterate y -> y + angle (mod rotation_total) from x until it lands in [0, I_right)."""
    rotation_total = QuadReal.coerce(rotation_total)
    angle = QuadReal.coerce(angle)
    I_right = QuadReal.coerce(I_right)
    y = QuadReal.coerce(x)
    if not (0 < angle < rotation_total):
        raise InvalidParams("angle must lie in (0, rotation_total)")
    if not (0 < I_right <= rotation_total):
        raise InvalidParams("I_right must lie in (0, rotation_total]")
    if not (0 <= y < I_right):
        raise OutOfDomain(f"{y} is not in [0, {I_right})")
    for step in range(1, max_steps + 1):
        y = y + angle
        if y >= rotation_total:
            y = y - rotation_total
        if y < I_right:
            return y, step
    raise NoReturnWithinBudget(f"no return to [0, {I_right}) within {max_steps} steps")


# -- the f_{L,S} family ------------------------------------------------------


def fls_pi1(L: int, S: int) -> tuple[int, ...]:
    """Bottom row 2, ..., L, L+S, 1, L+1, ..., L+S-1."""
    return tuple(range(2, L + 1)) + (L + S, 1) + tuple(range(L + 1, L + S))


def fls(L: int, S: int, convention: str = LEFT_CLOSED) -> IET:
    """The (L+S)-IET whose intervals are those of the first LS partition."""
    if not (isinstance(L, int) and isinstance(S, int)) or L < 1 or S < 1:
        raise InvalidParams(f"fls needs L >= 1, S >= 1 (got L={L}, S={S})")
    b = beta(L, S)
    comb = CombinatorialData.standard(fls_pi1(L, S))
    return IET(comb, [b] * L + [b * b] * S, convention)


def fls_translation_vector(L: int, S: int) -> tuple[QuadReal, ...]:
    """Closed-form translation vector of fls(L, S), independent of the IET machinery."""
    b = beta(L, S)
    b2 = b * b
    w = [(L - 1) * b + b2]
    w += [-b] * (L - 1)
    w += [b2] * (S - 1)
    w.append(-(S - 1) * b2 - b)
    return tuple(w)


def fls_start(L: int, S: int, r: int, window: Optional[int] = None, max_window: int = 1 << 20) -> QuadReal:
    """x0 = {-r beta - q0 beta^2} with q0 >= 0 the first q such that the point
    lies in [0, beta) but subtracting one more beta^2 leaves it."""
    if L < 1 or S < 1:
        raise InvalidParams(f"fls_start needs L >= 1, S >= 1 (got L={L}, S={S})")
    return _fls_start_q(L, S, r, window, max_window)[1]


def _fls_start_q(L, S, r, window, max_window):
    b = beta(L, S)
    b2 = b * b
    if window is None:
        window = 2 * (L + S) ** 2
    lo = 0
    hi = window
    cur = frac_quad(-r * b)
    while True:
        for q in range(lo, hi + 1):
            nxt = frac_quad(cur - b2)
            if cur < b and not nxt < b:
                return q, cur
            cur = nxt
        if hi >= max_window:
            raise NotFoundWithinWindow(f"no q0 in [0, {hi}] for L={L}, S={S}, r={r}")
        lo, hi = hi + 1, min(2 * hi + 1, max_window)


def beta_power_coords(L: int, S: int, l: int) -> tuple[Fraction, Fraction]:
    """Rationals (a, b) with beta**l == a + b*beta, using beta^2 = (1 - L beta) / S."""
    if l < 0:
        raise InvalidParams("l must be >= 0")
    if L < 1 or S < 1:
        raise InvalidParams(f"need L >= 1, S >= 1 (got L={L}, S={S})")
    a, c = Fraction(1), Fraction(0)
    for _ in range(l):
        # (a + c beta) beta = a beta + c (1 - L beta) / S
        a, c = Fraction(c, S), a - Fraction(c * L, S)
    return a, c


def coords_denominator(a: Fraction, b: Fraction) -> int:
    return math.lcm(a.denominator, b.denominator)


def jls_coords(L: int, S: int, y) -> Optional[tuple[int, int]]:
    """(m, n) with 0 <= n < S and y == {m beta + n beta^2}, or None if y is not of that form."""
    y = QuadReal.coerce(y)
    b = beta(L, S)
    if b.is_rational:
        raise InvalidParams(f"beta({L},{S}) is rational; coordinates are not unique")
    if y.b and y.d != b.d:
        return None
    # y = c0 + c1 * beta, with beta = p + q sqrt(d)
    c1 = y.b / b.b
    c0 = y.a - c1 * b.a
    if (S * c0).denominator != 1:
        return None
    j = c0.numerator // c0.denominator
    n = S * (c0 - j)
    m = c1 + L * (c0 - j)
    if m.denominator != 1:
        return None
    return int(m), int(n)


@dataclass
class JLSReport:
    L: int
    S: int
    r: int
    x0: QuadReal
    q0: int
    window: int
    super_cycle: int
    coords: list[tuple[int, int]] = field(default_factory=list)
    return_times: list[int] = field(default_factory=list)
    passed: bool = True

    def to_dict(self) -> dict:
        return {
            "L": self.L,
            "S": self.S,
            "r": self.r,
            "x0": str(self.x0),
            "q0": self.q0,
            "window": self.window,
            "super_cycle": self.super_cycle,
            "return_times": self.return_times,
            "passed": self.passed,
        }


def super_cycle_length(L: int, S: int) -> int:
    return L * L + L + S


def fls_schedule(L: int, S: int) -> list[int]:
    """Interval labels visited by f^0(x0) .. f^{L^2+L+S}(x0) in the expected order:
    I_1, then L sweeps I_L..I_1, then I_{L+1}..I_{L+S}, then I_L..I_2, then I_1."""
    down = list(range(L, 0, -1))
    return [1] + down * L + list(range(L + 1, L + S + 1)) + down[:-1] + [1]


def orbit_matches_jls(L: int, S: int, r: int = 0, window: Optional[int] = None) -> JLSReport:
    """Finite check that the orbit of x0 under fls(L, S) is the set J_{L,S}.

    Raises :class:`MismatchAt` at the first orbit index that leaves J_{L,S}
    or breaks the super-cycle schedule.
    """
    if L < S:
        raise HypothesisViolated(f"needs L >= S (got L={L}, S={S})")
    P = super_cycle_length(L, S)
    if window is None:
        window = 2 * (P + 1)
    if window < P + 1:
        raise InvalidParams(f"window must be >= L^2+L+S+1 = {P + 1}")
    f = fls(L, S)
    b = beta(L, S)
    if b.is_rational:
        raise InvalidParams(f"beta({L},{S}) is rational; J_{{L,S}} coordinates are not unique")
    b2 = b * b
    q0, x0 = _fls_start_q(L, S, r, None, 1 << 20)
    seg = orbit(f, x0, -window, window)
    report = JLSReport(L, S, r, x0, q0, window, P)

    for i, y in enumerate(seg.points):
        c = jls_coords(L, S, y)
        if c is None:
            raise MismatchAt(seg.first_index + i, f"{y} is not of the form {{m beta + n beta^2}}")
        report.coords.append(c)

    expected = fls_schedule(L, S)
    for k, want in enumerate(expected):
        got = seg.interval_itinerary[k - seg.first_index]
        if got != want:
            raise MismatchAt(k, f"orbit is in I_{got}, schedule says I_{want}")
    if not seg[P] < b2:
        raise MismatchAt(P, "orbit does not return to [0, beta^2) after L^2+L+S steps")

    report.return_times = [k for k in range(1, window + 1) if seg[k] < b2]

    # coverage: every visited m (away from the two ends of the window) carries all S values of n
    by_m: dict[int, set[int]] = {}
    for m, n in report.coords:
        by_m.setdefault(m, set()).add(n)
    ms = sorted(by_m)
    if ms != list(range(ms[0], ms[-1] + 1)):
        raise MismatchAt(0, "visited m values are not contiguous")
    full = [m for m in ms if len(by_m[m]) == S]
    if not full or full != list(range(full[0], full[-1] + 1)):
        raise MismatchAt(0, "fully covered m values are not contiguous")
    return report


def fls22_pair_failures(k_min: int = 0, k_max: int = 50, convention: str = RIGHT_CLOSED) -> list[int]:
    """Indices k in [k_min, k_max] where {x_2k, x_2k+1} != {{(1-k) beta}, {(2-k) beta + beta^2}}
    for x_k = f_{2,2}^k(beta).  Breakpoints must belong to the left interval for x0 = beta
    to start the pattern, hence the default convention."""
    f = fls(2, 2, convention)
    b = beta(2, 2)
    b2 = b * b
    seg = orbit(f, b, min(0, 2 * k_min), max(1, 2 * k_max + 1))
    failures = []
    for k in range(k_min, k_max + 1):
        got = {frac_quad(seg[2 * k]), frac_quad(seg[2 * k + 1])}
        want = {frac_quad((1 - k) * b), frac_quad((2 - k) * b + b2)}
        if got != want:
            failures.append(k)
    return failures
