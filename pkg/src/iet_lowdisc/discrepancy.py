"""Exact one-dimensional star and extreme discrepancy.

Values are exact :class:`QuadReal` numbers.  Floats are used only to
shortlist the candidates of the closed-form maximum; every shortlisted
candidate is then evaluated and compared exactly, and the shortlist margin
is far wider than the float error, so the result is the exact supremum.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional, Sequence

import numpy as np

from .errors import EmptyInput, InsufficientData, InvalidParams, OutOfDomain, Unsupported
from .quadratic import QuadReal, compare, to_decimal
from .sequences import UNIT, Interval1D, PointStream

SCHMIDT_LOWER = 0.06
SCHMIDT_UPPER = 0.223

# float images of QuadReals are within ~1e-15; anything closer than this is settled exactly
_TIE = 1e-12
_SHORTLIST = 1e-9


def _cmp(x: QuadReal, y: QuadReal) -> int:
    fx, fy = float(x), float(y)
    if fx - fy > _TIE:
        return 1
    if fy - fx > _TIE:
        return -1
    return compare(x, y)


def exact_sorted(points: Sequence[QuadReal]) -> list[QuadReal]:
    return sorted(points, key=cmp_to_key(_cmp))


def exact_argsort(points: Sequence[QuadReal]) -> list[int]:
    return sorted(range(len(points)), key=cmp_to_key(lambda i, j: _cmp(points[i], points[j])))


def _exact_max(cands: list[QuadReal]) -> int:
    best = 0
    for k in range(1, len(cands)):
        if cands[k] > cands[best]:
            best = k
    return best


@dataclass(frozen=True)
class DiscrepancyResult:
    """Exact discrepancy value.

    For the star discrepancy the supremum is attained by (or approached
    through) the anchored box ``[origin, box_right)``; when ``from_right`` is
    set the box must be taken just past ``box_right`` so that the point
    sitting there is counted.
    """

    value: QuadReal
    N: int
    box_left: QuadReal
    box_right: QuadReal
    from_right: bool = False

    @property
    def argmax_box(self) -> Optional[Interval1D]:
        if self.box_left < self.box_right:
            return Interval1D(self.box_left, self.box_right)
        return None

    def __float__(self):
        return float(self.value)


def _as_points(points) -> list[QuadReal]:
    pts = [QuadReal.coerce(p) for p in points]
    if not pts:
        raise EmptyInput("no points")
    return pts


def _check_unit(pts):
    for p in pts:
        if not (0 <= p < 1):
            raise OutOfDomain(f"point {p} is not in [0, 1)")


def _star_from_sorted(xs: list[QuadReal], fs: np.ndarray) -> DiscrepancyResult:
    N = len(xs)
    i = np.arange(1, N + 1, dtype=float)
    plus = i / N - fs          # box just past x_(i) holds i points
    minus = fs - (i - 1) / N   # box up to x_(i) holds i - 1 points
    top = max(plus.max(), minus.max())
    cands = []
    for k in np.nonzero(plus >= top - _SHORTLIST)[0]:
        cands.append((Fraction(int(k) + 1, N) - xs[k], int(k), True))
    for k in np.nonzero(minus >= top - _SHORTLIST)[0]:
        cands.append((xs[k] - Fraction(int(k), N), int(k), False))
    best = _exact_max([c[0] for c in cands])
    value, k, right = cands[best]
    return DiscrepancyResult(value, N, QuadReal(0), xs[k], right)


def star_disc_unit(points) -> DiscrepancyResult:
    """Star discrepancy of a finite point set in [0, 1):
    max over sorted x_(i) of max(i/N - x_(i), x_(i) - (i-1)/N)."""
    pts = _as_points(points)
    _check_unit(pts)
    xs = exact_sorted(pts)
    fs = np.array([float(x) for x in xs])
    return _star_from_sorted(xs, fs)


def extreme_disc_unit(points) -> DiscrepancyResult:
    """Extreme discrepancy: 1/N + max_i(i/N - x_(i)) - min_i(i/N - x_(i))."""
    pts = _as_points(points)
    _check_unit(pts)
    xs = exact_sorted(pts)
    N = len(xs)
    fs = np.array([float(x) for x in xs])
    g = np.arange(1, N + 1, dtype=float) / N - fs
    hi = [int(k) for k in np.nonzero(g >= g.max() - _SHORTLIST)[0]]
    lo = [int(k) for k in np.nonzero(g <= g.min() + _SHORTLIST)[0]]
    ghi = [Fraction(k + 1, N) - xs[k] for k in hi]
    glo = [Fraction(k + 1, N) - xs[k] for k in lo]
    kmax = hi[_exact_max(ghi)]
    neg = [-v for v in glo]
    kmin = lo[_exact_max(neg)]
    value = Fraction(1, N) + ghi[hi.index(kmax)] - glo[lo.index(kmin)]
    # kmin <= kmax: closed box [x_(kmin), x_(kmax)]; otherwise open box (x_(kmax), x_(kmin))
    left, right = xs[min(kmin, kmax)], xs[max(kmin, kmax)]
    return DiscrepancyResult(value, N, left, right, kmin <= kmax)


def brute_force_star(points) -> DiscrepancyResult:
    """Star discrepancy by direct counting at every candidate box end.

    Independent of the sorted closed form: for each candidate b in the
    point set and 1, count points strictly below b and points at or below b.
    O(N^2) exact comparisons.
    """
    pts = _as_points(points)
    if all(p.is_rational for p in pts):
        return _brute_force_star_rational(pts)
    N = len(pts)
    best = QuadReal(0)
    best_b = QuadReal(0)
    best_right = False
    one = QuadReal(1)
    for b in pts + [one]:
        below = 0
        at = 0
        for x in pts:
            c = compare(x, b)
            if c < 0:
                below += 1
            elif c == 0:
                at += 1
        for count, right in ((below, False), (below + at, True)):
            if b == one and right:
                continue
            err = QuadReal(Fraction(count, N)) - b
            if err.sign() < 0:
                err = -err
            if err > best:
                best, best_b, best_right = err, b, right
    return DiscrepancyResult(best, N, QuadReal(0), best_b, best_right)


def _brute_force_star_rational(pts: list[QuadReal]) -> DiscrepancyResult:
    # same counting, on integers over a common denominator
    N = len(pts)
    den = math.lcm(*(p.a.denominator for p in pts))
    ks = [p.a.numerator * (den // p.a.denominator) for p in pts]
    best = Fraction(0)
    best_k = 0
    best_right = False
    for b in ks + [den]:
        below = sum(1 for k in ks if k < b)
        at = sum(1 for k in ks if k == b)
        for count, right in ((below, False), (below + at, True)):
            if b == den and right:
                continue
            err = abs(Fraction(count * den - N * b, N * den))
            if err > best:
                best, best_k, best_right = err, b, right
    return DiscrepancyResult(QuadReal(best), N, QuadReal(0), QuadReal(Fraction(best_k, den)), best_right)


def brute_force_extreme(points) -> QuadReal:
    """Extreme discrepancy by enumerating boxes [a, b) with one-sided limits at both ends. O(N^3)."""
    pts = _as_points(points)
    N = len(pts)
    ends = sorted(set(pts) | {QuadReal(0), QuadReal(1)})
    best = QuadReal(0)
    for ai, a in enumerate(ends):
        for b in ends[ai:]:
            for a_incl in (True, False):
                for b_incl in (False, True):
                    count = 0
                    for x in pts:
                        lo_ok = x >= a if a_incl else x > a
                        hi_ok = x <= b if b_incl else x < b
                        count += lo_ok and hi_ok
                    err = QuadReal(Fraction(count, N)) - (b - a)
                    if err.sign() < 0:
                        err = -err
                    if err > best:
                        best = err
    return best


def star_disc_interval(points, I) -> DiscrepancyResult:
    """Star discrepancy of points in an arbitrary interval I, by rescaling I onto [0, 1)."""
    if isinstance(I, (list, tuple)):
        if len(I) != 1:
            raise Unsupported("discrepancy is only computed in dimension one")
        I = I[0]
    pts = _as_points(points)
    for p in pts:
        if p not in I:
            raise OutOfDomain(f"point {p} is not in [{I.left}, {I.right})")
    res = star_disc_unit([I.to_unit(p) for p in pts])
    scale = I.length
    return DiscrepancyResult(res.value, res.N, I.left, I.left + res.box_right * scale, res.from_right)


# -- curves -----------------------------------------------------------------------


@dataclass
class DiscrepancyCurve:
    entries: list[tuple[int, QuadReal]]
    stream: Optional[dict]
    N_max: int

    @property
    def Ns(self) -> list[int]:
        return [n for n, _ in self.entries]

    def values(self) -> list[float]:
        return [float(v) for _, v in self.entries]

    def to_csv(self, precision: int = 12) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "Dstar", "scaled"])
        for n, v in self.entries:
            scaled = "" if n < 2 else f"{n * float(v) / math.log(n):.{precision}f}"
            w.writerow([n, to_decimal(v, precision), scaled])
        return buf.getvalue()

    @staticmethod
    def read_csv(text: str) -> list[tuple[int, float, Optional[float]]]:
        rows = []
        reader = csv.reader(line for line in io.StringIO(text) if not line.startswith("#"))
        header = next(reader)
        if header[:2] != ["N", "Dstar"]:
            raise ValueError(f"unexpected header {header}")
        for row in reader:
            rows.append((int(row[0]), float(row[1]), float(row[2]) if row[2] else None))
        return rows


def prefix_star_discrepancies(points: Sequence[QuadReal], Ns: Sequence[int]) -> list[QuadReal]:
    """Exact D*_N of points[:N] (points already in [0, 1)) for every N in Ns.

    One exact sort of the whole prefix serves all N: the sorted order of
    points[:N] is the global order filtered to indices < N.
    """
    pts = list(points)
    if not pts:
        raise EmptyInput("no points")
    order = np.array(exact_argsort(pts), dtype=np.int64)
    fl = np.array([float(p) for p in pts])
    out = []
    for N in Ns:
        if not 1 <= N <= len(pts):
            raise InvalidParams(f"N={N} outside 1..{len(pts)}")
        idx = order[order < N]
        xs_f = fl[idx]
        i = np.arange(1, N + 1, dtype=float)
        plus = i / N - xs_f
        minus = xs_f - (i - 1) / N
        top = max(plus.max(), minus.max())
        cands = [Fraction(int(k) + 1, N) - pts[idx[k]] for k in np.nonzero(plus >= top - _SHORTLIST)[0]]
        cands += [pts[idx[k]] - Fraction(int(k), N) for k in np.nonzero(minus >= top - _SHORTLIST)[0]]
        out.append(cands[_exact_max(cands)])
    return out


def curve_from_points(points, N_max: int, step: int = 1, domain: Interval1D = UNIT, stream=None) -> DiscrepancyCurve:
    if step < 1 or N_max < step:
        raise InvalidParams("need N_max >= step >= 1")
    pts = [QuadReal.coerce(p) for p in points[:N_max]]
    if len(pts) < N_max:
        raise InvalidParams(f"only {len(pts)} points for N_max={N_max}")
    for p in pts:
        if p not in domain:
            raise OutOfDomain(f"point {p} is not in [{domain.left}, {domain.right})")
    if domain != UNIT:
        pts = [domain.to_unit(p) for p in pts]
    Ns = list(range(step, N_max + 1, step))
    values = prefix_star_discrepancies(pts, Ns)
    return DiscrepancyCurve(list(zip(Ns, values)), stream, N_max)


def curve(stream: PointStream, N_max: int, step: int = 1) -> DiscrepancyCurve:
    """D*_N of the first N stream points, rescaled to the stream's domain, for N = step, 2 step, ..."""
    if step < 1 or N_max < step:
        raise InvalidParams("need N_max >= step >= 1")
    pts = stream.take(N_max)
    return curve_from_points(pts, N_max, step, stream.domain, stream.to_dict())


@dataclass
class BoundReport:
    C_up: float
    argmax_N: int
    blocks: list[dict] = field(default_factory=list)
    schmidt_ok: bool = True
    growth: float = 0.0
    verdict: bool = True

    def to_dict(self) -> dict:
        return {
            "C_up": self.C_up,
            "argmax_N": self.argmax_N,
            "blocks": self.blocks,
            "schmidt_ok": self.schmidt_ok,
            "growth": self.growth,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def bound_monitor(
    crv: DiscrepancyCurve,
    n_min: int = 2,
    block_base: int = 2,
    schmidt_c: float = SCHMIDT_LOWER,
    growth_limit: float = 4.0,
) -> BoundReport:
    """Track N D*_N / log N along a curve.

    C_up is its maximum over N >= n_min.  The lower bound is checked per
    block [base^j, base^(j+1)): its maximum there must reach ``schmidt_c``.
    The verdict is negative when the maximum over the last block exceeds
    ``growth_limit`` times the median block maximum, i.e. when the
    statistic keeps growing instead of staying bounded.
    """
    stats = [(n, n * float(v) / math.log(n)) for n, v in crv.entries if n >= max(2, n_min)]
    if not stats:
        raise InsufficientData("no curve entries with N >= 2")
    argmax_N, C_up = max(stats, key=lambda t: t[1])
    per_block: dict[int, float] = {}
    for n, s in stats:
        j = int(math.floor(math.log(n, block_base) + 1e-12))
        while block_base ** j > n:
            j -= 1
        while block_base ** (j + 1) <= n:
            j += 1
        per_block[j] = max(per_block.get(j, -math.inf), s)
    blocks = [{"j": j, "max": per_block[j]} for j in sorted(per_block)]
    maxima = [b["max"] for b in blocks]
    median = float(np.median(maxima))
    growth = maxima[-1] / median if median > 0 else math.inf
    schmidt_ok = all(m >= schmidt_c for m in maxima)
    return BoundReport(C_up, argmax_N, blocks, schmidt_ok, growth, growth <= growth_limit)
