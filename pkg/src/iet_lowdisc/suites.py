"""Verification suites and the rotation-vs-3-IET comparison run used by the CLI."""

from __future__ import annotations

import io
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .discrepancy import (
    DiscrepancyCurve,
    bound_monitor,
    curve,
    star_disc_interval,
    star_disc_unit,
)
from .errors import IETLowDiscError, MismatchAt, NonPositiveResult
from .iet import (
    beta_power_coords,
    coords_denominator,
    evaluate,
    fls22_pair_failures,
    first_return,
    fls,
    fls_translation_vector,
    n3_certificate,
    n3_from_gamma,
    n3_standard,
    orbit_matches_jls,
)
from .quadratic import QuadReal, frac_quad, golden, to_decimal
from .sequences import IETOrbit, Interval1D, Kronecker, Restriction

log = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details}


# -- oracles ----------------------------------------------------------------------


def brute_force_star_interval(points, I: Interval1D) -> QuadReal:
    """sup over anchored boxes [left, b) inside I of |A/N - (b - left)/|I||, counted in I's own coordinates."""
    pts = [QuadReal.coerce(p) for p in points]
    N = len(pts)
    best = QuadReal(0)
    for b in pts + [I.right]:
        below = sum(1 for x in pts if x < b)
        upto = sum(1 for x in pts if x <= b)
        frac_len = (b - I.left) / I.length
        for count in ((below,) if b == I.right else (below, upto)):
            err = abs(Fraction(count, N) - frac_len)
            if err > best:
                best = err
    return best


# -- suites -----------------------------------------------------------------------


def _random_quad(rng: random.Random, radicand: int, lo, hi) -> QuadReal:
    """A random element of Q(sqrt(radicand)) inside [lo, hi)."""
    lo = QuadReal.coerce(lo)
    hi = QuadReal.coerce(hi)
    while True:
        t = frac_quad(QuadReal(Fraction(rng.randint(0, 99), rng.randint(1, 50)), Fraction(rng.randint(-20, 20), rng.randint(1, 20)), radicand))
        x = lo + (hi - lo) * t
        if lo <= x < hi:
            return x


def suite_scaling(trials: int = 200, seed: int = 2024, n_max: int = 40) -> CheckResult:
    """D*_{N,I} counted in I equals D*_N of the rescaled points, exactly."""
    rng = random.Random(seed)
    failures = []
    for t in range(trials):
        radicand = rng.choice([1, 2, 3, 5])
        a = _random_quad(rng, radicand, -3, 3)
        width = _random_quad(rng, radicand, Fraction(1, 10), 4)
        I = Interval1D(a, a + width)
        N = rng.randint(1, n_max)
        pts = [_random_quad(rng, radicand, I.left, I.right) for _ in range(N)]
        direct = brute_force_star_interval(pts, I)
        scaled = star_disc_unit([I.to_unit(p) for p in pts]).value
        via_api = star_disc_interval(pts, I).value
        if not (direct == scaled == via_api):
            failures.append(t)
    return CheckResult("scaling", not failures, {"trials": trials, "failures": failures})


def suite_restriction(N_max: int = 2000, factor: float = 4.0) -> CheckResult:
    """Golden Kronecker restricted to [0, 1/2) stays within ``factor`` of the unrestricted C_up."""
    g = golden()
    full = bound_monitor(curve(Kronecker(g), N_max))
    sub = Interval1D(QuadReal(0), QuadReal(Fraction(1, 2)))
    restricted = bound_monitor(curve(Restriction(Kronecker(g), sub), N_max))
    ratio = restricted.C_up / full.C_up
    ok = math.isfinite(restricted.C_up) and ratio <= factor
    return CheckResult(
        "restriction",
        ok,
        {"C_up": full.C_up, "C_up_restricted": restricted.C_up, "ratio": ratio, "factor": factor},
    )


def n3_sample_points(lA, lB, lC, count: int = 100) -> list[QuadReal]:
    """Exact sample points of [0, total): the breakpoints plus an irrational rotation grid."""
    total = lA + lB + lC
    pts = [QuadReal(0), lA, lA + lB]
    radicands = {x.d for x in (lA, lB, lC) if x.b}
    # the golden grid needs the lengths to live in Q(sqrt 5) or Q
    step = golden() if radicands <= {5} else Fraction(1, count + 1)
    k = 1
    while len(pts) < count:
        x = total * frac_quad(k * step)
        if x not in pts:
            pts.append(x)
        k += 1
    return pts


def suite_n3(lengths=None, count: int = 100) -> CheckResult:
    """The symmetric 3-IET is the first return map of the rotation by lB + lC on [0, total + lB)."""
    if lengths is None:
        lengths = figure2_parameters()["iet_a"]["lengths"]
    lA, lB, lC = (QuadReal.coerce(x) for x in lengths)
    f = n3_standard(lA, lB, lC)
    total = f.total
    mismatches = []
    for y in n3_sample_points(lA, lB, lC, count):
        point, steps = first_return(total + lB, lB + lC, total, y)
        want_steps = 2 if lA <= y < lA + lB else 1
        if point != evaluate(f, y) or steps != want_steps:
            mismatches.append(str(y))
    cert = n3_certificate(lA, lB, lC)
    return CheckResult(
        "n3",
        not mismatches,
        {"lengths": [str(x) for x in (lA, lB, lC)], "samples": count, "mismatches": mismatches, "certificate": cert.to_dict()},
    )


def suite_fls22_pairs(window: int = 50) -> CheckResult:
    w_ok = fls(2, 2).w == fls_translation_vector(2, 2)
    failures = fls22_pair_failures(0, window)
    return CheckResult(
        "example35",
        w_ok and not failures,
        {"translation_vector": [str(x) for x in fls(2, 2).w], "window": window, "pair_failures": failures},
    )


def suite_orbit_jls(L: int = 2, S: int = 2, r: int = 0, window: Optional[int] = None) -> CheckResult:
    try:
        report = orbit_matches_jls(L, S, r, window)
    except (MismatchAt, IETLowDiscError) as exc:
        return CheckResult("orbit-jls", False, {"L": L, "S": S, "r": r, "error": str(exc)})
    return CheckResult("orbit-jls", True, report.to_dict())


def suite_ls_noncoincidence(L: int = 1, S: int = 2, lmax: int = 8) -> CheckResult:
    """beta^l = a + b beta: for S >= 2 the coordinates are never integral (l >= 2); for S = 1 they always are."""
    dens = {}
    for l in range(2, lmax + 1):
        a, b = beta_power_coords(L, S, l)
        dens[l] = coords_denominator(a, b)
    if S >= 2:
        ok = all(d > 1 for d in dens.values())
    else:
        ok = all(d == 1 for d in dens.values())
    return CheckResult("ls-noncoincidence", ok, {"L": L, "S": S, "denominators": dens})


SUITES: dict[str, Callable[..., CheckResult]] = {
    "scaling": suite_scaling,
    "restriction": suite_restriction,
    "n3": suite_n3,
    "example35": suite_fls22_pairs,
    "orbit-jls": suite_orbit_jls,
    "ls-noncoincidence": suite_ls_noncoincidence,
}


# -- rotation vs. 3-IET comparison ----------------------------------------------


def _fallback_lc(gamma: QuadReal, wanted: QuadReal, grid: int, taken: set) -> tuple[Fraction, tuple]:
    """Grid point k/grid nearest to ``wanted`` that gives positive lengths and is not taken."""
    options = []
    for k in range(1, grid):
        lc = Fraction(k, grid)
        if lc in taken:
            continue
        try:
            lengths = n3_from_gamma(gamma, lc)
        except NonPositiveResult:
            continue
        options.append((abs(float(lc) - float(wanted)), lc, lengths))
    if not options:
        raise NonPositiveResult(f"no lambda_C = k/{grid} gives positive lengths")
    _, lc, lengths = min(options, key=lambda t: (t[0], t[1]))
    return lc, lengths


def figure2_parameters(gamma=None, requests=None, grid: int = 20) -> dict:
    """Length data for the two 3-IET curves, trying the requested lambda_C first."""
    gamma = golden() if gamma is None else QuadReal.coerce(gamma)
    if requests is None:
        requests = (gamma / 2, gamma / 4)
    out = {}
    taken: set = set()
    for name, lc in zip(("iet_a", "iet_b"), requests):
        lc = QuadReal.coerce(lc)
        try:
            lengths = n3_from_gamma(gamma, lc)
            out[name] = {"requested": lc, "lambda_c": lc, "lengths": lengths, "fallback": False, "reason": ""}
            if lc.is_rational:
                taken.add(lc.a)
        except NonPositiveResult as exc:
            chosen, lengths = _fallback_lc(gamma, lc, grid, taken)
            taken.add(chosen)
            log.info("lambda_C = %s rejected (%s); using %s", lc, exc, chosen)
            out[name] = {
                "requested": lc,
                "lambda_c": QuadReal(chosen),
                "lengths": lengths,
                "fallback": True,
                "reason": str(exc),
            }
    out["gamma"] = gamma
    out["grid"] = grid
    return out


@dataclass
class Figure2Run:
    params: dict
    curves: dict[str, DiscrepancyCurve]
    reports: dict
    N_max: int
    step: int

    def to_csv(self, precision: int = 12) -> str:
        buf = io.StringIO()
        g = self.params["gamma"]
        buf.write(f"# rotation: Kronecker sequence {{n gamma}}, gamma = {g}, x0 = 0\n")
        for name in ("iet_a", "iet_b"):
            p = self.params[name]
            lA, lB, lC = p["lengths"]
            line = f"# {name}: 3-IET orbit of 0, lambda = ({lA}; {lB}; {lC})"
            if p["fallback"]:
                line += (
                    f"; requested lambda_C = {p['requested']} rejected ({p['reason']});"
                    f" fallback lambda_C = {p['lambda_c']} (nearest positive point of grid 1/{self.params['grid']})"
                )
            buf.write(line + "\n")
        for name in ("rotation", "iet_a", "iet_b"):
            r = self.reports[name]
            blocks = " ".join(f"{b['j']}:{b['max']:.4f}" for b in r["blocks"])
            buf.write(f"# {name}: C_up(N>=10) = {r['C_up']:.12f} at N = {r['argmax_N']}; block maxima {blocks}\n")
        buf.write("N,Dstar_rotation,Dstar_iet_a,Dstar_iet_b,logN_over_N\n")
        rows = zip(*(self.curves[k].entries for k in ("rotation", "iet_a", "iet_b")))
        for (n, d_rot), (_, d_a), (_, d_b) in rows:
            ref = math.log(n) / n
            buf.write(
                f"{n},{to_decimal(d_rot, precision)},{to_decimal(d_a, precision)},"
                f"{to_decimal(d_b, precision)},{ref:.{precision}f}\n"
            )
        return buf.getvalue()


def figure2(N_max: int = 2000, step: int = 1, gamma=None, requests=None, grid: int = 20) -> Figure2Run:
    params = figure2_parameters(gamma, requests, grid)
    g = params["gamma"]
    streams = {
        "rotation": Kronecker(g),
        "iet_a": IETOrbit(n3_standard(*params["iet_a"]["lengths"]), 0),
        "iet_b": IETOrbit(n3_standard(*params["iet_b"]["lengths"]), 0),
    }
    curves = {k: curve(s, N_max, step) for k, s in streams.items()}
    reports = {}
    for k, c in curves.items():
        low = bound_monitor(c)
        up = bound_monitor(c, n_min=10)
        reports[k] = {
            "C_up": up.C_up,
            "argmax_N": up.argmax_N,
            "blocks": low.blocks,
            "schmidt_ok": low.schmidt_ok,
            "verdict": low.verdict,
        }
    return Figure2Run(params, curves, reports, N_max, step)
