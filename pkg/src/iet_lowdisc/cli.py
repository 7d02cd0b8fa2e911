"""Command-line front end.

    iet-lowdisc gen --kind ls --L 1 --S 1 --n 8
    iet-lowdisc curve --kind kronecker --z golden --N 2000 --out curve.csv
    iet-lowdisc cf -- "-1/2+1/2*sqrt(3)"
    iet-lowdisc verify --suite all
    iet-lowdisc figure2 --out fig2.csv

Exit status: 0 on success, 1 when a verification suite fails, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from . import suites
from .discrepancy import bound_monitor, curve, extreme_disc_unit, star_disc_interval
from .errors import IETLowDiscError, RationalInput
from .iet import fls, fls_start, n3_from_gamma, n3_standard
from .quadratic import QuadReal, cf_expand, golden, moving_average, parse_quad, to_decimal
from .sequences import (
    JLS,
    IETOrbit,
    Interval1D,
    Kronecker,
    LSPoints,
    PointStream,
    Restriction,
    render_points,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

KINDS = ("kronecker", "ls", "jls", "iet", "fls")
SUITE_NAMES = ("scaling", "restriction", "n3", "example35", "orbit-jls", "ls-noncoincidence", "all")
JLS_PAIRS = ((1, 1), (2, 1), (2, 2), (3, 2), (3, 3))


class UsageError(Exception):
    pass


def _quad(text: Optional[str], flag: str) -> Optional[QuadReal]:
    if text is None:
        return None
    try:
        return parse_quad(text)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _need(args, *names):
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise UsageError(f"--kind {args.kind} needs " + ", ".join(f"--{n}" for n in missing))


def build_stream(args) -> PointStream:
    kind = args.kind
    if kind is None:
        raise UsageError("--kind is required")
    if kind == "kronecker":
        z = _quad(args.z, "--z") if args.z is not None else golden()
        stream: PointStream = Kronecker(z)
    elif kind == "ls":
        _need(args, "L", "S")
        stream = LSPoints(args.L, args.S)
    elif kind == "jls":
        _need(args, "L", "S")
        stream = JLS(args.L, args.S)
    elif kind == "fls":
        _need(args, "L", "S")
        x0 = _quad(args.x0, "--x0") if args.x0 is not None else fls_start(args.L, args.S, 0)
        stream = IETOrbit(fls(args.L, args.S), x0)
    else:
        stream = IETOrbit(n3_standard(*n3_lengths(args)), _quad(args.x0, "--x0") or QuadReal(0))
    if args.sub is not None:
        parts = args.sub.split(",")
        if len(parts) != 2:
            raise UsageError("--sub takes 'left,right'")
        stream = Restriction(stream, Interval1D(_quad(parts[0], "--sub"), _quad(parts[1], "--sub")))
    return stream


def n3_lengths(args) -> tuple[QuadReal, QuadReal, QuadReal]:
    explicit = [args.lambda_a, args.lambda_b, args.lambda_c]
    if all(x is not None for x in explicit):
        return tuple(_quad(x, "--lambda") for x in explicit)  # type: ignore[return-value]
    if any(x is not None for x in explicit):
        raise UsageError("give all of --lambda-a, --lambda-b, --lambda-c, or use --lc/--gamma")
    if args.lc is None:
        raise UsageError("an n=3 IET needs --lambda-a/-b/-c or --lc (with optional --gamma)")
    gamma = _quad(args.gamma, "--gamma") if args.gamma is not None else golden()
    return n3_from_gamma(gamma, _quad(args.lc, "--lc"))


def _check_common(args):
    if getattr(args, "precision", None) is not None and args.precision < 1:
        raise UsageError("--precision must be >= 1")
    for flag in ("n", "N", "step"):
        v = getattr(args, flag, None)
        if v is not None and v < 1:
            raise UsageError(f"--{flag} must be >= 1")


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- commands -------------------------------------------------------------------


def cmd_gen(args) -> tuple[int, str]:
    stream = build_stream(args)
    count = args.n if args.n is not None else (args.N or 10)
    pts = stream.take(count)
    shown = render_points(pts, args.precision)
    if args.format == "json":
        return EXIT_OK, _json({"stream": stream.to_dict(), "points": shown})
    lines = [f"# stream: {json.dumps(stream.to_dict())}", "index,point"]
    lines += [f"{i},{p}" for i, p in enumerate(shown)]
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_disc(args) -> tuple[int, str]:
    stream = build_stream(args)
    N = args.N or args.n or 100
    pts = stream.take(N)
    prec = args.precision or 12
    star = star_disc_interval(pts, stream.domain)
    ext = extreme_disc_unit([stream.domain.to_unit(p) for p in pts])
    row = {
        "N": N,
        "Dstar": to_decimal(star.value, prec),
        "Dstar_exact": str(star.value),
        "D": to_decimal(ext.value, prec),
        "D_exact": str(ext.value),
    }
    if args.format == "json":
        return EXIT_OK, _json({"stream": stream.to_dict(), **row})
    head = f"# stream: {json.dumps(stream.to_dict())}\n"
    return EXIT_OK, head + ",".join(row) + "\n" + ",".join(str(v) for v in row.values()) + "\n"


def cmd_curve(args) -> tuple[int, str]:
    stream = build_stream(args)
    N = args.N or 2000
    crv = curve(stream, N, args.step)
    report = bound_monitor(crv)
    prec = args.precision or 12
    if args.format == "json":
        return EXIT_OK, _json({
            "stream": stream.to_dict(),
            "curve": [[n, to_decimal(d, prec)] for n, d in crv.entries],
            "bound": report.to_dict(),
        })
    head = f"# stream: {json.dumps(stream.to_dict())}\n# bound: {report.to_json()}\n"
    return EXIT_OK, head + crv.to_csv(prec)


def cmd_cf(args) -> tuple[int, str]:
    text = args.number if args.number is not None else args.z
    if text is None:
        raise UsageError("cf needs a number (positional or --z)")
    x = _quad(text, "number")
    cf = cf_expand(x)
    out = {
        "x": str(x),
        "cf": str(cf),
        "a0": cf.a0,
        "preperiod": list(cf.preperiod),
        "period": list(cf.period),
        "terminated": cf.terminated,
    }
    try:
        rep = moving_average(cf, args.n or 100)
        out["moving_average"] = {
            "count": len(rep.values),
            "first": [str(v) for v in rep.values[:10]],
            "last": str(rep.values[-1]),
            "supremum_observed": str(rep.supremum_observed),
            "limit": None if rep.limit is None else str(rep.limit),
            "bounded": rep.bounded,
        }
    except RationalInput as exc:
        out["moving_average"] = None
        out["note"] = f"RationalInput: {exc}"
    return EXIT_OK, _json(out)


def _run_suite(name: str, args) -> list[suites.CheckResult]:
    if name == "scaling":
        return [suites.suite_scaling()]
    if name == "restriction":
        return [suites.suite_restriction(args.N or 2000)]
    if name == "n3":
        has_lengths = args.lc is not None or args.lambda_a is not None
        return [suites.suite_n3(n3_lengths(args) if has_lengths else None)]
    if name == "example35":
        return [suites.suite_fls22_pairs(args.window or 50)]
    if name == "orbit-jls":
        if args.L is None and args.S is None:
            return [suites.suite_orbit_jls(L, S, args.r, args.window) for L, S in JLS_PAIRS]
        return [suites.suite_orbit_jls(args.L or 2, args.S or 2, args.r, args.window)]
    if name == "ls-noncoincidence":
        if args.L is None and args.S is None:
            return [suites.suite_ls_noncoincidence(L, S, args.lmax) for L in range(1, 6) for S in range(1, 6)]
        return [suites.suite_ls_noncoincidence(args.L or 1, args.S or 2, args.lmax)]
    raise UsageError(f"unknown suite {name!r}")


def cmd_verify(args) -> tuple[int, str]:
    names = SUITE_NAMES[:-1] if args.suite == "all" else (args.suite,)
    checks = []
    for name in names:
        checks.extend(_run_suite(name, args))
    failed = [c.name for c in checks if not c.passed]
    report = {
        "suite": args.suite,
        "passed": not failed,
        "first_failure": failed[0] if failed else None,
        "checks": [c.to_dict() for c in checks],
    }
    return (EXIT_FAIL if failed else EXIT_OK), _json(report)


def cmd_figure2(args) -> tuple[int, str]:
    gamma = _quad(args.gamma, "--gamma") if args.gamma is not None else None
    requests = None
    if args.lc is not None:
        lcs = [_quad(t, "--lc") for t in args.lc.split(",")]
        if len(lcs) != 2:
            raise UsageError("figure2 --lc takes two values 'a,b'")
        requests = tuple(lcs)
    run = suites.figure2(args.N or 2000, args.step, gamma, requests)
    prec = args.precision or 12
    if args.format == "json":
        params = {}
        for name in ("iet_a", "iet_b"):
            p = run.params[name]
            params[name] = {
                "requested_lambda_c": str(p["requested"]),
                "lambda_c": str(p["lambda_c"]),
                "lengths": [str(x) for x in p["lengths"]],
                "fallback": p["fallback"],
                "reason": p["reason"],
            }
        curves = {k: [[n, to_decimal(d, prec)] for n, d in c.entries] for k, c in run.curves.items()}
        return EXIT_OK, _json({"gamma": str(run.params["gamma"]), "params": params, "reports": run.reports, "curves": curves})
    return EXIT_OK, run.to_csv(prec)


COMMANDS = {
    "gen": cmd_gen,
    "disc": cmd_disc,
    "curve": cmd_curve,
    "cf": cmd_cf,
    "verify": cmd_verify,
    "figure2": cmd_figure2,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="iet-lowdisc", description="Low-discrepancy sequences from interval exchanges.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, stream=True):
        if stream:
            sp.add_argument("--kind", choices=KINDS)
            sp.add_argument("--z", help="Kronecker step (exact literal or 'golden')")
            sp.add_argument("--x0", help="orbit start for iet/fls kinds")
            sp.add_argument("--sub", help="restrict to [left, right), given as 'left,right'")
        sp.add_argument("--L", type=int)
        sp.add_argument("--S", type=int)
        sp.add_argument("--lambda-a")
        sp.add_argument("--lambda-b")
        sp.add_argument("--lambda-c")
        sp.add_argument("--lc")
        sp.add_argument("--gamma")
        sp.add_argument("--n", type=int)
        sp.add_argument("--N", type=int)
        sp.add_argument("--step", type=int, default=1)
        sp.add_argument("--precision", type=int)
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out")

    for name in ("gen", "disc", "curve"):
        common(sub.add_parser(name))

    cf = sub.add_parser("cf")
    cf.add_argument("number", nargs="?")
    cf.add_argument("--z")
    cf.add_argument("--n", type=int, help="number of moving averages")
    cf.add_argument("--precision", type=int)
    cf.add_argument("--out")

    v = sub.add_parser("verify")
    common(v, stream=False)
    v.add_argument("--suite", choices=SUITE_NAMES, required=True)
    v.add_argument("--window", type=int)
    v.add_argument("--r", type=int, default=0)
    v.add_argument("--lmax", type=int, default=8)

    common(sub.add_parser("figure2"), stream=False)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        _check_common(args)
        code, text = COMMANDS[args.command](args)
    except (UsageError, IETLowDiscError, ValueError) as exc:
        print(f"iet-lowdisc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
