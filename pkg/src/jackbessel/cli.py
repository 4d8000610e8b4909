"""Command-line front end.

Subcommands: jack-eval, oo-verify, bessel-eval, density-eval, table,
selftest.  Reports are JSON (default) or CSV with a fixed key set
{command, params, value, err_estimate, method, evaluations, elapsed_ms,
cases}; numeric flags are echoed back exactly as typed.  Identical
invocations produce byte-identical reports: wall-clock timing is only
included when --timing is passed (elapsed_ms is null otherwise).

Exit codes: 0 success / all checks passed, 1 verification failure,
2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict
from fractions import Fraction

from . import __version__
from .bessel import BesselParams, bessel_eval, density_value
from .chamber import project_zero_sum
from .errors import InvalidInputError
from .jack import jack_construct, jack_eval
from .okounkov import verify_oo
from .selfcheck import CRITERIA, run_criteria


class CliInputError(Exception):
    """Bad command-line value; carries the flag name for the diagnostic."""


def _parse_number(text: str, flag: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise CliInputError(f"{flag}: cannot parse {text!r} as a decimal or p/q rational")


def _parse_coords(text: str, flag: str) -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise CliInputError(f"{flag}: empty coordinate list")
    return tuple(_parse_number(p, flag) for p in parts)


def _parse_partition(text: str, flag: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise CliInputError(f"{flag}: cannot parse {text!r} as a comma-separated partition")
    if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise CliInputError(f"{flag}: {text!r} is not weakly decreasing and nonnegative")
    return parts


def _require_zero_sum(coords: tuple[Fraction, ...], flag: str, project: bool) -> tuple[Fraction, ...]:
    total = sum(coords)
    if total == 0:
        return coords
    if not project:
        raise CliInputError(
            f"{flag}: coordinates sum to {total}, not 0; pass --project to drop the mean"
        )
    print(f"warning: {flag} projected onto the zero-sum hyperplane "
          f"(dropped mean component {total}/{len(coords)})", file=sys.stderr)
    return tuple(project_zero_sum(coords))


def _report(command: str, params: dict, *, value=None, err=None, method=None,
            evaluations=None, elapsed_ms=None, cases=None) -> dict:
    return {
        "command": command,
        "params": params,
        "value": value,
        "err_estimate": err,
        "method": method,
        "evaluations": evaluations,
        "elapsed_ms": elapsed_ms,
        "cases": cases if cases is not None else [],
    }


def _emit(report: dict, fmt: str, out_path: str | None):
    if fmt == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        rows = report["cases"]
        lines = []
        if rows:
            header = list(rows[0].keys())
            lines.append(",".join(header))
            for row in rows:
                lines.append(",".join(_csv_cell(row[h]) for h in header))
        else:
            lines.append("value,err_estimate,method,evaluations")
            lines.append(",".join(_csv_cell(report[c]) for c in
                                  ("value", "err_estimate", "method", "evaluations")))
        text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return '"' + " ".join(str(x) for x in v) + '"'
    return str(v)


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_jack_eval(args) -> tuple[int, dict]:
    partition = _parse_partition(args.partition, "--partition")
    x = _parse_coords(args.x, "--x")
    k = _parse_number(args.k, "--k")
    if float(k) <= 0:
        raise CliInputError(f"--k: must be positive, got {args.k}")
    jp = jack_construct(partition, len(x), k)
    exact = jack_eval(jp, x)
    params = {"partition": args.partition, "x": args.x, "k": args.k}
    report = _report("jack-eval", params, value=float(exact), err=0.0,
                     method="exact", evaluations=1)
    report["exact"] = f"{exact.numerator}/{exact.denominator}"
    return 0, report


def _cmd_oo_verify(args) -> tuple[int, dict]:
    k = _parse_number(args.k, "--k")
    if float(k) <= 0:
        raise CliInputError(f"--k: must be positive, got {args.k}")
    tol = args.tol if args.tol is not None else 1e-7
    cases = []
    if args.mu is not None or args.lam is not None:
        if args.mu is None or args.lam is None:
            raise CliInputError("--mu and --lambda must be given together")
        mu = _parse_partition(args.mu, "--mu")
        lam = _parse_coords(args.lam, "--lambda")
        reports = [verify_oo(mu, lam, k, args.order, tol)]
    else:
        import numpy as np

        from .selfcheck import random_oo_case
        if args.n is None:
            raise CliInputError("--N is required for randomized verification")
        rng = np.random.default_rng(args.seed)
        reports = []
        for _ in range(args.cases):
            mu, lam = random_oo_case(rng, args.n, k, args.weight_max)
            reports.append(verify_oo(mu, lam, k, args.order, tol))
    n_fail = 0
    for rep in reports:
        n_fail += int(not rep.passed)
        cases.append({
            "mu": list(rep.mu), "lambda": list(rep.lam), "k": rep.k,
            "lhs": rep.lhs, "rhs": rep.rhs, "rel_error": rep.rel_error,
            "pass": rep.passed,
        })
    params = {"k": args.k, "order": args.order, "tol": tol, "seed": args.seed,
              "N": args.n, "cases": args.cases, "weight_max": args.weight_max,
              "mu": args.mu, "lambda": args.lam}
    report = _report("oo-verify", params, value=max(c["rel_error"] for c in cases),
                     err=None, method="oo-quadrature",
                     evaluations=sum(r.evaluations for r in reports), cases=cases)
    return (1 if n_fail else 0), report


def _bessel_params(args, k) -> BesselParams:
    kwargs = {"k": k, "project": args.project}
    if args.order is not None:
        kwargs["quad_order"] = args.order
    if args.tol is not None:
        kwargs["tol"] = args.tol
    if getattr(args, "method", None):
        kwargs["method"] = args.method
    return BesselParams(**kwargs)


def _cmd_bessel_eval(args) -> tuple[int, dict]:
    k = _parse_number(args.k, "--k")
    mu = _parse_coords(args.mu, "--mu")
    lam = _parse_coords(args.lam, "--lambda")
    if args.n is not None and (len(mu) != args.n or len(lam) != args.n):
        raise CliInputError(f"--N: expected {args.n} coordinates, got {len(mu)} and {len(lam)}")
    if len(mu) != len(lam):
        raise CliInputError("--mu and --lambda must have the same length")
    mu = _require_zero_sum(mu, "--mu", args.project)
    lam = _require_zero_sum(lam, "--lambda", args.project)
    res = bessel_eval(tuple(map(float, mu)), tuple(map(float, lam)), _bessel_params(args, k))
    params = {"k": args.k, "mu": args.mu, "lambda": args.lam, "N": args.n,
              "order": args.order, "tol": args.tol, "method": args.method,
              "project": args.project}
    return 0, _report("bessel-eval", params, value=res.value, err=res.err_estimate,
                      method=res.method, evaluations=res.evaluations)


def _cmd_density_eval(args) -> tuple[int, dict]:
    k = _parse_number(args.k, "--k")
    lam = _require_zero_sum(_parse_coords(args.lam, "--lambda"), "--lambda", args.project)
    z = _require_zero_sum(_parse_coords(args.z, "--z"), "--z", args.project)
    if len(lam) != len(z):
        raise CliInputError("--lambda and --z must have the same length")
    pt = density_value(tuple(map(float, lam)), tuple(map(float, z)), float(k),
                       order=args.order or 48, route=args.route)
    params = {"k": args.k, "lambda": args.lam, "z": args.z,
              "order": args.order, "route": args.route, "project": args.project}
    report = _report("density-eval", params, value=pt.value, err=None,
                     method=f"density-{args.route}", evaluations=None)
    report["in_support"] = pt.in_support
    return 0, report


def _cmd_table(args) -> tuple[int, dict]:
    k = _parse_number(args.k, "--k")
    direction = _require_zero_sum(_parse_coords(args.direction, "--direction"),
                                  "--direction", args.project)
    if args.axis == "mu":
        if args.lam is None:
            raise CliInputError("--lambda: required when --axis mu (the fixed second argument)")
        fixed = _require_zero_sum(_parse_coords(args.lam, "--lambda"), "--lambda", args.project)
    else:
        if args.mu is None:
            raise CliInputError("--mu: required when --axis lambda (the fixed first argument)")
        fixed = _require_zero_sum(_parse_coords(args.mu, "--mu"), "--mu", args.project)
    if len(direction) != len(fixed):
        raise CliInputError("--direction and the fixed point must have the same length")
    if args.steps < 1:
        raise CliInputError("--steps: must be at least 1")
    ts = [args.t_min + i * (args.t_max - args.t_min) / max(args.steps - 1, 1)
          for i in range(args.steps)]
    rows = []
    params_bessel = _bessel_params(args, k)
    for t in ts:
        point = tuple(float(t * d) for d in direction)
        if args.axis == "mu":
            mu, lam = point, tuple(map(float, fixed))
        else:
            mu, lam = tuple(map(float, fixed)), point
        res = bessel_eval(mu, lam, params_bessel)
        resorted = list(point) != sorted(point, reverse=True)
        rows.append({"t": t, "mu": list(mu), "lambda": list(lam),
                     "value": res.value, "err_estimate": res.err_estimate,
                     "resorted": resorted})
    params = {"k": args.k, "axis": args.axis, "direction": args.direction,
              "mu": args.mu, "lambda": args.lam, "t_min": args.t_min,
              "t_max": args.t_max, "steps": args.steps, "order": args.order,
              "method": args.method}
    return 0, _report("table", params, value=None, err=None,
                      method="table", evaluations=None, cases=rows)


def _cmd_selftest(args) -> tuple[int, dict]:
    numbers = None
    if args.criteria:
        try:
            numbers = sorted({int(c) for c in args.criteria.split(",") if c.strip()})
        except ValueError:
            raise CliInputError(f"--criteria: cannot parse {args.criteria!r}")
        unknown = [n for n in numbers if n not in CRITERIA]
        if unknown:
            raise CliInputError(f"--criteria: unknown criteria {unknown}; available {sorted(CRITERIA)}")
    results = run_criteria(numbers, seed=args.seed)
    cases = []
    for r in results:
        case = asdict(r)
        if not args.timing:
            case.pop("elapsed_s")  # keep the report byte-deterministic
        cases.append(case)
    n_fail = sum(1 for r in results if not r.passed)
    params = {"criteria": args.criteria, "seed": args.seed}
    report = _report("selftest", params, value=None, err=None,
                     method="selftest", evaluations=None, cases=cases)
    report["passed"] = n_fail == 0
    return (1 if n_fail else 0), report


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jackbessel",
        description="Generalized Bessel kernels of type A: evaluation, "
                    "verification and tabulation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, seed=False, method=False, order_default=None):
        p.add_argument("--k", required=True, help="multiplicity: decimal or p/q rational")
        p.add_argument("--order", type=int, default=order_default,
                       help="quadrature nodes per dimension")
        p.add_argument("--tol", type=float, default=None, help="target relative tolerance")
        p.add_argument("--out", default=None, help="write the report to this path")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--project", action="store_true",
                       help="project inputs onto the zero-sum hyperplane instead of rejecting")
        p.add_argument("--timing", action="store_true",
                       help="include wall-clock elapsed_ms (breaks byte-determinism)")
        if seed:
            p.add_argument("--seed", type=int, default=0)
        if method:
            p.add_argument("--method", choices=("closed_form", "recursive", "density"),
                           default=None)

    p = sub.add_parser("jack-eval", help="evaluate a Jack polynomial exactly")
    common(p)
    p.add_argument("--partition", required=True, help="comma-separated partition, e.g. 2,1")
    p.add_argument("--x", required=True, help="evaluation point, comma-separated")
    p.set_defaults(handler=_cmd_jack_eval)

    p = sub.add_parser("oo-verify", help="verify the branching integral against the exact engine")
    common(p, seed=True, order_default=64)
    p.add_argument("--N", dest="n", type=int, default=None)
    p.add_argument("--mu", default=None, help="partition for a single case")
    p.add_argument("--lambda", dest="lam", default=None, help="decreasing coordinates for a single case")
    p.add_argument("--weight-max", dest="weight_max", type=int, default=5)
    p.add_argument("--cases", type=int, default=20)
    p.set_defaults(handler=_cmd_oo_verify)

    p = sub.add_parser("bessel-eval", help="evaluate the kernel at one pair of points")
    common(p, method=True)
    p.add_argument("--N", dest="n", type=int, default=None)
    p.add_argument("--mu", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.set_defaults(handler=_cmd_bessel_eval)

    p = sub.add_parser("density-eval", help="evaluate the hull density at one point")
    common(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--route", choices=("auto", "explicit", "recursive"), default="auto")
    p.set_defaults(handler=_cmd_density_eval)

    p = sub.add_parser("table", help="tabulate the kernel along a ray")
    common(p, method=True)
    p.add_argument("--axis", choices=("mu", "lambda"), required=True,
                   help="which argument the ray scales")
    p.add_argument("--direction", required=True, help="zero-sum direction vector")
    p.add_argument("--mu", default=None, help="fixed first argument (axis=lambda)")
    p.add_argument("--lambda", dest="lam", default=None, help="fixed second argument (axis=mu)")
    p.add_argument("--t-min", dest="t_min", type=float, required=True)
    p.add_argument("--t-max", dest="t_max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.set_defaults(handler=_cmd_table)

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    p.add_argument("--criteria", default=None, help="comma-separated subset, e.g. 1,3,5")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        code, report = args.handler(args)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if getattr(args, "timing", False):
        report["elapsed_ms"] = (time.perf_counter() - t0) * 1000.0
    _emit(report, getattr(args, "format", "json"), getattr(args, "out", None))
    return code


if __name__ == "__main__":
    sys.exit(main())
