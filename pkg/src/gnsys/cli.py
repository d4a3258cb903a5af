"""Command-line front end.

Each subcommand reads a JSON problem description (``--input FILE`` or
standard input), calls the library, and prints a JSON report.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from .criteria import (
    check_finiteness_conditions,
    cns_linf_criterion,
    negative_shift_witness,
    number_system_from_generator,
    scan_negative_shifts,
    scan_positive_shifts,
)
from .domain import BoxDomain, check_cone_conditions, check_zero_interior, digit_set
from .engine import DEFAULT_STATE_CAP, DEFAULT_STEP_CAP, Gns, Verdict, decide_finiteness, expand, make_gns
from .errors import GnsError, TrivialDigitSetWarning, ZeroDivisorConstantTerm
from .opoly import is_expansive, np_polynomial
from .order import norm
from .serialize import ProblemSpec, elem_from_json, rational

EXIT_CODES = {Verdict.FINITE: 0, Verdict.INFINITE: 1, Verdict.NOT_EXPANSIVE: 2}
EXIT_ERROR = 3


class UsageError(Exception):
    pass


def build_gns(spec: ProblemSpec) -> Gns:
    p = spec.poly
    if norm(p.coeffs[0]) == 0:
        raise ZeroDivisorConstantTerm(f"constant term {p.coeffs[0].coords} is a zero divisor")
    if "digits" in spec.raw:
        digits = spec.digit_elems()
    else:
        digits = digit_set(spec.domain, p.coeffs[0])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TrivialDigitSetWarning)
        return make_gns(spec.order, p, digits)


def cmd_decide(spec: ProblemSpec, args) -> tuple[dict, int]:
    gns = build_gns(spec)
    report = decide_finiteness(
        gns, strategy=args.strategy, state_cap=args.state_cap, step_cap=args.step_cap
    )
    return report.to_dict(), EXIT_CODES[report.verdict]


def _digit_str(digits) -> str:
    if all(len(d.coords) == 1 and 0 <= d.coords[0] <= 9 for d in digits):
        return "".join(str(d.coords[0]) for d in digits)
    return " ".join("(" + ",".join(map(str, d.coords)) + ")" for d in digits)


def cmd_expand(spec: ProblemSpec, args) -> tuple[dict, int]:
    gns = build_gns(spec)
    # "element": one order element; "state": coefficient list a_0, a_1, ...
    if "state" in spec.raw:
        value = [elem_from_json(spec.order, c) for c in spec.raw["state"]]
    else:
        value = spec.elem("element")
    exp = expand(gns, value, max_steps=args.step_cap)
    out = exp.to_dict()
    if exp.finite:
        out["string"] = _digit_str(exp.digits)
    else:
        out["period"] = exp.period
        out["preperiod_length"] = len(exp.preperiod)
    return out, 0


def cmd_digits(spec: ProblemSpec, args) -> tuple[dict, int]:
    theta = spec.elem("theta")
    D = digit_set(spec.domain, theta)
    out = D.to_dict()
    out["count"] = len(D)
    if args.emit_plot_data:
        out["plot_data"] = {"columns": list(spec.order.labels), "rows": [list(c) for c in D.coords()]}
    return out, 0


def _scan_range(spec: ProblemSpec) -> tuple[int, int]:
    rng = spec.require("range")
    if not (isinstance(rng, list) and len(rng) == 2 and all(isinstance(x, int) for x in rng)):
        raise UsageError("'range' must be [m_lo, m_hi]")
    return rng[0], rng[1]


def cmd_scan(spec: ProblemSpec, args) -> tuple[dict, int]:
    lo, hi = _scan_range(spec)
    if args.range:
        lo, hi = args.range
    direction = args.direction or spec.raw.get("direction", "positive")
    fn = {"positive": scan_positive_shifts, "negative": scan_negative_shifts}.get(direction)
    if fn is None:
        raise UsageError(f"direction must be positive or negative, got {direction!r}")
    report = fn(
        spec.order, spec.poly, spec.domain, lo, hi,
        jobs=args.jobs, state_cap=args.state_cap, step_cap=args.step_cap,
    )
    return report.to_dict(), 0


def cmd_check(spec: ProblemSpec, args) -> tuple[dict, int]:
    p = spec.poly
    F = spec.domain
    if not isinstance(F, BoxDomain):
        raise UsageError("check needs a box domain")
    gns = build_gns(spec)
    out = {"conditions": check_finiteness_conditions(gns, F).to_dict()}
    out["zero_interior"] = check_zero_interior(F)
    eps = rational(spec.raw.get("epsilon", "1/4"))
    out["cone"] = check_cone_conditions(F, eps).to_dict()
    Np = np_polynomial(spec.order, p)
    out["Np"] = list(Np.coeffs)
    out["expansive"] = is_expansive(Np)
    if spec.order.rank == 1:
        out["linf_criterion"] = cns_linf_criterion([c.coords[0] for c in p.coeffs])
    return out, 0


def cmd_witness_negative(spec: ProblemSpec, args) -> tuple[dict, int]:
    m = args.m if args.m is not None else spec.require("m")
    w = negative_shift_witness(spec.order, spec.poly, spec.domain, m)
    if w is None:
        return {"m": m, "applicable": False}, 0
    out = {"applicable": True, "shifted_poly": w.gns.poly.to_dict()}
    out.update(w.to_dict())
    return out, 1


def cmd_from_generator(spec: ProblemSpec, args) -> tuple[dict, int]:
    alpha = spec.elem("alpha")
    digits = spec.require("digits")
    red = number_system_from_generator(spec.order, alpha, digits)
    out = red.to_dict()
    report = decide_finiteness(red.gns, state_cap=args.state_cap, step_cap=args.step_cap)
    out["decision"] = report.to_dict()
    return out, EXIT_CODES[report.verdict]


COMMANDS = {
    "decide": cmd_decide,
    "expand": cmd_expand,
    "digits": cmd_digits,
    "scan": cmd_scan,
    "check": cmd_check,
    "witness-negative": cmd_witness_negative,
    "from-generator": cmd_from_generator,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="problem JSON file (default: standard input)")
    common.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP)
    common.add_argument("--step-cap", type=int, default=DEFAULT_STEP_CAP)
    common.add_argument("--jobs", "-j", type=int, default=1, help="worker processes for scans")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="compact JSON (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON")
    common.set_defaults(pretty=False)

    parser = argparse.ArgumentParser(prog="gnsys", description="Exact generalized number system toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("decide", parents=[common], help="decide the finiteness property")
    p.add_argument("--strategy", choices=["cycles", "ball"], default="cycles")
    sub.add_parser("expand", parents=[common], help="expand the 'element' of the problem")
    p = sub.add_parser("digits", parents=[common], help="digit set of 'theta' for the domain")
    p.add_argument("--emit-plot-data", action="store_true")
    p = sub.add_parser("scan", parents=[common], help="scan shifts p(x +- m)")
    p.add_argument("--direction", choices=["positive", "negative"])
    p.add_argument("--range", nargs=2, type=int, metavar=("LO", "HI"))
    sub.add_parser("check", parents=[common], help="sufficient conditions and cone checks")
    p = sub.add_parser("witness-negative", parents=[common], help="fixed-point witness for p(x - m - 1)")
    p.add_argument("--m", type=int)
    sub.add_parser("from-generator", parents=[common], help="GNS over Z from a generator alpha")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.input:
            with open(args.input) as fh:
                raw = json.load(fh)
        else:
            raw = json.load(sys.stdin)
        spec = ProblemSpec.from_json(raw)
        out, code = COMMANDS[args.command](spec, args)
    except (GnsError, UsageError, ValueError, TypeError, KeyError, OSError, ZeroDivisionError) as exc:
        out = {"error": type(exc).__name__, "message": str(exc)}
        code = EXIT_ERROR
    json.dump(out, sys.stdout, indent=2 if args.pretty else None, sort_keys=False)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
