"""Command-line front end.

Commands: radius, expand, candidates, estimate, domain.  JSON is the
machine format (--json); the human format is a small rendered table.
Exact values serialize losslessly: integer defining polynomial plus a
decimal isolating interval that is re-verified to isolate.

Exit codes: 0 success, 2 parse or validation error, 3 ramified branch,
4 undecided result, 5 cross-validation failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from .branch import hensel_lift, validate_branch
from .errors import (
    ConvradError,
    CrossValidationError,
    InsufficientDataError,
    NotARootError,
    ObstructionUndecidedError,
    ParseError,
    PrecisionExhaustedError,
    RamifiedBranchError,
)
from .estimate import build_report
from .exactpoly import UniPoly
from .parser import bipoly_to_text, parse_polynomial, poly_to_text
from .radius import INFINITY, EngineConfig, RadiusResult, exact_radius, puiseux_radius
from .realalg import RealAlgebraic, count_roots
from .reinhardt import (
    log_convexity_check,
    make_profile,
    multivariate_expand,
)
from .singularities import CandidateSet
from .continuation import TrackerConfig

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RAMIFIED = 3
EXIT_UNDECIDED = 4
EXIT_CROSS_VALIDATION = 5

_DEFAULT_SLACK = 0.02


@dataclass
class Request:
    command: str
    poly_text: str
    t0: Fraction | None
    order: int
    puiseux: int
    directions: list
    digits: int
    json_output: bool
    precision_bits: int
    rtol: float
    slack: float = _DEFAULT_SLACK


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def _parse_directions(text: str):
    out = []
    for chunk in text.split(","):
        comps = [c for c in chunk.strip().split(":") if c]
        if len(comps) < 1:
            raise ParseError(f"empty direction in {text!r}")
        out.append(tuple(_parse_rational(c) for c in comps))
    return out


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="convrad",
        description="Exact convergence radii of algebraic power series.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, needs_t0=True):
        p.add_argument("--poly", help="polynomial in X (or X1..Xn) and T")
        p.add_argument("--input", help="file containing the polynomial text")
        if needs_t0:
            p.add_argument("--t0", required=True, help="rational branch value at 0")
        p.add_argument("--digits", type=int, default=12)
        p.add_argument("--json", action="store_true")
        p.add_argument("--precision-bits", type=int, default=53)
        p.add_argument("--rtol", type=float, default=0.1)

    p = sub.add_parser("radius", help="exact convergence radius of a branch")
    common(p)
    p.add_argument("--puiseux", type=int, default=1, metavar="P",
                   help="treat the series as g(X) = h(X^(1/P))")
    p.add_argument("--order", type=int, default=512)

    p = sub.add_parser("expand", help="exact series coefficients")
    common(p)
    p.add_argument("--order", type=int, default=16)

    p = sub.add_parser("candidates", help="candidate singularities of P")
    common(p, needs_t0=False)
    p.add_argument("--order", type=int, default=0)

    p = sub.add_parser("estimate", help="Hadamard / ratio estimates")
    common(p)
    p.add_argument("--order", type=int, default=256)

    p = sub.add_parser("domain", help="directional radii of the convergence domain")
    common(p)
    p.add_argument("--order", type=int, default=64)
    p.add_argument("--directions", required=True,
                   help="comma-separated directions like 1:1,1:2,2:1")
    p.add_argument("--slack", type=float, default=_DEFAULT_SLACK)
    return ap


def _request(args) -> Request:
    if args.input:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                poly_text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {args.input}: {exc}")
    elif args.poly:
        poly_text = args.poly
    else:
        raise ParseError("one of --poly or --input is required")
    return Request(
        command=args.command,
        poly_text=poly_text,
        t0=_parse_rational(args.t0) if getattr(args, "t0", None) else None,
        order=getattr(args, "order", 0),
        puiseux=getattr(args, "puiseux", 1),
        directions=_parse_directions(args.directions)
        if getattr(args, "directions", None)
        else [],
        digits=args.digits,
        json_output=args.json,
        precision_bits=args.precision_bits,
        rtol=args.rtol,
        slack=getattr(args, "slack", _DEFAULT_SLACK),
    )


# -- serialization -----------------------------------------------------------


def _dec_str(fr: Fraction, places: int) -> str:
    scaled = fr * Fraction(10) ** places
    if scaled.denominator != 1:
        raise ValueError("not on the decimal grid")
    n = int(scaled)
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(places + 1, "0")
    ip, fp = s[:-places], s[-places:]
    fp = fp.rstrip("0")
    return f"{sign}{ip}.{fp}" if fp else f"{sign}{ip}"


def decimal_interval(value: RealAlgebraic, digits: int):
    """Decimal-exact isolating interval strings for an exact value."""
    m = digits
    for _ in range(10):
        r = value.refined(Fraction(1, 10 ** (m + 2)))
        if r.lo == r.hi and (r.lo * Fraction(10) ** m).denominator == 1:
            s = _dec_str(r.lo, m)
            return s, s
        lo = Fraction(math.floor(r.lo * 10**m), 10**m)
        hi = Fraction(math.ceil(r.hi * 10**m), 10**m)
        f = value.defining
        if lo < hi and f(lo) != 0 and f(hi) != 0 and count_roots(f, lo, hi) == 1:
            return _dec_str(lo, m), _dec_str(hi, m)
        m += 4
    raise PrecisionExhaustedError("could not build a decimal isolating interval")


def serialize_exact(value, digits: int):
    if value is INFINITY:
        return {"infinite": True}
    lo_s, hi_s = decimal_interval(value, digits)
    return {
        "defining": value.defining.int_coeffs(),
        "interval": [lo_s, hi_s],
        "approx": value.decimal(digits),
    }


def serialize_box(box):
    return {
        "re": [str(box.re_lo), str(box.re_hi)],
        "im": [str(box.im_lo), str(box.im_hi)],
    }


def serialize_candidates(cs: CandidateSet, digits: int):
    return {
        "polynomial": cs.D.int_coeffs(),
        "boxes": [serialize_box(b) for b in cs.boxes],
        "moduli": [
            {"value": serialize_exact(m, digits), "boxes": list(ix)}
            for m, ix in cs.moduli
        ],
    }


def serialize_cross_check(check):
    if check is None:
        return None
    return {
        "passed": check.passed,
        "hadamard": None if math.isinf(check.hadamard) else check.hadamard,
        "infinite_estimate": math.isinf(check.hadamard),
        "rtol": check.rtol,
        "relative_deviation": check.relative_deviation,
        "detail": check.detail,
        "ratio_convention": check.ratio_convention,
    }


def serialize_radius_result(req: Request, result: RadiusResult):
    body = {
        "command": "radius",
        "poly": req.poly_text.strip(),
        "t0": str(req.t0),
        "puiseux": result.puiseux_power,
        "status": result.status,
        "radius": None,
        "obstructing_box": None,
        "candidates": serialize_candidates(result.candidates, req.digits),
        "cross_check": serialize_cross_check(result.cross_check),
    }
    if result.status == "exact":
        body["radius"] = serialize_exact(result.value, req.digits)
        body["obstructing_box"] = serialize_box(result.obstructing_box)
    elif result.status == "infinite":
        body["radius"] = {"infinite": True}
    else:
        body["undecided"] = {
            "modulus": serialize_exact(result.undecided_modulus, req.digits),
            "hadamard": result.estimate.hadamard if result.estimate else None,
        }
    return body


# -- commands ----------------------------------------------------------------


def _engine_config(req: Request) -> EngineConfig:
    return EngineConfig(
        tracker=TrackerConfig(precision_bits=req.precision_bits),
        series_order=max(req.order, 8),
        rtol=req.rtol,
        digits=req.digits,
    )


def cmd_radius(req: Request):
    poly = parse_polynomial(req.poly_text)
    if poly.n != 1:
        raise ParseError("the radius command accepts a single series variable X")
    P = poly.to_bipoly()
    cfg = _engine_config(req)
    if req.puiseux != 1:
        result = puiseux_radius(P, req.puiseux, req.t0, cfg)
    else:
        result = exact_radius(validate_branch(P, req.t0), cfg)
    body = serialize_radius_result(req, result)
    if result.status == "undecided":
        code = EXIT_UNDECIDED
    elif result.cross_check is not None and not result.cross_check.passed:
        code = EXIT_CROSS_VALIDATION
    else:
        code = EXIT_OK
    return body, code


def cmd_expand(req: Request):
    poly = parse_polynomial(req.poly_text)
    if poly.n != 1:
        raise ParseError("the expand command accepts a single series variable X")
    b = validate_branch(poly.to_bipoly(), req.t0)
    s = hensel_lift(b, req.order)
    return (
        {
            "command": "expand",
            "poly": req.poly_text.strip(),
            "t0": str(req.t0),
            "order": req.order,
            "coefficients": [str(c) for c in s.coeffs],
        },
        EXIT_OK,
    )


def cmd_candidates(req: Request):
    poly = parse_polynomial(req.poly_text)
    if poly.n != 1:
        raise ParseError("the candidates command accepts a single series variable X")
    from .exactpoly import squarefree_part_T
    from .singularities import build_candidate_set

    P = squarefree_part_T(poly.to_bipoly())
    cs = build_candidate_set(P)
    return (
        {
            "command": "candidates",
            "poly": req.poly_text.strip(),
            **serialize_candidates(cs, req.digits),
        },
        EXIT_OK,
    )


def cmd_estimate(req: Request):
    poly = parse_polynomial(req.poly_text)
    if poly.n != 1:
        raise ParseError("the estimate command accepts a single series variable X")
    b = validate_branch(poly.to_bipoly(), req.t0)
    s = hensel_lift(b, max(req.order, 8))
    report = build_report(s)
    return (
        {
            "command": "estimate",
            "poly": req.poly_text.strip(),
            "t0": str(req.t0),
            "order": report.order,
            "window": list(report.window),
            "hadamard": None if report.infinite else report.hadamard,
            "infinite_estimate": report.infinite,
            "ratio": report.ratio,
            "ratio_convention": report.ratio_convention,
        },
        EXIT_OK,
    )


def cmd_domain(req: Request):
    poly = parse_polynomial(req.poly_text)
    s = multivariate_expand(poly, req.t0, max(req.order, 8))
    cfg = _engine_config(req)
    profiles = []
    records = []
    for d in req.directions:
        if len(d) != poly.n:
            raise ParseError(
                f"direction {':'.join(str(c) for c in d)} has {len(d)} components; "
                f"the polynomial has {poly.n} variables"
            )
        prof = make_profile(s, poly, req.t0, d, cfg)
        profiles.append(prof)
        upper = (
            {"infinite": True}
            if prof.rho_upper is INFINITY
            else serialize_exact(prof.rho_upper, req.digits)
        )
        records.append(
            {
                "direction": [str(c) for c in prof.direction],
                "estimate": None if math.isinf(prof.rho_estimate) else prof.rho_estimate,
                "infinite_estimate": math.isinf(prof.rho_estimate),
                "upper_bound": upper,
                "gap_flag": prof.gap_flag,
            }
        )
    convexity = None
    try:
        rep = log_convexity_check(profiles, req.slack)
        convexity = {
            "passed": rep.passed,
            "worst_violation": rep.worst_violation,
            "slack": rep.slack,
            "pairs_checked": rep.pairs_checked,
        }
    except InsufficientDataError as exc:
        convexity = {"skipped": str(exc)}
    return (
        {
            "command": "domain",
            "poly": req.poly_text.strip(),
            "t0": str(req.t0),
            "order": req.order,
            "directions": records,
            "log_convexity": convexity,
        },
        EXIT_OK,
    )


_COMMANDS = {
    "radius": cmd_radius,
    "expand": cmd_expand,
    "candidates": cmd_candidates,
    "estimate": cmd_estimate,
    "domain": cmd_domain,
}


# -- human rendering ---------------------------------------------------------


def _render_human(body: dict, out):
    def emit(key, value, indent=0):
        pad = "  " * indent
        if isinstance(value, dict):
            print(f"{pad}{key}:", file=out)
            for k, v in value.items():
                emit(k, v, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{pad}{key}:", file=out)
            for i, v in enumerate(value):
                emit(f"[{i}]", v, indent + 1)
        else:
            print(f"{pad}{key}: {value}", file=out)

    for k, v in body.items():
        emit(k, v)


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        req = _request(args)
        body, code = _COMMANDS[req.command](req)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotARootError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RamifiedBranchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RAMIFIED
    except CrossValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CROSS_VALIDATION
    except ObstructionUndecidedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except ConvradError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if req.json_output:
        json.dump(body, sys.stdout, indent=2)
        print()
    else:
        _render_human(body, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
