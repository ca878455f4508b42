"""Command-line interface.

Exit codes: 0 PASS, 1 FAIL, 2 invalid input, 3 cap exceeded or contour trouble.
"""

from __future__ import annotations

import argparse
import json
import sys

from .certify import certify_real_rooted, certify_unit_circle
from .construct import (
    EXACT_CAP,
    CapExceededError,
    Instance,
    RealRootedG,
    build_hn,
    exp_sum_build,
    lee_yang_poly,
    orthogonal_h2,
)
from .fuzz import FuzzConfig, replay, run_fuzz
from .hb_class import NotHermiteBiehlerError
from .numeric_core import TolerancePolicy, as_rational, rational_from_json, rational_to_float
from .numeric_roots import (
    Box,
    NotConvergedError,
    SubdivisionLimitError,
    ZeroNearContourError,
    count_zeros_box,
    find_roots,
)
from .polynomial import CPoly, RPoly, poly_from_json, poly_to_json, rpoly_from_json, rpoly_to_json

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _load(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _emit(obj, args):
    json.dump(obj, sys.stdout, indent=args.json_indent)
    sys.stdout.write("\n")


def _write_plot(path: str, rows):
    with open(path, "w") as fh:
        for x, y in rows:
            fh.write(f"{x!r} {y!r}\n")


def _plot_roots(args, p: CPoly):
    if args.plot_data and p.degree >= 1:
        rs = find_roots(p, args.policy)
        _write_plot(args.plot_data, [(z.real, z.imag) for z in rs.roots])


def _verdict_exit(passed: bool) -> int:
    return EXIT_PASS if passed else EXIT_FAIL


def _real(v) -> float:
    if isinstance(v, float):
        return v
    return rational_to_float(as_rational(v))


# -- subcommands -------------------------------------------------------------

def cmd_construct(args) -> int:
    inst = Instance.from_json(_load(args.instance))
    if inst.n > args.max_n:
        raise CapExceededError(f"n={inst.n} exceeds --max-n {args.max_n}")
    s = rational_from_json(args.s)
    h = build_hn(inst, s, method=args.method, cap=args.max_n)
    _emit(poly_to_json(h), args)
    return EXIT_PASS


def cmd_certify(args) -> int:
    p = poly_from_json(_load(args.polynomial))
    if not p.is_exact:
        raise InputError("certification demands an exact polynomial; float backend rejected")
    if p.is_zero():
        raise InputError("the zero polynomial has no zero locus to certify")
    cert = certify_real_rooted(p) if args.locus == "real" else certify_unit_circle(p)
    _plot_roots(args, p)
    _emit(cert.to_json(), args)
    return _verdict_exit(cert.passed)


def cmd_leeyang(args) -> int:
    data = _load(args.matrix)
    A = data["A"] if isinstance(data, dict) else data
    if not isinstance(A, list) or not A:
        raise InputError("matrix file must hold a nonempty list of rows")
    if len(A) > args.max_n:
        raise CapExceededError(f"n={len(A)} exceeds --max-n {args.max_n}")
    A = [[rational_from_json(v) for v in row] for row in A]
    p = lee_yang_poly(A)
    cert = certify_unit_circle(p)
    _plot_roots(args, p)
    _emit({"polynomial": poly_to_json(p), "certificate": cert.to_json()}, args)
    return _verdict_exit(cert.passed)


def cmd_ortho(args) -> int:
    data = _load(args.recurrence)
    family = [rpoly_from_json(data["p0"]), rpoly_from_json(data["p1"])]
    steps = []
    code = EXIT_PASS
    for k, triple in enumerate(data["triples"], start=2):
        A, B, C = (rational_from_json(v) for v in triple)
        if A <= 0 or C <= 0:
            raise InputError(f"step {k}: need A > 0 and C > 0, got A={A}, C={C}")
        p2, p1 = family[-2], family[-1]
        expected = RPoly([B, A]) * p1 - p2 * C
        try:
            h = orthogonal_h2(p2, p1, A, B, C)
        except NotHermiteBiehlerError as exc:
            steps.append({"step": k, "verdict": "FAIL", "notes": str(exc)})
            code = EXIT_FAIL
            break
        matches = h == expected.to_cpoly()
        cert = certify_real_rooted(h)
        ok = matches and cert.passed
        steps.append({
            "step": k,
            "polynomial": rpoly_to_json(expected),
            "matches_recurrence": matches,
            "certificate": cert.to_json(),
            "verdict": "PASS" if ok else "FAIL",
        })
        family.append(expected)
        if not ok:
            code = EXIT_FAIL
            break
    _emit({"steps": steps, "verdict": "PASS" if code == EXIT_PASS else "FAIL"}, args)
    return code


def _box(bounds) -> Box:
    if isinstance(bounds, dict):
        return Box(*(float(bounds[k]) for k in ("re_lo", "re_hi", "im_lo", "im_hi")))
    return Box(*(float(v) for v in bounds))


def cmd_expsum(args) -> int:
    data = _load(args.instance)
    G = RealRootedG.from_json(data["G"])
    a = [_real(v) for v in data["a"]]
    b = [_real(v) for v in data["b"]]
    if len(a) > args.max_n:
        raise CapExceededError(f"n={len(a)} exceeds --max-n {args.max_n}")
    e = exp_sum_build(G, a, b)
    if e.is_zero():
        raise InputError("all exponential terms cancel: the sum is the zero function")
    R, delta, Y = float(data.get("R", 10)), float(data.get("delta", 0.1)), float(data.get("Y", 3))
    boxes = data.get("boxes", {})
    regions = {
        "on_axis": _box(boxes.get("on_axis", (-R, R, -1.0, 1.0))),
        "upper": _box(boxes.get("upper", (-R, R, delta, Y))),
        "lower": _box(boxes.get("lower", (-R, R, -Y, -delta))),
    }
    counts = {name: count_zeros_box(e, box, args.policy) for name, box in regions.items()}
    passed = counts["upper"] == 0 and counts["lower"] == 0
    _emit({
        "terms": e.to_json()["terms"],
        "counts": counts,
        "verdict": "PASS" if passed else "FAIL",
    }, args)
    return _verdict_exit(passed)


def cmd_fuzz(args) -> int:
    if args.replay:
        report = replay(_load(args.replay), policy=args.policy)
    else:
        config = FuzzConfig(
            trials=args.trials,
            n_min=args.n_min,
            n_max=args.n_max,
            degree_max=args.degree_max,
            seed=args.seed,
            mode=args.mode,
            cap=args.max_n,
        )
        report = run_fuzz(config, args.policy)
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(report.to_json(), fh, indent=args.json_indent)
    if args.plot_data:
        _write_plot(args.plot_data, [
            (r["index"], r["residuals"].get("circle_max_dev", 0.0)) for r in report.records
        ])
    _emit(report.summary, args)
    return _verdict_exit(report.fail_count == 0)


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hbzeros", description=__doc__.splitlines()[0])
    ap.add_argument("--tol", type=float, default=1e-9, help="float root residual tolerance")
    ap.add_argument("--max-n", type=int, default=EXACT_CAP, help="cap on the number of factors")
    ap.add_argument("--seed", type=int, default=0, help="fuzz seed")
    ap.add_argument("--json-indent", type=int, default=None)
    ap.add_argument("--plot-data", metavar="FILE", help="write gnuplot-ready two-column data")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build H_n from an instance file")
    p.add_argument("instance")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--recursive", dest="method", action="store_const", const="recursive")
    g.add_argument("--subset", dest="method", action="store_const", const="subset")
    p.add_argument("--s", default="0", help="imaginary offset: builds H_n(i*s, z)")
    p.set_defaults(func=cmd_construct, method="recursive")

    p = sub.add_parser("certify", help="certify the zero locus of a polynomial")
    p.add_argument("polynomial")
    p.add_argument("--locus", choices=("real", "circle"), default="real")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("leeyang", help="Lee-Yang polynomial of a coupling matrix")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_leeyang)

    p = sub.add_parser("ortho", help="orthogonal family from a three-term recurrence")
    p.add_argument("recurrence")
    p.set_defaults(func=cmd_ortho)

    p = sub.add_parser("expsum", help="zero counts of an exponential sum in boxes")
    p.add_argument("instance")
    p.set_defaults(func=cmd_expsum)

    p = sub.add_parser("fuzz", help="randomized property run")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--degree-max", type=int, default=3)
    p.add_argument("--mode", choices=("exact", "float", "both"), default="both")
    p.add_argument("--report", metavar="FILE", help="write the full report JSON here")
    p.add_argument("--replay", metavar="FILE", help="re-run the trials recorded in a report or record file")
    p.set_defaults(func=cmd_fuzz)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.policy = TolerancePolicy(root_residual_tol=args.tol)
        return args.func(args)
    except (CapExceededError, ZeroNearContourError, SubdivisionLimitError, NotConvergedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, TypeError, KeyError, IndexError, ZeroDivisionError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        if isinstance(exc, KeyError):
            msg = f"missing field {msg!r}"
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
