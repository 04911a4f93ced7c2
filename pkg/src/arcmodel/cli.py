"""Command-line front end.

Commands: check | model | lift | oracle | jets.  Machine-readable JSON goes
to --out or stdout; human-readable summaries go to stderr.  Exit codes:
0 success, 2 mathematical failure, 3 input error, 4 budget exceeded.
Output is byte-identical for identical inputs and seed; timings are only
emitted under --timings.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import formats
from .errors import BudgetError, InputError, MathError
from .fields import field_from_spec
from .geometry import (
    DEFAULT_MAX_TRIALS,
    DEFAULT_MINOR_CAP,
    check_arc,
    reduce_to_complete_intersection,
    select_minor,
)
from .jets import DEFAULT_ENUM_BUDGET, hs_universal_check, jet_presentation
from .lifting import (
    DEFAULT_ORACLE_BUDGET,
    lift_solution,
    oracle_bijection_check,
    truncate_to_solution,
)
from .model import build_model, model_diagnostics, required_precision
from .series import PrecisionInsufficientError
from .testrings import TestRing

EXIT_OK = 0
EXIT_MATH = 2
EXIT_INPUT = 3
EXIT_BUDGET = 4


def _field_option(value):
    if value is None:
        return None
    return field_from_spec(value)


def _stderr(*args):
    print(*args, file=sys.stderr)


def _emit(doc, out):
    text = formats.dump_json(doc, out)
    if out is None:
        print(text, end="")


def _load_inputs(args):
    field = _field_option(args.field)
    variety = formats.load_variety(args.variety, field_override=field)
    arc = formats.load_arc(args.arc, variety, precision_override=args.precision)
    return variety, arc


def _pipeline(args, variety, arc):
    """check -> (reduce) -> select minor; shared by several commands."""
    membership = check_arc(variety, arc)
    if not membership.passed:
        raise MathError(f"arc does not lie on the variety:\n{membership}")
    reduction = None
    minor = tuple(args.minor.split(",")) if getattr(args, "minor", None) else None
    if len(variety.equations) != variety.codim:
        if not getattr(args, "reduce", False):
            raise InputError(
                f"{len(variety.equations)} equations with codim"
                f" {variety.codim}: rerun with --reduce"
            )
        variety, sel, reduction = reduce_to_complete_intersection(
            variety,
            arc,
            seed=args.seed,
            max_trials=args.max_trials,
            cap=args.minor_cap,
        )
        if minor is not None:
            sel = select_minor(variety, arc, cap=args.minor_cap, forced=minor)
    else:
        sel = select_minor(variety, arc, cap=args.minor_cap, forced=minor)
    return variety, sel, reduction, membership


def cmd_check(args) -> int:
    variety, arc = _load_inputs(args)
    membership = check_arc(variety, arc)
    doc = {
        "command": "check",
        "membership": "PASS" if membership.passed else "FAIL",
        "orders": {
            eq: (o if o is not None else f">={arc.precision}")
            for eq, o in membership.orders
        },
        "t_precision": arc.precision,
    }
    _stderr(str(membership))
    if membership.passed:
        try:
            variety2, sel, reduction, _ = _pipeline(args, variety, arc)
        except MathError as exc:
            doc["minor"] = "none"
            doc["error"] = str(exc)
            _emit(doc, args.out)
            return EXIT_MATH
        doc["d"] = sel.d
        doc["eliminated"] = list(sel.eliminated)
        if reduction is not None:
            doc["reduction_trials"] = reduction.trials
        if sel.d == 0:
            doc["smooth"] = True
            _stderr("d = 0: smooth case, model is a point")
        else:
            _stderr(f"d = {sel.d}, eliminate {{{', '.join(sel.eliminated)}}}")
    _emit(doc, args.out)
    return EXIT_OK if membership.passed else EXIT_MATH


def cmd_model(args) -> int:
    variety, arc = _load_inputs(args)
    variety, sel, reduction, _ = _pipeline(args, variety, arc)
    model = build_model(variety, arc, sel, args.e)
    diag = model_diagnostics(model)
    doc = formats.model_to_doc(model, diag)
    doc["command"] = "model"
    if reduction is not None:
        doc["reduction"] = {
            "trials": reduction.trials,
            "seed": args.seed,
            "coefficients": [list(row) for row in reduction.coefficients],
        }
    nu, nq = model.counts()
    if model.is_smooth_point:
        _stderr("d = 0: smooth case, the finite model is a single point")
    else:
        _stderr(
            f"model built: d={model.d} e={model.e} unknowns={nu} equations={nq}"
            f" tangent_dim={diag.tangent_dim}"
        )
    _emit(doc, args.out)
    return EXIT_OK


def cmd_lift(args) -> int:
    model = formats.load_model(args.model)
    ring, sol, xi = formats.load_solution(args.solution, model)
    sol.validate(model)
    precision = args.precision or required_precision(model.d, model.e) + 4
    deformation = lift_solution(model, sol, xi, precision)
    doc = formats.deformation_to_doc(ring, deformation)
    doc["command"] = "lift"
    doc["verified"] = True  # lift_solution validates p = 0 mod t^N
    _stderr(f"lift verified through t^{precision}")
    _emit(doc, args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    variety, arc = _load_inputs(args)
    if not variety.field.is_finite:
        raise InputError("the oracle needs a prime field; pass --field p=<prime>")
    variety, sel, reduction, _ = _pipeline(args, variety, arc)
    model = build_model(variety, arc, sel, args.e)
    if model.is_smooth_point:
        doc = {
            "command": "oracle",
            "smooth_point": True,
            "bijection": "PASS",
            "note": "d = 0: the model is a point; nothing to certify",
        }
        _stderr("smooth point: oracle trivially PASS")
        _emit(doc, args.out)
        return EXIT_OK
    ring = formats.load_test_ring(args.test_ring, variety.field)
    precision = args.precision or arc.precision
    start = time.monotonic()
    report = oracle_bijection_check(
        model, ring, precision, budget=args.budget, mode=args.mode
    )
    doc = {"command": "oracle"}
    doc.update(report.as_dict())
    hs_ring = (
        formats.load_test_ring(args.hs_ring, variety.field)
        if args.hs_ring
        else TestRing(variety.field, (), 1)
    )
    hs_reports = []
    for order in range(0, args.jet_order + 1):
        hs = hs_universal_check(variety, order, hs_ring, budget=args.budget)
        hs_reports.append(
            {
                "order": order,
                "presentation_points": hs.presentation_points,
                "substitution_points": hs.substitution_points,
                "bijection": "PASS" if hs.bijection else "FAIL",
            }
        )
        if not hs.bijection:
            raise MathError(f"universal-property check failed at order {order}")
    doc["hs_checks"] = hs_reports
    if args.timings:
        doc["elapsed_ms"] = int((time.monotonic() - start) * 1000)
    _stderr(
        f"oracle: {report.model_solutions} solutions x {ring.field.p}^{report.free_dims}"
        f" free parts = {report.jet_points_extendable} extendable jet points"
        f" [{report.mode}]"
    )
    _emit(doc, args.out)
    return EXIT_OK


def cmd_jets(args) -> int:
    field = _field_option(args.field)
    variety = formats.load_variety(args.variety, field_override=field)
    pres = jet_presentation(variety, args.order)
    doc = {
        "command": "jets",
        "field": variety.field.spec(),
        "order": pres.order,
        "variables": list(pres.variables()),
        "generators": [
            [str(g) for g in gens] for gens in pres.generators
        ],
    }
    _stderr(
        f"order-{pres.order} jets: {len(pres.variables())} variables,"
        f" {sum(len(g) for g in pres.generators)} generators"
    )
    _emit(doc, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arcmodel",
        description="finite models of formal neighborhoods in arc spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, arc_file=True):
        p.add_argument("variety", help="variety JSON file")
        if arc_file:
            p.add_argument("arc", help="arc JSON file")
        p.add_argument("--field", help="rational | p=<prime> (overrides the file)")
        p.add_argument("--precision", type=int, help="t-precision override")
        p.add_argument("--out", help="write the JSON report to this path")

    def pipeline_flags(p):
        p.add_argument("--e", type=int, default=1, help="congruence exponent (default 1)")
        p.add_argument("--minor", help="comma-separated eliminated variables")
        p.add_argument("--reduce", action="store_true", help="allow random reduction to a complete intersection")
        p.add_argument("--seed", type=int, default=0, help="seed for the reduction draw")
        p.add_argument("--max-trials", type=int, default=DEFAULT_MAX_TRIALS)
        p.add_argument("--minor-cap", type=int, default=DEFAULT_MINOR_CAP)

    p = sub.add_parser("check", help="arc membership and minor selection")
    common(p)
    pipeline_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("model", help="build the finite model")
    common(p)
    pipeline_flags(p)
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("lift", help="lift a model solution to a deformation")
    p.add_argument("model", help="model JSON file (from the model command)")
    p.add_argument("solution", help="solution JSON file")
    p.add_argument("--precision", type=int, help="target t-precision")
    p.add_argument("--out", help="write the deformation to this path")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("oracle", help="bijection and universal-property certificates")
    common(p)
    pipeline_flags(p)
    p.add_argument(
        "--test-ring",
        default='{"generators": ["e1"], "nilpotency": 2}',
        help="test ring spec: inline JSON or a file path",
    )
    p.add_argument(
        "--hs-ring",
        default=None,
        help="test ring for the universal-property checks (default: the bare field)",
    )
    p.add_argument("--budget", type=int, default=DEFAULT_ORACLE_BUDGET)
    p.add_argument("--mode", choices=["auto", "enumerate", "linear"], default="auto")
    p.add_argument("--jet-order", type=int, default=1, help="max order for universal checks")
    p.add_argument("--timings", action="store_true", help="include elapsed_ms in the report")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("jets", help="emit a jet presentation")
    p.add_argument("variety", help="variety JSON file")
    p.add_argument("--field", help="rational | p=<prime>")
    p.add_argument("--order", type=int, required=True, help="jet order m")
    p.add_argument("--out", help="write the presentation to this path")
    p.set_defaults(func=cmd_jets)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except PrecisionInsufficientError as exc:
        _stderr(f"input error: {exc}")
        return EXIT_INPUT
    except InputError as exc:
        _stderr(f"input error: {exc}")
        return EXIT_INPUT
    except BudgetError as exc:
        _stderr(f"budget exceeded: {exc}")
        return EXIT_BUDGET
    except MathError as exc:
        _stderr(f"failure: {exc}")
        return EXIT_MATH


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
