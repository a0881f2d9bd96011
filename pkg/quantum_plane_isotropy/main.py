"""
Main entry point for quantum-plane-isotropy.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from . import __version__
from .config import configure, get_settings
from .errors import ParseError, QPIError
from .geometry import intersection_report
from .isotropy import distinguish, isotropy_group, realize_group
from .models import CheckRow, GroupReport, TorsionPoint
from .parsing import (derivation_from_document, load_document, parse_characters, parse_poly,
                      parse_qspec, parse_scalar)
from .qplane import make_derivation, make_derivation_from_images
from .selfcheck import DEFAULT_BOUND, SweepOptions, run_selfcheck
from .torus import enumerate_group, solve_constraints

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"
MAX_LISTED_ELEMENTS = 64


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--json",
        action="store_true",
        help="Emit the report as JSON"
    )
    parser.add_argument(
        "--max-conductor",
        type=int,
        default=None,
        help="Largest cyclotomic conductor allowed (overrides QPI_MAX_CONDUCTOR)"
    )
    parser.add_argument(
        "-v", "--verbose",
        action="count",
        default=0,
        help="Log progress to stderr (-vv for debug output)"
    )


def _add_q_argument(parser: argparse.ArgumentParser, flag: str = "--q", default: str = "transcendental") -> None:
    parser.add_argument(
        flag,
        default=default,
        metavar="SPEC",
        help="q specification: 'transcendental' or 'root:N' (also 'root N' when quoted)"
    )


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per computation."""
    parser = argparse.ArgumentParser(
        prog="qpi",
        description="quantum-plane-isotropy: isotropy groups of derivations of the quantum plane"
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"quantum-plane-isotropy {__version__}"
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    isotropy = subparsers.add_parser("isotropy", help="Isotropy group of a derivation")
    _add_common_arguments(isotropy)
    _add_q_argument(isotropy)
    isotropy.add_argument("--w", help="Inner part w of ad_w + a*D_x + b*D_y")
    isotropy.add_argument("--a", default="0", help="Scalar coefficient of D_x")
    isotropy.add_argument("--b", default="0", help="Scalar coefficient of D_y")
    isotropy.add_argument("--dx", help="Image of x")
    isotropy.add_argument("--dy", help="Image of y")
    isotropy.add_argument("--input", help="JSON document (path or inline) describing the derivation")

    realize = subparsers.add_parser("realize", help="Realize Z_n1 + Z_n2 as an isotropy group")
    _add_common_arguments(realize)
    _add_q_argument(realize)
    realize.add_argument("n1", type=int)
    realize.add_argument("n2", type=int)
    realize.add_argument(
        "--search",
        type=int,
        default=0,
        metavar="BOUND",
        help="Search binomial witnesses up to this exponent when no closed answer exists"
    )

    intersect = subparsers.add_parser("intersect", help="Intersect x^a y^b = 1 with x^c y^d = 1")
    _add_common_arguments(intersect)
    for name in ("a", "b", "c", "d"):
        intersect.add_argument(name, type=int)

    solve = subparsers.add_parser("solve", help="Solve a character system µ1^m µ2^n = 1")
    _add_common_arguments(solve)
    solve.add_argument("system", nargs="?", help="JSON list of [m, n] pairs")
    solve.add_argument("--input", help="JSON file or inline list of [m, n] pairs")

    distinguish_parser = subparsers.add_parser("distinguish", help="Group telling two values of q apart")
    _add_common_arguments(distinguish_parser)
    _add_q_argument(distinguish_parser)
    _add_q_argument(distinguish_parser, "--q2", default="transcendental")

    selfcheck = subparsers.add_parser("selfcheck", help="Run the built-in verification sweeps")
    _add_common_arguments(selfcheck)
    selfcheck.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="Exponent bound for the quadruple sweep")
    selfcheck.add_argument("--samples", type=int, default=None, help="Random instances per sampled check")
    selfcheck.add_argument("--workers", type=int, default=None, help="Processes for the quadruple sweep")
    selfcheck.add_argument("--seed", type=int, default=0, help="Random seed")
    selfcheck.add_argument("--only", type=int, nargs="+", default=None, metavar="N", help="Run only these checks")
    return parser


def _group_lines(report: GroupReport) -> List[str]:
    lines = [
        f"classification: {report.classification.value}",
        f"structure: {report.structure_text()}",
        f"torus rank: {report.torus_rank}",
        f"invariants: {report.torsion_invariants[0]}, {report.torsion_invariants[1]}",
    ]
    if report.order is not None:
        lines.append(f"order: {report.order}")
    if report.primitive_character is not None:
        lines.append(f"primitive character: {report.primitive_character}")
    if report.generators:
        lines.append("generators:")
        lines.extend(f"  {g}" for g in report.generators)
    elements = _elements(report)
    if elements is not None:
        lines.append("elements:")
        lines.extend(f"  {p}" for p in elements)
    return lines


def _elements(report: GroupReport) -> Optional[List[TorsionPoint]]:
    """All points of a finite group, or None when infinite or too large to list."""
    if not report.is_finite or report.order > MAX_LISTED_ELEMENTS:
        return None
    return enumerate_group(report.generators)


def _report_data(report: GroupReport) -> Dict[str, Any]:
    data = report.to_dict()
    elements = _elements(report)
    if elements is not None:
        data['elements'] = [p.to_dict() for p in elements]
    return data


def _run_isotropy(args: argparse.Namespace) -> Dict[str, Any]:
    if args.input:
        spec, delta = derivation_from_document(load_document(args.input))
    else:
        spec = parse_qspec(args.q)
        if args.w is not None and (args.dx is not None or args.dy is not None):
            raise ParseError("give either --w or --dx/--dy, not both")
        if args.w is not None:
            delta = make_derivation(parse_poly(args.w, spec), parse_scalar(args.a, spec),
                                    parse_scalar(args.b, spec), spec)
        elif args.dx is not None or args.dy is not None:
            delta = make_derivation_from_images(parse_poly(args.dx or "0", spec),
                                                parse_poly(args.dy or "0", spec), spec)
        else:
            raise ParseError("isotropy needs --w, --dx/--dy or --input")
    result = isotropy_group(delta, spec)
    lines = [
        f"q: {spec}",
        f"derivation: d(x) = {delta.dx}, d(y) = {delta.dy}",
        f"path: {result.path.value}",
        f"constraints: {' '.join(map(str, result.constraints)) or 'none'}",
    ] + _group_lines(result.report)
    data = result.to_dict()
    data['report'] = _report_data(result.report)
    data['q'] = spec.to_dict()
    data['dx'] = delta.dx.to_text()
    data['dy'] = delta.dy.to_text()
    return {'data': data, 'lines': lines, 'exit': 0}


def _run_realize(args: argparse.Namespace) -> Dict[str, Any]:
    spec = parse_qspec(args.q)
    verdict = realize_group(args.n1, args.n2, spec, search_bound=args.search)
    lines = [
        f"q: {spec}",
        f"group: Z{args.n1} + Z{args.n2}",
        f"status: {verdict.status.value}",
        f"scope: {verdict.scope}",
        f"reason: {verdict.reason}",
    ]
    if verdict.witness is not None:
        lines.append(f"witness: w = {verdict.witness.to_text()}")
    if verdict.group is not None:
        lines.append(f"verified: {verdict.group.structure_text()}")
    if verdict.central_witness is not None:
        lines.append(f"central witness: d(x) = {verdict.central_witness.dx}, d(y) = {verdict.central_witness.dy}"
                     f" (outside scope)")
    data = verdict.to_dict()
    data['q'] = spec.to_dict()
    data['n1'], data['n2'] = args.n1, args.n2
    return {'data': data, 'lines': lines, 'exit': 0}


def _run_intersect(args: argparse.Namespace) -> Dict[str, Any]:
    report = intersection_report(args.a, args.b, args.c, args.d)
    ledger = report.ledger
    branches = report.branches
    lines = [
        f"curves: x^{args.a}*y^{args.b} = 1, x^{args.c}*y^{args.d} = 1",
        f"degrees: {report.pair.degrees[0]}, {report.pair.degrees[1]}",
        f"total: {ledger.total}",
        f"affine: {ledger.affine_count}",
        f"at (0:1:0): {ledger.mult_at_010}",
        f"at (1:0:0): {ledger.mult_at_100}",
        f"branches: {branches.d1} x {branches.d2} over {tuple(branches.primed)}, "
        f"each meeting with {branches.per_branch[0]} and {branches.per_branch[1]}",
        f"affine group: {report.group.structure_text()}",
        "points:",
    ] + [f"  {p}" for p in report.points]
    return {'data': report.to_dict(), 'lines': lines, 'exit': 0}


def _run_solve(args: argparse.Namespace) -> Dict[str, Any]:
    if args.input:
        chars = parse_characters(load_document(args.input))
    elif args.system:
        chars = parse_characters(args.system)
    else:
        raise ParseError("solve needs a character list or --input")
    report = solve_constraints(chars)
    return {'data': _report_data(report), 'lines': _group_lines(report), 'exit': 0}


def _run_distinguish(args: argparse.Namespace) -> Dict[str, Any]:
    first, second = parse_qspec(args.q), parse_qspec(args.q2)
    distinction = distinguish(first, second)
    if distinction.n is None:
        lines = [f"no group of the form Z_n + Z_n separates {first} from {second}"]
    else:
        lines = [
            f"n: {distinction.n}",
            f"Z{distinction.n} + Z{distinction.n} under {first}: {distinction.first_verdict.status.value}",
            f"Z{distinction.n} + Z{distinction.n} under {second}: {distinction.second_verdict.status.value}",
        ]
    return {'data': distinction.to_dict(), 'lines': lines, 'exit': 0}


def _run_selfcheck(args: argparse.Namespace) -> Dict[str, Any]:
    if args.workers is not None:
        configure(workers=args.workers)
    options = SweepOptions(bound=args.bound, samples=args.samples, workers=get_settings().workers, seed=args.seed)
    rows: List[CheckRow] = run_selfcheck(options, criteria=args.only)
    lines = [
        f"{'PASS' if row.passed else 'FAIL'}  {row.criterion}  {row.name} ({row.checked} cases)"
        + (f": {row.detail}" if row.detail else "")
        for row in rows
    ]
    failed = any(not row.passed for row in rows)
    return {'data': [row.to_dict() for row in rows], 'lines': lines, 'exit': 5 if failed else 0}


COMMANDS = {
    "isotropy": _run_isotropy,
    "realize": _run_realize,
    "intersect": _run_intersect,
    "solve": _run_solve,
    "distinguish": _run_distinguish,
    "selfcheck": _run_selfcheck,
}


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger("quantum_plane_isotropy").setLevel(level)


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    try:
        if args.max_conductor is not None:
            configure(max_conductor=args.max_conductor)
        outcome = COMMANDS[args.command](args)
    except QPIError as e:
        logger.debug("%s failed", args.command, exc_info=True)
        if args.json:
            print(json.dumps({'error': {'category': e.category, 'message': str(e)}}))
        else:
            print(f"error[{e.category}]: {e}", file=sys.stderr)
        return e.exit_code

    if args.json:
        print(json.dumps(outcome['data'], indent=2))
    else:
        print("\n".join(outcome['lines']))
    return outcome['exit']


if __name__ == "__main__":
    sys.exit(main())
