"""
Crepant CLI
Command-line interface for deciding, scanning and inspecting quotient singularity types
"""
import argparse
import csv
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Any, List, Optional

from rich.console import Console
from rich.logging import RichHandler

from .cfrac import convergents, dual_expansions, negreg_expand, regular_expand
from .cone2d import (PqCone, boundary_points, dual_cone, kleinian_vertices, pq_normal_form,
                     socius, socius_voronoi)
from .config import Settings, resolve_guard
from .criterion import (TwoParamType, Verdict, decide_geometric, decide_hilbert_basis, decide_one_param,
                        decide_two_param, one_param_type, two_param_types)
from .ehrhart import cohomology_dims, cohomology_dims_one_param, ehrhart_junior
from .errors import CrepantError, InconsistencyError, InvalidInputError
from .fan import build_join_fan, build_polygon, verify_fan
from .quotient import QuotientType, hilbcon_check, hilbert_basis_bruteforce
from .report import Report, format_rational

console = Console()
err_console = Console(stderr=True)
logger = logging.getLogger("crepant")

EXIT_CODES = {Verdict.RESOLVABLE: 0, Verdict.NOT_RESOLVABLE: 1, Verdict.UNKNOWN: 2}
SCAN_COLUMNS = ["r", "l", "alpha", "beta", "verdict", "branch", "q", "p", "kappa", "mu", "hilbcon", "agree"]


def setup_logging(settings: Settings, verbose: bool = False):
    level = "DEBUG" if verbose else settings.log_level
    handler = RichHandler(console=err_console, show_path=False)
    root = logging.getLogger("crepant")
    root.handlers = [handler]
    root.setLevel(level)


def _emit(report: Report, started: float):
    report.timing_ms = round((time.perf_counter() - started) * 1000, 3)
    console.print_json(data=report.to_dict())


def _quotient_from_args(args) -> QuotientType:
    if getattr(args, "type", None):
        return QuotientType.parse(args.type)
    if getattr(args, "weights", None):
        l, *weights = args.weights
        return QuotientType(l, tuple(weights))
    raise InvalidInputError("give a type with --type '1/l(a1,...,ar)' or --weights L A1 ... AR")


def _check_decide_flags(args):
    if args.type and args.weights:
        raise InvalidInputError("give either --type or --weights, not both")
    if args.type or args.weights:
        mixed = [flag for flag, value in (('--r', args.r), ('--l', args.l), ('--alpha', args.alpha),
                                          ('--beta', args.beta)) if value is not None]
        if args.one_param:
            mixed.append('--one-param')
        if mixed:
            raise InvalidInputError(f"--type/--weights cannot be combined with {', '.join(mixed)}")
        if args.oracle:
            raise InvalidInputError("--oracle needs a two-parameter type given by --r/--l/--alpha")


def _two_param_from_args(args) -> TwoParamType:
    if args.r is None or args.l is None:
        raise InvalidInputError("--r and --l are required")
    if getattr(args, "one_param", False):
        return one_param_type(args.r, args.l)
    if args.alpha is None:
        raise InvalidInputError("--alpha is required (or use --one-param)")
    beta = args.beta if args.beta is not None else args.l - (args.r - 2) - args.alpha
    return TwoParamType(args.r, args.l, args.alpha, beta)


def cmd_decide(args) -> int:
    """Decide whether a type admits crepant full resolutions"""
    started = time.perf_counter()
    extra: Dict[str, Any] = {}
    _check_decide_flags(args)

    if args.type or args.weights:
        t = _quotient_from_args(args)
        decision = decide_hilbert_basis(t, guard=args.guard)
        report = Report("decide", input=t.to_dict(), decision=decision.to_dict())
    else:
        tp = _two_param_from_args(args)
        decision = decide_one_param(tp.r, tp.l) if args.one_param else decide_two_param(tp)
        report = Report("decide", input=tp.to_dict(), decision=decision.to_dict())
        if decision.char is not None:
            report.char = decision.char.to_dict()
        if args.oracle:
            hilbcon = hilbcon_check(tp.quotient(), guard=args.guard)
            geometric = decide_geometric(tp)
            agree = hilbcon == decision.resolvable == geometric.resolvable
            extra = {"hilbcon": hilbcon, "geometric": geometric.verdict.value, "agree": agree}
            if not agree:
                report.extra = extra
                _emit(report, started)
                raise InconsistencyError(f"{tp.label}: criteria disagree ({extra})")
    report.extra = extra

    _emit(report, started)
    mark = "✓" if decision.resolvable else "✗"
    err_console.print(f"{mark} {decision.subject}: {decision.verdict.value} ({decision.branch.value})")
    return EXIT_CODES[decision.verdict]


def scan_row(r: int, l: int, alpha: int, beta: int, oracle: bool = False,
             guard: Optional[int] = None) -> Dict[str, Any]:
    """One scan row; module level so worker processes can pickle it"""
    t = TwoParamType(r, l, alpha, beta)
    d = decide_two_param(t)
    row: Dict[str, Any] = {
        "r": r, "l": l, "alpha": alpha, "beta": beta,
        "verdict": d.verdict.value, "branch": d.branch.value,
        "q": "", "p": "", "kappa": "",
        "mu": format_rational(d.mu),
        "hilbcon": "", "agree": "",
    }
    if d.char is not None:
        row.update(q=d.char.q, p=d.char.p, kappa=d.char.kappa)
    if oracle:
        hilbcon = hilbcon_check(t.quotient(), guard=guard)
        row["hilbcon"] = hilbcon
        row["agree"] = hilbcon == d.resolvable
    return row


def run_scan(r: int, lmax: int, oracle: bool = False, workers: int = 1, all_orders: bool = False,
             guard: Optional[int] = None) -> List[Dict[str, Any]]:
    """Rows for every two-parameter type up to lmax, sorted by (l, alpha, beta)"""
    jobs = [(t.r, t.l, t.alpha, t.beta) for t in two_param_types(r, lmax, all_orders=all_orders)]
    logger.info("scanning %d types (r=%d, l <= %d)", len(jobs), r, lmax)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(scan_row, *job, oracle, guard) for job in jobs]
            rows = [f.result() for f in futures]
    else:
        rows = [scan_row(*job, oracle, guard) for job in jobs]
    rows.sort(key=lambda row: (row["l"], row["alpha"], row["beta"]))
    return rows


def cmd_scan(args) -> int:
    """Scan all two-parameter types up to a bound"""
    workers = args.workers or args.settings.workers
    rows = run_scan(args.r, args.lmax, oracle=args.oracle, workers=workers,
                    all_orders=args.all_orders, guard=args.guard)

    if args.format == "json":
        console.print_json(data={"r": args.r, "lmax": args.lmax, "rows": rows})
    else:
        writer = csv.DictWriter(sys.stdout, fieldnames=SCAN_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)

    disagreements = [row for row in rows if row["agree"] is False]
    resolvable = sum(1 for row in rows if row["verdict"] == Verdict.RESOLVABLE.value)
    err_console.print(f"✓ {len(rows)} types, {resolvable} resolvable")
    if disagreements:
        err_console.print(f"✗ Error: {len(disagreements)} disagreements with the brute-force check")
        return InconsistencyError.exit_code
    return 0


def cmd_cfrac(args) -> int:
    """Show both continued fraction expansions of kappa/lambda"""
    started = time.perf_counter()
    reg = regular_expand(args.kappa, args.lam)
    neg = negreg_expand(args.kappa, args.lam)
    table = convergents(reg)
    extra: Dict[str, Any] = {
        "regular": list(reg.entries),
        "negreg": list(neg.entries),
        "convergents": [list(table.pair(i)) for i in range(-1, table.last_index + 1)],
    }
    if args.lam < args.kappa:
        dual = dual_expansions(args.kappa, args.lam)
        extra["dual"] = {"entries": list(dual.dual.entries), "case": dual.case.value}
    _emit(Report("cfrac", input={"kappa": args.kappa, "lambda": args.lam}, extra=extra), started)
    return 0


def cmd_cone(args) -> int:
    """Normal form, socius, dual and boundary data of a planar cone"""
    started = time.perf_counter()
    if args.n1 and args.n2:
        cone = pq_normal_form(args.n1, args.n2)
    elif args.q is not None:
        cone = PqCone.standard(args.p or 0, args.q)
    else:
        raise InvalidInputError("give --p/--q or --n1/--n2")

    extra: Dict[str, Any] = {"cone": cone.to_dict(), "dual": dual_cone(cone).to_dict()}
    if cone.p:
        extra["socius"] = socius(cone.p, cone.q)
        extra["socius_voronoi"] = socius_voronoi(cone.p, cone.q)
        pts = boundary_points(cone)
        verts = kleinian_vertices(cone)
        extra["boundary"] = [list(u) for u in pts.points]
        extra["vertices"] = [list(v) for v in verts.primal]
        extra["dual_vertices"] = [list(v) for v in verts.dual]
    _emit(Report("cone", input={"p": cone.p, "q": cone.q}, extra=extra), started)
    return 0


def cmd_hilbert(args) -> int:
    """Brute-force Hilbert basis of the positive orthant"""
    started = time.perf_counter()
    t = _quotient_from_args(args)
    basis = hilbert_basis_bruteforce(t, guard=args.guard)
    _emit(Report("hilbert", input=t.to_dict(), extra=basis.to_dict()), started)
    return 0


def cmd_fan(args) -> int:
    """Build the join fan of a resolvable two-parameter type"""
    started = time.perf_counter()
    t = _two_param_from_args(args)
    fan = build_join_fan(t)
    report = Report("fan", input=t.to_dict(), fan=fan.to_dict())
    report.extra["polygon"] = build_polygon(t).to_dict()
    exit_code = 0
    if args.verify:
        checks = verify_fan(t, fan)
        report.extra["verify"] = checks.to_dict()
        if not checks.passed:
            exit_code = InconsistencyError.exit_code
    _emit(report, started)
    return exit_code


def cmd_cohomology(args) -> int:
    """Ehrhart polynomial and cohomology dimensions of the crepant resolutions"""
    started = time.perf_counter()
    t = _two_param_from_args(args)
    report = Report("cohomology", input=t.to_dict())
    if args.one_param:
        report.delta = list(cohomology_dims_one_param(t.r, t.l).entries)
    else:
        report.ehrhart = ehrhart_junior(t).to_dict()
        report.delta = list(cohomology_dims(t).entries)
    _emit(report, started)
    return 0


def _add_two_param_args(parser):
    parser.add_argument('--r', type=int, help='Dimension r')
    parser.add_argument('--l', type=int, help='Group order l')
    parser.add_argument('--alpha', type=int, help='Weight alpha')
    parser.add_argument('--beta', type=int, help='Weight beta (default l - (r-2) - alpha)')
    parser.add_argument('--one-param', action='store_true', help='Use 1/l(1,...,1,l-(r-1))')


def _add_type_args(parser):
    parser.add_argument('--type', help="Type such as '1/11(1,1,3,6)'")
    parser.add_argument('--weights', type=int, nargs='+', metavar='N', help='L A1 ... AR')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crepant",
        description="Crepant resolutions of Gorenstein cyclic quotient singularities"
    )
    parser.add_argument('-v', '--verbose', action='store_true', help='Debug logging on stderr')
    parser.add_argument('--guard', type=int, help='Brute-force size guard (overrides CREPANT_GUARD)')
    subparsers = parser.add_subparsers(dest='command', help='Commands')

    decide_parser = subparsers.add_parser('decide', help='Decide resolvability')
    _add_two_param_args(decide_parser)
    _add_type_args(decide_parser)
    decide_parser.add_argument('--oracle', action='store_true', help='Cross-check with brute force')
    decide_parser.set_defaults(func=cmd_decide)

    scan_parser = subparsers.add_parser('scan', help='Scan two-parameter types')
    scan_parser.add_argument('--r', type=int, required=True, help='Dimension r')
    scan_parser.add_argument('--lmax', type=int, required=True, help='Largest group order')
    scan_parser.add_argument('--oracle', action='store_true', help='Cross-check each row with brute force')
    scan_parser.add_argument('--workers', type=int, help='Worker processes (default CREPANT_WORKERS)')
    scan_parser.add_argument('--all-orders', action='store_true', help='Include alpha > beta')
    scan_parser.add_argument('--format', default='csv', choices=['csv', 'json'], help='Output format')
    scan_parser.set_defaults(func=cmd_scan)

    cfrac_parser = subparsers.add_parser('cfrac', help='Continued fraction expansions')
    cfrac_parser.add_argument('kappa', type=int)
    cfrac_parser.add_argument('lam', type=int, metavar='lambda')
    cfrac_parser.set_defaults(func=cmd_cfrac)

    cone_parser = subparsers.add_parser('cone', help='Planar cone data')
    cone_parser.add_argument('--p', type=int, help='Parameter p')
    cone_parser.add_argument('--q', type=int, help='Multiplicity q')
    cone_parser.add_argument('--n1', type=int, nargs=2, help='First generator')
    cone_parser.add_argument('--n2', type=int, nargs=2, help='Second generator')
    cone_parser.set_defaults(func=cmd_cone)

    hilbert_parser = subparsers.add_parser('hilbert', help='Brute-force Hilbert basis')
    _add_type_args(hilbert_parser)
    hilbert_parser.set_defaults(func=cmd_hilbert)

    fan_parser = subparsers.add_parser('fan', help='Join fan of a resolvable type')
    _add_two_param_args(fan_parser)
    fan_parser.add_argument('--verify', action='store_true', help='Append the verification report')
    fan_parser.set_defaults(func=cmd_fan)

    cohomology_parser = subparsers.add_parser('cohomology', help='Cohomology dimensions')
    _add_two_param_args(cohomology_parser)
    cohomology_parser.set_defaults(func=cmd_cohomology)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, 'func', None):
        parser.print_help()
        return 0

    try:
        settings = Settings.from_env()
        setup_logging(settings, args.verbose)
        args.settings = settings
        args.guard = resolve_guard(args.guard, settings)
        return args.func(args)
    except CrepantError as e:
        err_console.print(f"[red]✗ Error:[/red] {e}")
        return e.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
