"""Command-line front end.

Exit codes: 0 success, 1 selftest failure, 2 parse error, 3 violated
precondition.  When ``GALEGAP_REPORT_DIR`` is set, every report is also
written to ``<dir>/<subcommand>.<format>``.
"""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from . import excone, selftest, vsw
from .errors import ContractError, ParseError
from .gale import (
    DEFAULT_EPS,
    DualPoint,
    Enclosure,
    dual_feasible,
    dual_objective,
    dual_sup_general,
    gap_report,
    rhs_classify,
    RhsCase,
)
from .instance import emit, load_instance
from .lp_oracle import truncation_sweep
from .numeric import format_ratio, format_xreal, parse_ratio

REPORT_DIR_ENV = "GALEGAP_REPORT_DIR"
EXT = {"json": "json", "csv": "csv", "pretty": "txt"}


def _ns(text: str) -> List[int]:
    try:
        values = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    return values


def _ratio(text: str) -> Fraction:
    try:
        return parse_ratio(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _ratios(count):
    def parse(text: str):
        parts = text.split(",")
        if len(parts) != count:
            raise argparse.ArgumentTypeError(f"expected {count} comma-separated rationals")
        return [_ratio(p) for p in parts]

    return parse


def _grid(text: str):
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError("grid is LO:HI or LO:HI:STEP")
    lo, hi = int(parts[0]), int(parts[1])
    step = _ratio(parts[2]) if len(parts) == 3 else Fraction(1)
    if hi < lo or step <= 0:
        raise argparse.ArgumentTypeError("grid needs LO <= HI and STEP > 0")
    return lo, hi, step


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="galegap", description="Exact duality gaps for the perturbed Gale family."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, instance=True, default_format="pretty"):
        p = sub.add_parser(name, help=help_)
        if instance:
            p.add_argument("instance", help="instance file (key = value lines)")
        p.add_argument("--format", choices=sorted(EXT), default=default_format)
        return p

    p = add("gap", "primal value, dual value and gap")
    p.add_argument("--confirm", type=int, metavar="N", help="also solve the primal truncated at N")

    p = add("dual-check", "feasibility and optimality of a dual point")
    p.add_argument("--point", type=_ratios(2), metavar="Y1,Y2")
    p.add_argument("--eps", type=_ratio, default=DEFAULT_EPS)

    p = add("sweep", "finite truncation table", default_format="csv")
    p.add_argument("--ns", type=_ns, default=[1, 10, 100, 1000], metavar="N1,N2,...")

    p = add("excone", "value-function grid of the conic example", instance=False,
            default_format="csv")
    p.add_argument("--grid", type=_grid, default=(-3, 3, Fraction(1)), metavar="LO:HI[:STEP]")

    p = add("vsw", "set memberships of the Van Slyke-Wets sets", instance=False,
            default_format="csv")
    p.add_argument("--grid", type=_grid, default=(-1, 2, Fraction(1, 2)), metavar="LO:HI[:STEP]")
    p.add_argument("--point", type=_ratios(3), metavar="ETA,Y1,Y2",
                   help="report a single point with its C1 witness")

    sub.add_parser("selftest", help="run the built-in golden cases")
    return parser


def _cmd_gap(args) -> str:
    inst = load_instance(args.instance)
    report = gap_report(inst.cost, inst.rhs, confirm_n=args.confirm)
    return emit([report.to_record()], args.format)


def _cmd_dual_check(args) -> str:
    inst = load_instance(args.instance)
    if args.point is not None:
        y = DualPoint(*args.point)
    elif inst.point is not None:
        y = inst.point
    else:
        raise ContractError("dual point given", "pass --point or set y1/y2 in the instance")
    c, b = inst.cost, inst.rhs
    feasible = dual_feasible(c, y)
    objective = dual_objective(b, y)
    if rhs_classify(b) is RhsCase.INFEASIBLE:
        psi_text, optimal = "inf", False
    else:
        psi = dual_sup_general(c, b, eps=args.eps)
        if isinstance(psi, Enclosure):
            psi_text = f"[{format_ratio(psi.lo)}, {format_ratio(psi.hi)}]"
            optimal = feasible and objective == psi.lo == psi.hi
        else:
            psi_text = format_xreal(psi)
            optimal = feasible and psi == objective
    record = {
        "y1": format_ratio(y.y1),
        "y2": format_ratio(y.y2),
        "feasible": str(feasible).lower(),
        "objective": format_ratio(objective),
        "psi": psi_text,
        "optimal": str(optimal).lower(),
    }
    return emit([record], args.format)


def _cmd_sweep(args) -> str:
    inst = load_instance(args.instance)
    rows = truncation_sweep(inst.cost, inst.rhs, args.ns)
    records = [
        {"N": str(r.N), "primal": format_xreal(r.primal), "dual": format_xreal(r.dual)}
        for r in rows
    ]
    return emit(records, args.format)


def _cmd_excone(args) -> str:
    lo, hi, step = args.grid
    if args.format == "csv":
        return excone.grid_csv(excone.grid_points(lo, hi, step))
    records = []
    for y in excone.grid_points(lo, hi, step):
        phi, psi, gap = excone.gap_exz(y)
        records.append({
            "y1": format_ratio(y.y1), "y2": format_ratio(y.y2), "y3": format_ratio(y.y3),
            "phi": format_xreal(phi), "psi": format_xreal(psi), "gap": format_xreal(gap),
        })
    return emit(records, args.format)


def _vsw_record(p: vsw.EtaPoint, with_witness: bool) -> dict:
    record = {
        "eta": format_ratio(p.eta),
        "y1": format_ratio(p.y1),
        "y2": format_ratio(p.y2),
        "in_C0": str(vsw.in_C0(p)).lower(),
        "in_C1": str(vsw.in_C1(p)).lower(),
        "in_Cprime": str(vsw.in_Cprime(p)).lower(),
        "in_clCprime": str(vsw.in_cl_Cprime(p)).lower(),
    }
    if with_witness:
        wit = vsw.c1_witness(p) if vsw.in_C1(p) else ()
        record["witness"] = " ".join(f"{i}:{format_ratio(v)}" for i, v in wit)
    return record


def _cmd_vsw(args) -> str:
    if args.point is not None:
        return emit([_vsw_record(vsw.EtaPoint(*args.point), True)], args.format)
    lo, hi, step = args.grid
    if args.format == "csv":
        return vsw.grid_csv(vsw.grid_points(lo, hi, step))
    return emit([_vsw_record(p, False) for p in vsw.grid_points(lo, hi, step)], args.format)


COMMANDS = {
    "gap": _cmd_gap,
    "dual-check": _cmd_dual_check,
    "sweep": _cmd_sweep,
    "excone": _cmd_excone,
    "vsw": _cmd_vsw,
}


def _write_report(command: str, fmt: str, text: str) -> None:
    target = os.environ.get(REPORT_DIR_ENV)
    if target:
        path = Path(target)
        path.mkdir(parents=True, exist_ok=True)
        (path / f"{command}.{EXT[fmt]}").write_text(text, encoding="utf-8")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "selftest":
        results = selftest.run()
        for name, ok, detail in results:
            print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
        failed = sum(not ok for _, ok, _ in results)
        print(f"{len(results) - failed}/{len(results)} passed")
        return 1 if failed else 0
    try:
        text = COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ContractError as exc:
        print(f"contract violated: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(text)
    _write_report(args.command, args.format, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
