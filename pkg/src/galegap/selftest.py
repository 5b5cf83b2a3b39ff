"""Golden cases for Gale's example and the two auxiliary examples.

``run()`` evaluates every case and returns the failures; the CLI's
``selftest`` subcommand prints one line per case.
"""
from __future__ import annotations

from fractions import Fraction as F
from typing import Callable, List, NamedTuple

from . import excone, vsw
from .gale import (
    Attainment,
    CostSpec,
    DualPoint,
    Rhs,
    RhsCase,
    construct_dual_optimal,
    cost_eval,
    dual_feasible,
    dual_optimum_status,
    dual_sup_general,
    gale_cost,
    gap_closed_form,
    gap_report,
    hc_conjugate,
    icr_membership,
    rhs_classify,
)
from .lp_oracle import solve_trunc_dual, solve_trunc_primal, truncation_sweep
from .numeric import POS_INF, XReal
from .seqcore import TailSeq, liminf_ratio, seq_eval, seq_is_nonneg


class Case(NamedTuple):
    name: str
    compute: Callable[[], object]
    expected: object


def _gap_triple(report):
    return (report.phi, report.psi, report.gap)


def _cases() -> List[Case]:
    g = gale_cost()
    gb = g.beta
    x = XReal.of
    slow_growth = CostSpec(0, 0, TailSeq((F(1),), 2, 0, 0))
    return [
        Case("seq_eval gale k=0", lambda: seq_eval(gb, 0), F(1)),
        Case("seq_eval gale k=7", lambda: seq_eval(gb, 7), F(0)),
        Case("liminf_ratio gale", lambda: liminf_ratio(gb), x(0)),
        Case("seq_is_nonneg gale", lambda: seq_is_nonneg(gb), True),
        Case("cost_eval gale k=0", lambda: cost_eval(g, 0), F(1)),
        Case("cost_eval gale k=3", lambda: cost_eval(g, 3), F(0)),
        Case("rhs_classify (1,0)", lambda: rhs_classify(Rhs(1, 0)), RhsCase.AXIS),
        Case("icr_membership (2,1)", lambda: icr_membership(Rhs(2, 1)), True),
        Case("icr_membership (1,0)", lambda: icr_membership(Rhs(1, 0)), False),
        Case("dual_feasible gale (0,0)", lambda: dual_feasible(g, DualPoint(0, 0)), True),
        Case(
            "dual_feasible gale (1/2,-1)",
            lambda: dual_feasible(g, DualPoint(F(1, 2), -1)),
            False,
        ),
        Case("hc_conjugate gale (0,0)", lambda: hc_conjugate(g, DualPoint(0, 0)), x(0)),
        Case("hc_conjugate gale (1,0)", lambda: hc_conjugate(g, DualPoint(1, 0)), POS_INF),
        Case(
            "gap_closed_form gale (1,0)",
            lambda: _gap_triple(gap_closed_form(g, Rhs(1, 0))),
            (x(1), x(0), x(1)),
        ),
        Case(
            "construct_dual_optimal gale beta'=0",
            lambda: construct_dual_optimal(g, 0),
            DualPoint(0, 0),
        ),
        Case(
            "dual_optimum_status gale (1,0)",
            lambda: dual_optimum_status(g, Rhs(1, 0)),
            (Attainment.ATTAINED, DualPoint(0, 0)),
        ),
        Case(
            "dual_optimum_status 0<beta0<beta_bar",
            lambda: dual_optimum_status(slow_growth, Rhs(1, 0))[0],
            Attainment.ATTAINED,
        ),
        Case("dual_sup_general gale (1,0)", lambda: dual_sup_general(g, Rhs(1, 0)), x(0)),
        Case("dual_sup_general gale (2,1)", lambda: dual_sup_general(g, Rhs(2, 1)), x(0)),
        Case("gap_report gale (1,0)", lambda: gap_report(g, Rhs(1, 0)).gap, x(1)),
        Case(
            "gap_report gale (2,1)",
            lambda: _gap_triple(gap_report(g, Rhs(2, 1))),
            (x(0), x(0), x(0)),
        ),
        Case(
            "trunc primal gale (1,0) N=50",
            lambda: (lambda o: (o.value, o.witness))(solve_trunc_primal(g, Rhs(1, 0), 50)),
            (x(1), {0: F(1)}),
        ),
        Case(
            "trunc dual gale (1,0) N=5",
            lambda: (lambda o: (o.value, o.witness))(solve_trunc_dual(g, Rhs(1, 0), 5)),
            (x(1), DualPoint(1, -5)),
        ),
        Case(
            "sweep gale (1,0) dual column",
            lambda: [r.dual for r in truncation_sweep(g, Rhs(1, 0), [1, 10, 100])],
            [x(1)] * 3,
        ),
        Case("h0 (7,3,0)", lambda: excone.h0_closed(excone.Point3(7, 3, 0)), x(3)),
        Case("h0 (0,-5,-1)", lambda: excone.h0_closed(excone.Point3(0, -5, -1)), x(0)),
        Case("h0 (0,-1,0)", lambda: excone.h0_closed(excone.Point3(0, -1, 0)), POS_INF),
        Case("h0_witness (0,0,1)", lambda: excone.h0_witness(excone.Point3(0, 0, 1)), None),
        Case(
            "gap_exz (0,1,0)",
            lambda: excone.gap_exz(excone.Point3(0, 1, 0)),
            (x(1), x(0), x(1)),
        ),
        Case("in_C0 (1,0,0)", lambda: vsw.in_C0(vsw.EtaPoint(1, 0, 0)), True),
        Case("in_C0 (1/2,0,0)", lambda: vsw.in_C0(vsw.EtaPoint(F(1, 2), 0, 0)), False),
        Case("in_cl_Cprime (0,0,0)", lambda: vsw.in_cl_Cprime(vsw.EtaPoint(0, 0, 0)), True),
        Case(
            "L n C' vs L n cl C' at eta in {0,1/2,1,2}",
            lambda: [
                (li.in_L_Cprime(p), li.in_L_cl_Cprime(p))
                for li in [vsw.line_intersections()]
                for p in (vsw.EtaPoint(e, 0, 0) for e in (0, F(1, 2), 1, 2))
            ],
            [(False, True), (False, True), (True, True), (True, True)],
        ),
    ]


def run() -> List[tuple]:
    """Evaluate all cases; returns ``(name, passed, detail)`` triples."""
    results = []
    for case in _cases():
        try:
            got = case.compute()
        except Exception as exc:  # reported, not raised
            results.append((case.name, False, f"raised {exc!r}"))
            continue
        ok = got == case.expected
        detail = "" if ok else f"got {got!r}, expected {case.expected!r}"
        results.append((case.name, ok, detail))
    return results
