"""Exact duality-gap analysis for the perturbed Gale family of semi-infinite LPs."""
from .errors import ContractError, GaleGapError, ParseError, UndefinedOperation
from .gale import (
    Attainment,
    CostSpec,
    DualPoint,
    Enclosure,
    GapReport,
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
from .numeric import NEG_INF, POS_INF, XReal, isqrt, parse_ratio, parse_xreal
from .seqcore import TailSeq, inf_shifted, liminf_ratio, seq_eval, seq_is_nonneg

__version__ = "0.1.0"
