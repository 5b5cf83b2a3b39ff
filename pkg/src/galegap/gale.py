"""The perturbed Gale family of semi-infinite linear programs.

Primal::

    minimize   sum_k c_k x_k
    subject to x_0 + sum_{k>=1} k x_k = b1,  sum_{k>=1} x_k = b2,  x >= 0,

over finitely supported ``x``.  Dual::

    maximize   b1 y1 + b2 y2
    subject to y1 <= c_0,  k y1 + y2 <= c_k  (k = 1, 2, ...).

The cost is always given through its decomposition
``c_0 = u + beta_0`` and ``c_k = k u + v + beta_k`` with ``beta >= 0``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Union

from .errors import ContractError
from .numeric import (
    POS_INF,
    ZERO,
    XReal,
    as_ratio,
    format_ratio,
    format_xreal,
)
from .seqcore import (
    TailSeq,
    inf_shifted,
    liminf_ratio,
    seq_eval,
    seq_is_nonneg,
    shifted_minimizers,
)

__all__ = [
    "CostSpec",
    "Rhs",
    "DualPoint",
    "RhsCase",
    "Attainment",
    "Enclosure",
    "GapReport",
    "DEFAULT_EPS",
    "gale_cost",
    "cost_eval",
    "rhs_classify",
    "icr_membership",
    "dual_feasible",
    "dual_objective",
    "hc_conjugate",
    "gap_closed_form",
    "construct_dual_optimal",
    "dual_optimum_status",
    "dual_sup_general",
    "gap_report",
]

DEFAULT_EPS = Fraction(1, 10**9)


@dataclass(frozen=True)
class CostSpec:
    u: Fraction
    v: Fraction
    beta: TailSeq

    def __post_init__(self):
        object.__setattr__(self, "u", as_ratio(self.u))
        object.__setattr__(self, "v", as_ratio(self.v))
        if not seq_is_nonneg(self.beta):
            raise ContractError("beta >= 0", f"sequence {self.beta} has a negative entry")

    @property
    def beta0(self) -> Fraction:
        return seq_eval(self.beta, 0)

    @property
    def c0(self) -> Fraction:
        return self.u + self.beta0

    def __getitem__(self, k: int) -> Fraction:
        return cost_eval(self, k)


@dataclass(frozen=True)
class Rhs:
    b1: Fraction
    b2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "b1", as_ratio(self.b1))
        object.__setattr__(self, "b2", as_ratio(self.b2))


@dataclass(frozen=True)
class DualPoint:
    y1: Fraction
    y2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "y1", as_ratio(self.y1))
        object.__setattr__(self, "y2", as_ratio(self.y2))

    def __iter__(self):
        return iter((self.y1, self.y2))


class RhsCase(enum.Enum):
    INFEASIBLE = "infeasible"
    ORIGIN = "origin"
    AXIS = "axis"
    EDGE = "edge"
    INTERIOR = "interior"


class Attainment(enum.Enum):
    ATTAINED = "attained"
    NOT_ATTAINED = "not-attained"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Enclosure:
    """Certified bounds ``lo <= value <= hi`` on a dual optimal value."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi


@dataclass(frozen=True)
class GapReport:
    phi: XReal
    psi: XReal
    gap: XReal
    beta_bar: XReal
    u_bar: XReal
    attainment: Attainment
    rhs_case: RhsCase
    witness: Optional[DualPoint] = None
    gap_defined: bool = True
    oracle_primal: Optional[XReal] = field(default=None, compare=False)

    FIELDS = (
        "rhs_case",
        "phi",
        "psi",
        "gap",
        "gap_defined",
        "beta_bar",
        "u_bar",
        "attainment",
        "witness_y1",
        "witness_y2",
    )

    def to_record(self) -> dict:
        """Flat string mapping with a fixed key order."""
        w = self.witness
        record = {
            "rhs_case": self.rhs_case.value,
            "phi": format_xreal(self.phi),
            "psi": format_xreal(self.psi),
            "gap": format_xreal(self.gap),
            "gap_defined": "true" if self.gap_defined else "false",
            "beta_bar": format_xreal(self.beta_bar),
            "u_bar": format_xreal(self.u_bar),
            "attainment": self.attainment.value,
            "witness_y1": format_ratio(w.y1) if w else "",
            "witness_y2": format_ratio(w.y2) if w else "",
        }
        if self.oracle_primal is not None:
            record["oracle_primal"] = format_xreal(self.oracle_primal)
        return record


def gale_cost() -> CostSpec:
    """``c = e_0``: u = v = 0, beta_0 = 1 and beta_k = 0 afterwards."""
    return CostSpec(0, 0, TailSeq((Fraction(1),), 0, 0, 0))


def cost_eval(c: CostSpec, k: int) -> Fraction:
    if k == 0:
        return c.u + seq_eval(c.beta, 0)
    return k * c.u + c.v + seq_eval(c.beta, k)


def rhs_classify(b: Rhs) -> RhsCase:
    b1, b2 = b.b1, b.b2
    if not b1 >= b2 >= 0:
        return RhsCase.INFEASIBLE
    if b1 == 0:
        return RhsCase.ORIGIN
    if b2 == 0:
        return RhsCase.AXIS
    if b1 == b2:
        return RhsCase.EDGE
    return RhsCase.INTERIOR


def icr_membership(b: Rhs) -> bool:
    """Whether ``b`` lies in the algebraic interior of ``{b1 >= b2 >= 0}``."""
    return rhs_classify(b) is RhsCase.INTERIOR


def dual_feasible(c: CostSpec, y: DualPoint) -> bool:
    if y.y1 > c.c0:
        return False
    bound = c.v + inf_shifted(c.beta, y.y1 - c.u, 1)
    return XReal.of(y.y2) <= bound


def dual_objective(b: Rhs, y: DualPoint) -> Fraction:
    return b.b1 * y.y1 + b.b2 * y.y2


def hc_conjugate(c: CostSpec, y: DualPoint) -> XReal:
    """Conjugate of the value function ``b -> val(P_{c,b})`` at ``y``.

    It is the indicator of the dual feasible set; with the zero cone on the
    constraint side no sign condition on ``y`` enters.
    """
    return ZERO if dual_feasible(c, y) else POS_INF


def _require_axis(b: Rhs, op: str) -> None:
    case = rhs_classify(b)
    if case is not RhsCase.AXIS:
        raise ContractError(
            "b2 = 0 < b1",
            f"{op} needs an axis right-hand side, got {case.value}; use gap_report",
        )


def construct_dual_optimal(c: CostSpec, beta_prime) -> DualPoint:
    """Dual point ``(u + beta', v'')`` with the largest admissible ``v'' <= v``."""
    t = as_ratio(beta_prime)
    if not 0 <= t <= c.beta0:
        raise ContractError(
            "0 <= beta' <= beta_0", f"beta'={format_ratio(t)}, beta_0={format_ratio(c.beta0)}"
        )
    slack = inf_shifted(c.beta, t, 1)
    if not slack.is_finite:
        raise ContractError(
            "inf{beta_k - beta' k} finite",
            f"beta'={format_ratio(t)} exceeds the admissible range",
        )
    return DualPoint(c.u + t, min(c.v, c.v + slack.finite()))


def dual_optimum_status(c: CostSpec, b: Rhs):
    """Return ``(Attainment, witness or None)`` for an axis right-hand side."""
    _require_axis(b, "dual_optimum_status")
    beta0 = c.beta0
    beta_bar = liminf_ratio(c.beta).finite()
    if min(beta0, beta_bar) == 0:
        return Attainment.ATTAINED, DualPoint(c.u, c.v)
    if beta0 < beta_bar:
        return Attainment.ATTAINED, construct_dual_optimal(c, beta0)
    if inf_shifted(c.beta, beta_bar, 1).is_finite:
        return Attainment.ATTAINED, construct_dual_optimal(c, beta_bar)
    return Attainment.NOT_ATTAINED, None


def gap_closed_form(c: CostSpec, b: Rhs) -> GapReport:
    _require_axis(b, "gap_closed_form")
    b1 = b.b1
    beta0 = c.beta0
    beta_bar = liminf_ratio(c.beta)
    u_bar = c.u + min(beta0, beta_bar.finite())
    status, witness = dual_optimum_status(c, b)
    return GapReport(
        phi=XReal.of(b1 * c.c0),
        psi=XReal.of(b1 * u_bar),
        gap=XReal.of(b1 * max(Fraction(0), beta0 - beta_bar.finite())),
        beta_bar=beta_bar,
        u_bar=XReal.of(u_bar),
        attainment=status,
        rhs_case=RhsCase.AXIS,
        witness=witness,
    )


# --- dual value off the axis -------------------------------------------------


def _finite_dual_lp(c: CostSpec, b: Rhs):
    """Exact optimum for a linear tail (s = 0) by vertex enumeration.

    For y1 < u + a the tail constraints are dominated by the first tail
    index; at y1 = u + a all of them coincide.  So the rows below describe
    the full feasible set.
    """
    kmax = max(c.beta.K, 1)
    rows = [((Fraction(1), Fraction(0)), c.c0)]
    rows += [((Fraction(k), Fraction(1)), cost_eval(c, k)) for k in range(1, kmax + 1)]
    rows.append(((Fraction(1), Fraction(0)), c.u + c.beta.a))

    best = None
    for ((p1, p2), r1), ((q1, q2), r2) in combinations(rows, 2):
        det = p1 * q2 - p2 * q1
        if det == 0:
            continue
        y = DualPoint((r1 * q2 - p2 * r2) / det, (p1 * r2 - r1 * q1) / det)
        if all(g1 * y.y1 + g2 * y.y2 <= r for (g1, g2), r in rows):
            val = dual_objective(b, y)
            if best is None or val > best[0]:
                best = (val, y)
    return best


def _fcn(c: CostSpec, b: Rhs, t: Fraction):
    sm = shifted_minimizers(c.beta, t, 1)
    val = None
    if sm.value.is_finite:
        val = b.b1 * (c.u + t) + b.b2 * (c.v + sm.value.finite())
    return val, sm


def _dual_sup_search(c: CostSpec, b: Rhs, eps=DEFAULT_EPS, max_iter=None):
    """Maximize ``b1 (u+t) + b2 (v + inf_k beta_k - t k)`` over ``t``; needs b2 > 0.

    The objective is concave and piecewise linear in ``t`` with
    superdifferential ``[b1 - b2*last, b1 - b2*first]`` where first/last are
    the extreme minimizing indices.  Between a bracket ``L < H`` whose
    minimizers straddle ``b1/b2`` the next probe is the crossing of the two
    bracketing lines, so the search ends exactly on the optimal breakpoint.

    Returns ``(value, witness)`` or ``(Enclosure, None)`` if ``max_iter``
    runs out first.
    """
    r = b.b1 / b.b2
    a = c.beta.a
    cap = min(c.beta0, a)

    def optimal_at(sm):
        return sm.first <= r and (sm.last is None or sm.last >= r)

    def witness(t, sm):
        return DualPoint(c.u + t, c.v + sm.value.finite())

    H = None
    val, sm = _fcn(c, b, cap)
    if val is not None:
        if sm.first <= r:
            return val, witness(cap, sm)
        H, smH = cap, sm
    else:
        # s < 0 and cap = a: the minimizer runs off to infinity as t -> a
        delta = Fraction(1)
        while True:
            t = a - delta
            val, sm = _fcn(c, b, t)
            if optimal_at(sm):
                return val, witness(t, sm)
            if sm.first > r:
                H, smH = t, sm
                break
            delta /= 2

    step = Fraction(1)
    L = min(H, Fraction(0)) - step
    while True:
        val, smL = _fcn(c, b, L)
        if optimal_at(smL):
            return val, witness(L, smL)
        if smL.last is not None and smL.last < r:
            break
        step *= 2
        L -= step

    beta = c.beta
    it = 0
    while max_iter is None or it < max_iter:
        it += 1
        j, k = smL.last, smH.first
        t = (seq_eval(beta, k) - seq_eval(beta, j)) / (k - j)
        val, sm = _fcn(c, b, t)
        if optimal_at(sm):
            return val, witness(t, sm)
        if sm.first > r:
            H, smH = t, sm
        else:
            L, smL = t, sm

    # budget exhausted: tangent-line bounds, tightened by bisection
    while True:
        fL, _ = _fcn(c, b, L)
        fH, _ = _fcn(c, b, H)
        gL = b.b1 - b.b2 * smL.last
        gH = b.b1 - b.b2 * smH.first
        t_cross = (fH - fL + gL * L - gH * H) / (gL - gH)
        hi = fL + gL * (t_cross - L)
        lo = max(fL, fH)
        if hi - lo <= eps:
            return Enclosure(lo, hi), None
        mid = (L + H) / 2
        val, sm = _fcn(c, b, mid)
        if optimal_at(sm):
            return Enclosure(val, val), None
        if sm.first > r:
            H, smH = mid, sm
        else:
            L, smL = mid, sm


def dual_sup_general(
    c: CostSpec, b: Rhs, eps=DEFAULT_EPS, max_iter: Optional[int] = None
) -> Union[XReal, Enclosure]:
    """Dual optimal value for any feasible right-hand side.

    Exact for axis and origin right-hand sides and for linear tails.  For
    tails with a square-root term the value comes from a bracketed search
    that is exact whenever it finishes inside ``max_iter`` steps (always,
    when ``max_iter`` is None); otherwise an :class:`Enclosure` of width at
    most ``eps`` is returned.
    """
    eps = as_ratio(eps)
    if eps <= 0:
        raise ContractError("eps > 0", f"got eps={format_ratio(eps)}")
    case = rhs_classify(b)
    if case is RhsCase.INFEASIBLE:
        raise ContractError("b1 >= b2 >= 0", "dual_sup_general needs a feasible rhs")
    if case is RhsCase.ORIGIN:
        return ZERO
    if case is RhsCase.AXIS:
        return XReal.of(b.b1 * min(c.c0, c.u + c.beta.a))
    if c.beta.s == 0:
        return XReal.of(_finite_dual_lp(c, b)[0])
    value, _ = _dual_sup_search(c, b, eps, max_iter)
    return value if isinstance(value, Enclosure) else XReal.of(value)


def gap_report(c: CostSpec, b: Rhs, confirm_n: Optional[int] = None) -> GapReport:
    """Primal value, dual value and gap for any right-hand side.

    ``confirm_n`` additionally solves the primal truncated at index
    ``confirm_n`` and stores its value in ``oracle_primal``.
    """
    case = rhs_classify(b)
    beta_bar = liminf_ratio(c.beta)
    u_bar = XReal.of(c.u + min(c.beta0, beta_bar.finite()))
    common = dict(beta_bar=beta_bar, u_bar=u_bar, rhs_case=case)

    if case is RhsCase.AXIS:
        report = gap_closed_form(c, b)
    elif case is RhsCase.INFEASIBLE:
        # b outside the closed cone {b1 >= b2 >= 0}: one of the dual recession
        # rays (-1, 1), (0, -1) has positive objective
        report = GapReport(
            phi=POS_INF,
            psi=POS_INF,
            gap=POS_INF,
            attainment=Attainment.NOT_ATTAINED,
            gap_defined=False,
            **common,
        )
    elif case is RhsCase.ORIGIN:
        report = GapReport(
            phi=ZERO,
            psi=ZERO,
            gap=ZERO,
            attainment=Attainment.ATTAINED,
            witness=DualPoint(c.u, c.v),
            **common,
        )
    else:
        if c.beta.s == 0:
            psi, witness = _finite_dual_lp(c, b)
        else:
            psi, witness = _dual_sup_search(c, b)
        psi = XReal.of(psi)
        # edge: the only feasible primal point is b1 * e_1
        phi = XReal.of(b.b1 * cost_eval(c, 1)) if case is RhsCase.EDGE else psi
        report = GapReport(
            phi=phi,
            psi=psi,
            gap=phi - psi,
            attainment=Attainment.ATTAINED,
            witness=witness,
            **common,
        )

    if confirm_n is not None and case is not RhsCase.INFEASIBLE:
        from .lp_oracle import solve_trunc_primal

        outcome = solve_trunc_primal(c, b, confirm_n)
        report = GapReport(**{**report.__dict__, "oracle_primal": outcome.value})
    return report

