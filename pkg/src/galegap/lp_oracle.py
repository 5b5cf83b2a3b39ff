"""Finite truncations of the Gale programs, solved exactly.

The truncated primal keeps the variables ``x_0 .. x_N``; it has two
equality rows, so basic solutions have at most two nonzeros and the
optimum is found by enumerating supports of size <= 2.  The truncated dual
keeps the constraints ``k <= N``; it is a two-variable LP whose vertices
are read off the lower envelope of the lines ``y2 = c_k - k y1``.

Both solvers are deliberately independent of the closed forms in
:mod:`galegap.gale` apart from evaluating the cost sequence.
"""
from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import ContractError
from .gale import CostSpec, DualPoint, Rhs, cost_eval
from .numeric import POS_INF, XReal, format_xreal

__all__ = [
    "Certificate",
    "TruncPrimal",
    "TruncDual",
    "LpOutcome",
    "SweepRow",
    "truncate",
    "solve_primal",
    "solve_dual",
    "solve_trunc_primal",
    "solve_trunc_dual",
    "truncation_sweep",
    "sweep_csv",
]


class Certificate(enum.Enum):
    OPTIMAL_BASIS = "optimal-basis"
    UNBOUNDED_RAY = "unbounded-ray"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class TruncPrimal:
    N: int
    cost: Tuple[Fraction, ...]
    b: Rhs

    def __post_init__(self):
        _check_trunc(self.N, self.cost)

    def column(self, k: int) -> Tuple[int, int]:
        return (1, 0) if k == 0 else (k, 1)


@dataclass(frozen=True)
class TruncDual:
    N: int
    cost: Tuple[Fraction, ...]
    b: Rhs

    def __post_init__(self):
        _check_trunc(self.N, self.cost)

    def row(self, k: int) -> Tuple[int, int]:
        return (1, 0) if k == 0 else (k, 1)


def _check_trunc(N, cost):
    if N < 1:
        raise ContractError("N >= 1", f"got N={N}")
    if len(cost) != N + 1:
        raise ContractError("len(cost) = N + 1", f"got {len(cost)} entries for N={N}")


Witness = Union[Dict[int, Fraction], DualPoint, None]


@dataclass(frozen=True)
class LpOutcome:
    value: XReal
    certificate: Certificate
    witness: Witness = None
    ray: Optional[Tuple[Fraction, ...]] = None
    support: Tuple[int, ...] = ()


def truncate(c: CostSpec, N: int) -> Tuple[Fraction, ...]:
    if N < 1:
        raise ContractError("N >= 1", f"got N={N}")
    return tuple(cost_eval(c, k) for k in range(N + 1))


# --- primal --------------------------------------------------------------------


def solve_primal(p: TruncPrimal) -> LpOutcome:
    """Exact optimum of the truncated primal with a lexicographic tie-break.

    Candidates are ordered by (objective, sorted support).  Pairs ``{j, k}``
    with ``1 <= j < k`` are positive on both entries only when
    ``j*b2 < b1 < k*b2``; the loops visit exactly those pairs.
    """
    N, b1, b2 = p.N, p.b.b1, p.b.b2

    # every column has a positive first entry, so A d = 0, d >= 0 forces
    # d = 0: the truncated primal is never unbounded

    den = 1
    for q in (*p.cost, b1, b2):
        den = den * q.denominator // math.gcd(den, q.denominator)
    C = [int(q * den) for q in p.cost]
    B1, B2 = int(b1 * den), int(b2 * den)

    # best = (numerator, positive denominator, support, witness builder)
    best = None

    def offer(num, dnm, support, build):
        nonlocal best
        if best is None:
            best = (num, dnm, support, build)
            return
        lhs, rhs = num * best[1], best[0] * dnm
        if lhs < rhs or (lhs == rhs and support < best[2]):
            best = (num, dnm, support, build)

    if B1 == 0 and B2 == 0:
        offer(0, 1, (), lambda: {})
    if B2 == 0 and B1 > 0:
        offer(C[0] * B1, 1, (0,), lambda: {0: b1})
    if B2 > 0:
        if B1 % B2 == 0 and 1 <= B1 // B2 <= N:
            k = B1 // B2
            offer(C[k] * B2, 1, (k,), lambda k=k: {k: b2})
        # {0, k}: x_k = b2, x_0 = b1 - k b2 > 0
        for k in range(1, N + 1):
            if B1 - k * B2 <= 0:
                break
            offer(
                C[0] * (B1 - k * B2) + C[k] * B2,
                1,
                (0, k),
                lambda k=k: {0: b1 - k * b2, k: b2},
            )
        # {j, k}: x_j = (k b2 - b1)/(k - j), x_k = (b1 - j b2)/(k - j)
        first_right = B1 // B2 + 1
        for j in range(1, min(N, first_right - 1) + 1):
            if j * B2 >= B1:
                break
            left = B1 - j * B2
            Cj = C[j]
            for k in range(max(first_right, j + 1), N + 1):
                offer(
                    Cj * (k * B2 - B1) + C[k] * left,
                    k - j,
                    (j, k),
                    lambda j=j, k=k: {
                        j: (k * b2 - b1) / (k - j),
                        k: (b1 - j * b2) / (k - j),
                    },
                )

    if best is None:
        return LpOutcome(POS_INF, Certificate.INFEASIBLE)
    num, dnm, support, build = best
    return LpOutcome(
        XReal.of(Fraction(num, dnm * den * den)),
        Certificate.OPTIMAL_BASIS,
        witness=build(),
        support=support,
    )


def solve_trunc_primal(c: CostSpec, b: Rhs, N: int) -> LpOutcome:
    return solve_primal(TruncPrimal(N, truncate(c, N), b))


# --- dual ----------------------------------------------------------------------


def _dual_ray(N: int, b: Rhs) -> Optional[Tuple[Fraction, Fraction]]:
    """An extreme ray of the recession cone with positive objective, if any."""
    # k d1 + d2 <= 0 is linear in k, so rows k = 1 and k = N cover k in [1, N]
    rows = [(1, 0), (1, 1), (N, 1)]
    for g1, g2 in rows:
        for d in ((g2, -g1), (-g2, g1)):
            if all(h1 * d[0] + h2 * d[1] <= 0 for h1, h2 in rows):
                if b.b1 * d[0] + b.b2 * d[1] > 0:
                    return (Fraction(d[0]), Fraction(d[1]))
    return None


def _envelope(cost: Sequence[Fraction]) -> List[int]:
    """Indices of the lines ``y2 = c_k - k*y1`` on their lower envelope,
    ordered left to right; lines touching the envelope only at a vertex are
    dropped."""
    hull: List[int] = []

    def cross(i, j):
        # y1 where c_i - i*y1 = c_j - j*y1
        return (cost[j] - cost[i]) / (j - i)

    for k in range(1, len(cost)):
        while len(hull) >= 2 and cross(hull[-2], k) <= cross(hull[-2], hull[-1]):
            hull.pop()
        hull.append(k)
    return hull


def _active(d: TruncDual, y: DualPoint) -> Tuple[int, ...]:
    act = [0] if y.y1 == d.cost[0] else []
    act += [k for k in range(1, d.N + 1) if k * y.y1 + y.y2 == d.cost[k]]
    return tuple(act)


def solve_dual(d: TruncDual) -> LpOutcome:
    """Exact optimum of the truncated dual.

    Optimal vertices are compared by their two smallest active constraint
    indices when the objective ties.
    """
    ray = _dual_ray(d.N, d.b)
    if ray is not None:
        return LpOutcome(POS_INF, Certificate.UNBOUNDED_RAY, ray=ray)

    cost = d.cost
    c0 = cost[0]
    hull = _envelope(cost)
    vertices = []
    for i, j in zip(hull, hull[1:]):
        y1 = (cost[j] - cost[i]) / (j - i)
        if y1 > c0:
            break
        vertices.append(DualPoint(y1, cost[i] - i * y1))
    # the vertical wall y1 = c0 meets the envelope line covering c0
    at_wall = hull[len(vertices)]
    vertices.append(DualPoint(c0, cost[at_wall] - at_wall * c0))

    objective = lambda y: d.b.b1 * y.y1 + d.b.b2 * y.y2  # noqa: E731
    top = max(objective(y) for y in vertices)
    tied = [y for y in vertices if objective(y) == top]
    witness = min(tied, key=lambda y: _active(d, y)[:2])
    support = _active(d, witness)[:2]
    return LpOutcome(
        XReal.of(top), Certificate.OPTIMAL_BASIS, witness=witness, support=support
    )


def solve_trunc_dual(c: CostSpec, b: Rhs, N: int) -> LpOutcome:
    return solve_dual(TruncDual(N, truncate(c, N), b))


# --- sweeps --------------------------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    N: int
    primal: XReal
    dual: XReal


def truncation_sweep(c: CostSpec, b: Rhs, Ns: Sequence[int]) -> List[SweepRow]:
    Ns = list(Ns)
    if not Ns:
        raise ContractError("Ns nonempty")
    if any(n < 1 for n in Ns) or any(x >= y for x, y in zip(Ns, Ns[1:])):
        raise ContractError("Ns strictly increasing positive integers", f"got {Ns}")
    return [
        SweepRow(n, solve_trunc_primal(c, b, n).value, solve_trunc_dual(c, b, n).value)
        for n in Ns
    ]


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["N", "primal", "dual"])
    for row in rows:
        writer.writerow([row.N, format_xreal(row.primal), format_xreal(row.dual)])
    return buf.getvalue()

