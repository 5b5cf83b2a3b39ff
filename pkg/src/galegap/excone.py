"""A three-dimensional conic program with a positive duality gap.

    minimize x2  s.t.  x = (x1, x2) in R x R_+,  (x1, x2, 0) - y in Q0,

with the rotated second-order cone
``Q0 = {z : z1 >= 0, z3 >= 0, z2^2 <= 2 z1 z3}``.  Its value function is
``h0(y) = y2`` on ``R x R_+ x {0}``, ``0`` where ``y3 < 0`` and ``+inf``
elsewhere; the lower semicontinuous hull is 0 on the whole half-space
``y3 <= 0``, so boundary points with ``y2 > 0`` carry a gap of ``y2``.
"""
from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple

from .errors import ContractError
from .numeric import POS_INF, ZERO, XReal, as_ratio, format_ratio, format_xreal

__all__ = [
    "Point3",
    "PrimalPoint2",
    "h0_closed",
    "soc_feasible",
    "h0_witness",
    "gap_exz",
    "grid_points",
    "grid_csv",
]


@dataclass(frozen=True)
class Point3:
    y1: Fraction
    y2: Fraction
    y3: Fraction

    def __post_init__(self):
        for name in ("y1", "y2", "y3"):
            object.__setattr__(self, name, as_ratio(getattr(self, name)))

    def scaled(self, alpha) -> "Point3":
        return Point3(alpha * self.y1, alpha * self.y2, alpha * self.y3)


@dataclass(frozen=True)
class PrimalPoint2:
    x1: Fraction
    x2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x1", as_ratio(self.x1))
        object.__setattr__(self, "x2", as_ratio(self.x2))


def h0_closed(y: Point3) -> XReal:
    if y.y3 < 0:
        return ZERO
    if y.y3 == 0 and y.y2 >= 0:
        return XReal.of(y.y2)
    return POS_INF


def soc_feasible(x: PrimalPoint2, y: Point3) -> bool:
    z1, z2, z3 = x.x1 - y.y1, x.x2 - y.y2, -y.y3
    return x.x2 >= 0 and z1 >= 0 and z3 >= 0 and z2 * z2 <= 2 * z1 * z3


def h0_witness(y: Point3) -> Optional[Tuple[PrimalPoint2, XReal]]:
    """A feasible point attaining ``h0_closed(y)``, or None when it is +inf."""
    value = h0_closed(y)
    if not value.is_finite:
        return None
    if y.y3 == 0:
        return PrimalPoint2(y.y1, y.y2), value
    # x2 = 0 and x1 large enough that y2^2 <= 2 (x1 - y1)(-y3)
    return PrimalPoint2(y.y1 + y.y2 * y.y2 / (-2 * y.y3), 0), value


def gap_exz(y: Point3) -> Tuple[XReal, XReal, XReal]:
    """(primal value, dual value, gap) at a point of the closed half-space y3 <= 0."""
    if y.y3 > 0:
        raise ContractError("y3 <= 0", f"y3={format_ratio(y.y3)} is outside cl dom h0")
    phi = h0_closed(y)
    psi = ZERO
    return phi, psi, phi - psi


def grid_points(lo: int, hi: int, step=Fraction(1)) -> Iterable[Point3]:
    """Grid points of ``[lo, hi]^3`` restricted to ``y3 <= 0``."""
    step = as_ratio(step)
    count = int((hi - lo) / step)
    axis = [lo + i * step for i in range(count + 1)]
    for y1, y2, y3 in itertools.product(axis, repeat=3):
        if y3 <= 0:
            yield Point3(y1, y2, y3)


def grid_csv(points: Iterable[Point3]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["y1", "y2", "y3", "phi", "psi", "gap"])
    for y in points:
        phi, psi, gap = gap_exz(y)
        writer.writerow(
            [format_ratio(y.y1), format_ratio(y.y2), format_ratio(y.y3)]
            + [format_xreal(v) for v in (phi, psi, gap)]
        )
    return buf.getvalue()
