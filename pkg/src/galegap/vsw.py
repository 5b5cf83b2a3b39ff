"""Sets from the Van Slyke and Wets presentation of Gale's example.

Points are ``(eta, y1, y2)``.  The well-defined part of the epigraph-type
set is ``C' = C0 u C1`` with::

    C0 = {(eta, y1, 0)  : y1 <= 1, eta >= 1 - y1}
    C1 = {(eta, y1, y2) : y1 - 1 <= y2 < 0, eta >= 0}

and its closure is ``{y1 - 1 <= y2 <= 0, eta >= 0}``.  On the line
``L = R x {0}`` the two differ: ``L n C' = {eta >= 1}`` whereas
``L n cl C' = {eta >= 0}``.

The module also carries the sequence fixtures used to separate the spaces
of sequences with convergent ``sum z_n``, ``sum n z_n`` and
``sum n |z_n|``; they come with partial sums only, never a convergence
verdict.
"""
from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Tuple

from .errors import ContractError
from .numeric import as_ratio, ceil_ratio, floor_ratio, format_ratio

__all__ = [
    "EtaPoint",
    "SparseSeq",
    "in_C0",
    "in_C1",
    "in_Cprime",
    "in_cl_Cprime",
    "on_line",
    "c1_witness",
    "witness_sums",
    "line_intersections",
    "Interval",
    "PartialSums",
    "FIXTURES",
    "ln_bounds",
    "dspace_fixture_partial_sums",
    "grid_points",
    "grid_csv",
]


@dataclass(frozen=True)
class EtaPoint:
    eta: Fraction
    y1: Fraction
    y2: Fraction

    def __post_init__(self):
        for name in ("eta", "y1", "y2"):
            object.__setattr__(self, name, as_ratio(getattr(self, name)))


# sorted (index, value) pairs with distinct positive indices
SparseSeq = Tuple[Tuple[int, Fraction], ...]


def in_C0(p: EtaPoint) -> bool:
    return p.y2 == 0 and p.y1 <= 1 and p.eta >= 1 - p.y1


def in_C1(p: EtaPoint) -> bool:
    return p.y1 - 1 <= p.y2 < 0 and p.eta >= 0


def in_Cprime(p: EtaPoint) -> bool:
    return in_C0(p) or in_C1(p)


def in_cl_Cprime(p: EtaPoint) -> bool:
    return p.y1 - 1 <= p.y2 <= 0 and p.eta >= 0


def on_line(p: EtaPoint) -> bool:
    return p.y1 == 0 and p.y2 == 0


def c1_witness(p: EtaPoint) -> SparseSeq:
    """Nonnegative ``x`` on ``{1, n}`` with ``sum x = -y2`` and ``sum n x_n = 1 - y1``.

    ``n`` is the smallest integer ``>= max(2, alpha/beta)`` where
    ``alpha = 1 - y1`` and ``beta = -y2``.  Zero entries are omitted.
    """
    if not in_C1(p):
        raise ContractError("p in C1", f"({p.eta}, {p.y1}, {p.y2}) is not in C1")
    alpha, beta = 1 - p.y1, -p.y2
    n = max(2, ceil_ratio(alpha / beta))
    x1 = (n * beta - alpha) / (n - 1)
    xn = (alpha - beta) / (n - 1)
    return tuple((i, v) for i, v in ((1, x1), (n, xn)) if v != 0)


def witness_sums(x: SparseSeq) -> Tuple[Fraction, Fraction]:
    """``(sum x_n, sum n x_n)`` for a sparse sequence."""
    return (
        sum((v for _, v in x), Fraction(0)),
        sum((i * v for i, v in x), Fraction(0)),
    )


@dataclass(frozen=True)
class LineIntersections:
    """Closed-form descriptions of ``L n C'`` and ``L n cl C'``."""

    in_L_Cprime: Callable[[EtaPoint], bool]
    in_L_cl_Cprime: Callable[[EtaPoint], bool]
    describe_L_Cprime: str = "y1 = y2 = 0 and eta >= 1"
    describe_L_cl_Cprime: str = "y1 = y2 = 0 and eta >= 0"

    def check(self, points: Iterable[EtaPoint]) -> List[EtaPoint]:
        """Points where the closed forms disagree with the set predicates."""
        bad = []
        for p in points:
            if self.in_L_Cprime(p) != (on_line(p) and in_Cprime(p)):
                bad.append(p)
            elif self.in_L_cl_Cprime(p) != (on_line(p) and in_cl_Cprime(p)):
                bad.append(p)
        return bad


def line_intersections() -> LineIntersections:
    return LineIntersections(
        in_L_Cprime=lambda p: p.y1 == 0 and p.y2 == 0 and p.eta >= 1,
        in_L_cl_Cprime=lambda p: p.y1 == 0 and p.y2 == 0 and p.eta >= 0,
    )


def grid_points(lo: int, hi: int, step=Fraction(1)) -> Iterable[EtaPoint]:
    step = as_ratio(step)
    count = int((hi - lo) / step)
    axis = [lo + i * step for i in range(count + 1)]
    for eta, y1, y2 in itertools.product(axis, repeat=3):
        yield EtaPoint(eta, y1, y2)


def grid_csv(points: Iterable[EtaPoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["eta", "y1", "y2", "in_C0", "in_C1", "in_Cprime", "in_clCprime"])
    for p in points:
        flags = (in_C0(p), in_C1(p), in_Cprime(p), in_cl_Cprime(p))
        writer.writerow(
            [format_ratio(p.eta), format_ratio(p.y1), format_ratio(p.y2)]
            + [str(f).lower() for f in flags]
        )
    return buf.getvalue()


# --- sequence fixtures ---------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    @classmethod
    def point(cls, q) -> "Interval":
        return cls(as_ratio(q), as_ratio(q))

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def scale(self, k) -> "Interval":
        lo, hi = self.lo * k, self.hi * k
        return Interval(min(lo, hi), max(lo, hi))

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains 0")
        return Interval(1 / self.hi, 1 / self.lo)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, q) -> bool:
        return self.lo <= q <= self.hi


_LN_TERMS = 40
_LN_DEN = 2**128


def _atanh2_bounds(z: Fraction) -> Tuple[Fraction, Fraction]:
    # 2 atanh z = sum 2 z^(2j+1)/(2j+1); the tail after M terms is at most
    # 2 z^(2M+1) / ((2M+1)(1 - z^2))
    total, power, z2 = Fraction(0), z, z * z
    for j in range(_LN_TERMS):
        total += 2 * power / (2 * j + 1)
        power *= z2
    tail = 2 * power / ((2 * _LN_TERMS + 1) * (1 - z2))
    return total, total + tail


def _outward(lo: Fraction, hi: Fraction) -> Interval:
    return Interval(
        Fraction(floor_ratio(lo * _LN_DEN), _LN_DEN),
        Fraction(ceil_ratio(hi * _LN_DEN), _LN_DEN),
    )


_LN2 = _outward(*_atanh2_bounds(Fraction(1, 3)))


def ln_bounds(n: int) -> Interval:
    """Rational interval containing ``ln n`` for an integer ``n >= 1``."""
    if n < 1:
        raise ContractError("n >= 1", f"ln of {n}")
    k = n.bit_length() - 1
    m = Fraction(n, 2**k)  # in [1, 2)
    lo, hi = _atanh2_bounds((m - 1) / (m + 1))
    return _LN2.scale(k) + _outward(lo, hi)


def _geometric(n):
    return Interval.point(Fraction(1, 2**n))


def _alt_inv_square(n):
    return Interval.point(Fraction((-1) ** n, (n + 1) ** 2))


def _harmonic(n):
    return Interval.point(Fraction(1, n + 1))


def _alt_harmonic(n):
    return Interval.point(Fraction((-1) ** n, n + 1))


def _log_alternating(n):
    if n < 2:
        return Interval.point(0)
    inv = ln_bounds(n).scale(n).reciprocal()
    return inv if n % 2 == 0 else -inv


# name -> (term enclosure, membership label)
FIXTURES: Dict[str, Tuple[Callable[[int], Interval], str]] = {
    "geometric": (_geometric, "D0a minus finitely supported"),
    "alt-inv-square": (_alt_inv_square, "D0 n l1 minus D0a"),
    "harmonic": (_harmonic, "c0 minus l1"),
    "alt-harmonic": (_alt_harmonic, "D1 n lr minus D0"),
    "log-alternating": (_log_alternating, "D0 minus l1"),
}


@dataclass(frozen=True)
class PartialSums:
    """Enclosures of partial sums over ``0 <= n <= N``."""

    name: str
    N: int
    label: str
    plain: Interval  # sum z_n
    absolute: Interval  # sum |z_n|
    weighted: Interval  # sum n z_n
    weighted_abs: Interval  # sum n |z_n|


def _abs(iv: Interval) -> Interval:
    if iv.lo >= 0:
        return iv
    if iv.hi <= 0:
        return -iv
    return Interval(Fraction(0), max(-iv.lo, iv.hi))


def dspace_fixture_partial_sums(name: str, N: int) -> PartialSums:
    if name not in FIXTURES:
        raise ContractError("known fixture", f"{name!r} not in {sorted(FIXTURES)}")
    if N < 1:
        raise ContractError("N >= 1", f"got N={N}")
    term, label = FIXTURES[name]
    zero = Interval.point(0)
    plain = absolute = weighted = weighted_abs = zero
    for n in range(N + 1):
        z = term(n)
        plain += z
        absolute += _abs(z)
        weighted += z.scale(n)
        weighted_abs += _abs(z).scale(n)
    return PartialSums(name, N, label, plain, absolute, weighted, weighted_abs)
