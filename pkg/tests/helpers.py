"""Random instance generators and brute-force oracles shared by the tests.

The oracles here never call the code paths they are used to check: they
scan indices, supports or grids directly.
"""
from fractions import Fraction as F
from itertools import combinations
import math
import random

from hypothesis import strategies as st

from galegap.gale import CostSpec, DualPoint, Rhs
from galegap.numeric import POS_INF, XReal
from galegap.seqcore import TailSeq, seq_is_nonneg


def rand_ratio(rng, lo, hi, dens=(1, 2, 3, 4)):
    q = rng.choice(dens)
    return F(rng.randint(lo * q, hi * q), q)


def random_tailseq(rng, *, max_prefix=4, s_choices=(-2, -1, F(-1, 2), 0, 0, 1), slope=None):
    while True:
        prefix = [rand_ratio(rng, 0, 5) for _ in range(rng.randint(0, max_prefix))]
        a = rand_ratio(rng, 0, 3) if slope is None else F(slope)
        s = F(rng.choice(s_choices))
        b = rand_ratio(rng, -2, 6)
        seq = TailSeq(tuple(prefix), a, b, s)
        if seq_is_nonneg(seq):
            return seq


def random_cost(rng, **kw):
    return CostSpec(rand_ratio(rng, -3, 3), rand_ratio(rng, -3, 3), random_tailseq(rng, **kw))


def random_interior_rhs(rng, max_ratio=6):
    b2 = rand_ratio(rng, 1, 4)
    while True:
        b1 = b2 * rand_ratio(rng, 1, max_ratio, dens=(2, 3, 5))
        if b1 > b2:
            return Rhs(b1, b2)


ratios = st.builds(
    lambda n, d: F(n, d), st.integers(-10**6, 10**6), st.integers(1, 10**4)
)
small_ratios = st.builds(lambda n, d: F(n, d), st.integers(-12, 12), st.integers(1, 4))
nonneg_small = st.builds(lambda n, d: F(n, d), st.integers(0, 12), st.integers(1, 4))


@st.composite
def tailseqs(draw, nonneg=True):
    prefix = draw(st.lists(nonneg_small, max_size=4))
    a = draw(nonneg_small)
    b = draw(small_ratios)
    s = draw(st.sampled_from([F(-2), F(-1), F(-1, 2), F(0), F(1, 2), F(1)]))
    seq = TailSeq(tuple(prefix), a, b, s)
    if nonneg:
        from hypothesis import assume

        assume(seq_is_nonneg(seq))
    return seq


@st.composite
def costs(draw):
    return CostSpec(draw(small_ratios), draw(small_ratios), draw(tailseqs()))


# --- oracles --------------------------------------------------------------------


def brute_inf(seq, t, k_min=1, kmax=4000):
    """Minimum of beta_k - t*k over k_min <= k <= kmax and its first argmin."""
    best, arg = None, None
    for k in range(k_min, kmax + 1):
        val = seq[k] - t * k
        if best is None or val < best:
            best, arg = val, k
    return best, arg


def brute_primal(cost, b):
    """Truncated primal by every support of size <= 2, no pruning."""
    n = len(cost) - 1
    cols = [(F(1), F(0))] + [(F(k), F(1)) for k in range(1, n + 1)]
    best = None
    if b.b1 == 0 and b.b2 == 0:
        best = F(0)
    for i in range(n + 1):
        (p, q) = cols[i]
        # single column: x_i * col = b
        for lam in {b.b1 / p if p else None, b.b2 / q if q else None} - {None}:
            if lam >= 0 and lam * p == b.b1 and lam * q == b.b2:
                val = lam * cost[i]
                best = val if best is None else min(best, val)
    for i, j in combinations(range(n + 1), 2):
        (p1, q1), (p2, q2) = cols[i], cols[j]
        det = p1 * q2 - p2 * q1
        if det == 0:
            continue
        xi = (b.b1 * q2 - p2 * b.b2) / det
        xj = (p1 * b.b2 - b.b1 * q1) / det
        if xi >= 0 and xj >= 0:
            val = xi * cost[i] + xj * cost[j]
            best = val if best is None else min(best, val)
    return POS_INF if best is None else XReal.of(best)


def brute_dual(cost, b):
    """Truncated dual by intersecting every pair of constraint lines.

    Boundedness is decided separately by the caller; this only scans
    vertices.
    """
    n = len(cost) - 1
    rows = [((F(1), F(0)), cost[0])] + [((F(k), F(1)), cost[k]) for k in range(1, n + 1)]
    best = None
    for ((p1, p2), r1), ((q1, q2), r2) in combinations(rows, 2):
        det = p1 * q2 - p2 * q1
        if det == 0:
            continue
        y1 = (r1 * q2 - p2 * r2) / det
        y2 = (p1 * r2 - r1 * q1) / det
        if all(g1 * y1 + g2 * y2 <= r for (g1, g2), r in rows):
            val = b.b1 * y1 + b.b2 * y2
            best = val if best is None else max(best, val)
    return best


def dual_grid_max(cost, b, lo=-6, hi=6, step=F(1, 8)):
    """Largest objective over a rational grid of feasible dual points."""
    n = len(cost) - 1
    count = int((hi - lo) / step)
    axis = [lo + i * step for i in range(count + 1)]
    best = None
    for y1 in axis:
        if y1 > cost[0]:
            continue
        for y2 in axis:
            if all(k * y1 + y2 <= cost[k] for k in range(1, n + 1)):
                val = b.b1 * y1 + b.b2 * y2
                best = val if best is None else max(best, val)
    return best


def sample_dual_points(rng, c, count):
    """Dual points spread around the feasible boundary (feasible or not)."""
    pts = []
    top = c.c0 + 2
    for _ in range(count):
        y1 = c.u + rand_ratio(rng, -4, 4, dens=(1, 2, 3, 7, 16))
        y1 = min(y1, top)
        y2 = c.v + rand_ratio(rng, -8, 2, dens=(1, 2, 5))
        pts.append(DualPoint(y1, y2))
    return pts


def isqrt_oracle(n):
    r = 0
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


