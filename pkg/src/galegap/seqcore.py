"""Nonnegative cost perturbations with an exactly computable asymptotic tail.

A :class:`TailSeq` is a finite prefix of rationals followed by the tail
``beta_k = a*k + b + s*isqrt(k)`` for every ``k >= len(prefix)``.  Inside
this class both ``liminf beta_k / k`` and ``inf_{k >= k_min} beta_k - t*k``
are computable in closed form, including the case ``s < 0`` where the
liminf is reached but the shifted infimum is ``-inf``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import ContractError, ParseError
from .numeric import (
    NEG_INF,
    XReal,
    as_ratio,
    floor_ratio,
    format_ratio,
    isqrt,
    parse_ratio,
)

__all__ = [
    "TailSeq",
    "ShiftedInf",
    "seq_eval",
    "liminf_ratio",
    "inf_shifted",
    "shifted_minimizers",
    "seq_is_nonneg",
    "ratio_bound_index",
    "parse_tailseq",
    "format_tailseq",
]


@dataclass(frozen=True)
class TailSeq:
    """``prefix`` gives beta_0 .. beta_{K-1}; ``(a, b, s)`` the tail rule."""

    prefix: tuple = ()
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    s: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(as_ratio(p) for p in self.prefix))
        for name in ("a", "b", "s"):
            object.__setattr__(self, name, as_ratio(getattr(self, name)))

    @classmethod
    def from_parts(cls, prefix: Iterable, tail) -> "TailSeq":
        a, b, s = tail
        return cls(tuple(prefix), a, b, s)

    @property
    def K(self) -> int:
        return len(self.prefix)

    @property
    def tail(self):
        return (self.a, self.b, self.s)

    def tail_value(self, k: int) -> Fraction:
        return self.a * k + self.b + self.s * isqrt(k)

    def __getitem__(self, k: int) -> Fraction:
        return seq_eval(self, k)

    def __str__(self):
        return format_tailseq(self)


@dataclass(frozen=True)
class ShiftedInf:
    """Result of minimizing ``beta_k - t*k`` over ``k >= k_min``.

    ``first``/``last`` are the smallest and largest minimizing indices;
    ``last`` is None when the minimum is attained at infinitely many
    indices.  Both are None when the infimum is ``-inf``.
    """

    value: XReal
    first: Optional[int] = None
    last: Optional[int] = None


def seq_eval(seq: TailSeq, k: int) -> Fraction:
    if k < 0:
        raise ContractError("k >= 0", f"got index {k}")
    if k < seq.K:
        return seq.prefix[k]
    return seq.tail_value(k)


def liminf_ratio(seq: TailSeq) -> XReal:
    # (b + s*isqrt(k)) / k -> 0, so the ratio converges to the slope
    return XReal.of(seq.a)


def _tail_minimizers(seq: TailSeq, t: Fraction, start: int) -> ShiftedInf:
    """Minimize ``tail_value(k) - t*k`` over ``k >= start``."""
    d = seq.a - t
    b, s = seq.b, seq.s
    m0 = isqrt(start)
    if d < 0 or (d == 0 and s < 0):
        return ShiftedInf(NEG_INF)
    if d == 0:
        value = XReal.of(b + s * m0)
        if s == 0:
            return ShiftedInf(value, start, None)
        return ShiftedInf(value, start, (m0 + 1) ** 2 - 1)
    if s >= 0:
        return ShiftedInf(XReal.of(d * start + b + s * m0), start, start)

    # s < 0, d > 0: inside block isqrt(k) = m the term grows with k, so only
    # k = start and k = m*m (m > m0) compete; over m it is a convex quadratic.
    candidates = {start: d * start + b + s * m0}
    vertex = floor_ratio(-s / (2 * d))
    for m in {m0 + 1, vertex, vertex + 1}:
        if m >= m0 + 1:
            candidates[m * m] = d * m * m + s * m + b
    best = min(candidates.values())
    hits = sorted(k for k, val in candidates.items() if val == best)
    return ShiftedInf(XReal.of(best), hits[0], hits[-1])


def shifted_minimizers(seq: TailSeq, beta_prime, k_min: int = 1) -> ShiftedInf:
    """Exact ``inf{beta_k - beta_prime*k : k >= k_min}`` with its argmin range."""
    if k_min < 1:
        raise ContractError("k_min >= 1", f"got k_min={k_min}")
    t = as_ratio(beta_prime)
    start = max(seq.K, k_min)
    tail = _tail_minimizers(seq, t, start)
    if tail.value.is_neg_inf:
        return tail

    best = tail.value.finite()
    first, last = tail.first, tail.last
    # prefix indices all precede the tail ones, so scan them backwards
    for k in range(seq.K - 1, k_min - 1, -1):
        val = seq.prefix[k] - t * k
        if val < best:
            best, first, last = val, k, k
        elif val == best:
            first = k
    return ShiftedInf(XReal.of(best), first, last)


def inf_shifted(seq: TailSeq, beta_prime, k_min: int = 1) -> XReal:
    return shifted_minimizers(seq, beta_prime, k_min).value


def seq_is_nonneg(seq: TailSeq) -> bool:
    if any(p < 0 for p in seq.prefix):
        return False
    if seq.K == 0 and seq.b < 0:
        return False
    return inf_shifted(seq, 0, max(seq.K, 1)) >= 0


def ratio_bound_index(seq: TailSeq, eps) -> int:
    """Smallest convenient k0 with ``beta_k / k >= liminf - eps`` for all k >= k0.

    Not necessarily the least such index; it is a certified one.
    """
    eps = as_ratio(eps)
    if eps <= 0:
        raise ContractError("eps > 0", f"got eps={eps}")
    b, s = seq.b, seq.s
    k0 = max(seq.K, 1)
    if s >= 0:
        if b < 0:
            # b/k >= -eps  <=>  k >= -b/eps
            k0 = max(k0, -floor_ratio(b / eps))
        return k0
    # need eps*k + s*sqrt(k) + b >= 0; increasing in sqrt(k) past -s/(2 eps)
    m = max(floor_ratio(-s / (2 * eps)) + 1, 0)
    step = 1
    while eps * m * m + s * m + b < 0:
        m += step
        step *= 2
    return max(k0, m * m)


_SEQ_RE = re.compile(
    r"\s*prefix\s*=\s*\[(?P<prefix>[^\]]*)\]\s*;\s*tail\s*=\s*\((?P<tail>[^)]*)\)\s*"
)


def parse_tailseq(text: str, location=None) -> TailSeq:
    """Parse ``prefix=[r0,r1,...]; tail=(a,b,s)``."""
    match = _SEQ_RE.fullmatch(text)
    if match is None:
        raise ParseError(
            f"expected 'prefix=[...]; tail=(a,b,s)', got {text!r}", location
        )
    body = match.group("prefix").strip()
    prefix = [parse_ratio(tok, location) for tok in body.split(",")] if body else []
    tail = [parse_ratio(tok, location) for tok in match.group("tail").split(",")]
    if len(tail) != 3:
        raise ParseError(f"tail needs exactly 3 entries, got {len(tail)}", location)
    return TailSeq.from_parts(prefix, tail)


def format_tailseq(seq: TailSeq) -> str:
    prefix = ",".join(format_ratio(p) for p in seq.prefix)
    tail = ",".join(format_ratio(t) for t in seq.tail)
    return f"prefix=[{prefix}]; tail=({tail})"
