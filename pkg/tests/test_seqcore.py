from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from galegap.errors import ContractError, ParseError
from galegap.numeric import NEG_INF, XReal
from galegap.seqcore import (
    TailSeq,
    format_tailseq,
    inf_shifted,
    liminf_ratio,
    parse_tailseq,
    ratio_bound_index,
    seq_eval,
    seq_is_nonneg,
    shifted_minimizers,
)

from helpers import brute_inf, small_ratios, tailseqs

GALE_BETA = TailSeq((F(1),), 0, 0, 0)
SQRT_DIP = TailSeq((F(0),), 1, 0, -1)  # k - isqrt(k)


def test_seq_eval_examples():
    assert seq_eval(GALE_BETA, 0) == 1
    assert seq_eval(GALE_BETA, 7) == 0
    assert seq_eval(TailSeq((), 1, 0, -1), 9) == 6


@pytest.mark.parametrize(
    "seq, expected",
    [(GALE_BETA, 0), (TailSeq((), 2, 5, 0), 2), (TailSeq((), 1, 0, -3), 1)],
)
def test_liminf_ratio_examples(seq, expected):
    assert liminf_ratio(seq) == XReal.of(expected)


def test_inf_shifted_examples():
    assert inf_shifted(GALE_BETA, 0, 1) == XReal.of(0)
    assert inf_shifted(SQRT_DIP, 1, 1) == NEG_INF
    assert inf_shifted(SQRT_DIP, 0, 1) == XReal.of(0)


def test_inf_shifted_rejects_index_zero():
    with pytest.raises(ContractError):
        inf_shifted(GALE_BETA, 0, 0)


def test_seq_is_nonneg_examples():
    assert seq_is_nonneg(GALE_BETA)
    assert seq_is_nonneg(SQRT_DIP)
    assert not seq_is_nonneg(TailSeq((), 0, 0, -1))


def test_pure_tail_reads_index_zero_from_formula():
    seq = TailSeq((), 2, 3, -1)
    assert seq_eval(seq, 0) == 3
    assert not seq_is_nonneg(TailSeq((), 1, -1, 0))


def test_minimizers_of_flat_tail_are_unbounded():
    sm = shifted_minimizers(GALE_BETA, 0, 1)
    assert (sm.first, sm.last) == (1, None)


def test_minimizers_of_sqrt_plateau():
    # beta_k - 0*k = 2 + isqrt(k) for k >= 2: constant on [2, 3]
    seq = TailSeq((F(9), F(9)), 0, 2, 1)
    sm = shifted_minimizers(seq, 0, 1)
    assert sm.value == XReal.of(3) and (sm.first, sm.last) == (2, 3)


@settings(max_examples=300, deadline=None)
@given(tailseqs(nonneg=False), small_ratios, st.integers(1, 6))
def test_inf_shifted_matches_scan(seq, t, k_min):
    sm = shifted_minimizers(seq, t, k_min)
    if sm.value.is_neg_inf:
        # the scan keeps decreasing: far terms fall below every early term
        early, _ = brute_inf(seq, t, k_min, 200)
        far = min(seq[k] - t * k for k in (10**6, 10**6 + 1, 1000**2))
        far2 = min(seq[k] - t * k for k in (10**8, 10**8 + 1))
        assert far < early and far2 < far
        return
    # with |s| <= 2 and slope gap >= 1/4 every minimizer sits below 4000
    if seq.a - t == 0 or seq.a - t >= F(1, 4):
        best, arg = brute_inf(seq, t, k_min, 4000)
        assert sm.value == XReal.of(best)
        assert sm.first == arg


@settings(max_examples=200, deadline=None)
@given(tailseqs(nonneg=False), small_ratios)
def test_inf_shifted_is_a_lower_bound_attained_at_reported_index(seq, t):
    sm = shifted_minimizers(seq, t, 1)
    for k in list(range(1, 300)) + [10**3, 10**4, 10**6]:
        assert sm.value <= XReal.of(seq[k] - t * k)
    if sm.value.is_finite:
        assert seq[sm.first] - t * sm.first == sm.value.finite()
        if sm.last is not None:
            assert seq[sm.last] - t * sm.last == sm.value.finite()


@given(tailseqs(nonneg=False), small_ratios, small_ratios)
def test_inf_shifted_monotone_in_shift(seq, t1, t2):
    t1, t2 = min(t1, t2), max(t1, t2)
    assert inf_shifted(seq, t1, 1) >= inf_shifted(seq, t2, 1)


@given(tailseqs(nonneg=False), small_ratios)
def test_neg_inf_exactly_past_the_liminf(seq, t):
    beta_bar = liminf_ratio(seq).finite()
    expect = t > beta_bar or (t == beta_bar and seq.s < 0)
    assert inf_shifted(seq, t, 1).is_neg_inf == expect


@settings(deadline=None)
@given(tailseqs(nonneg=False), st.integers(1, 50))
def test_ratio_bound_index(seq, q):
    eps = F(1, q)
    k0 = ratio_bound_index(seq, eps)
    beta_bar = liminf_ratio(seq).finite()
    for k in list(range(k0, k0 + 200)) + [k0 * 7 + 3, 10**6 + k0]:
        assert seq[k] / k >= beta_bar - eps


def test_text_form_round_trip():
    seq = TailSeq((F(1), F(-1, 2)), F(3, 4), 0, -1)
    text = format_tailseq(seq)
    assert text == "prefix=[1,-1/2]; tail=(3/4,0,-1)"
    assert parse_tailseq(text) == seq
    assert parse_tailseq("prefix=[]; tail=(1, 0, -1)") == TailSeq((), 1, 0, -1)


@pytest.mark.parametrize(
    "text",
    ["prefix=[1.5]; tail=(0,0,0)", "prefix=[1]; tail=(0,0)", "tail=(0,0,0)", "k -> k**2"],
)
def test_text_form_rejects(text):
    with pytest.raises(ParseError):
        parse_tailseq(text)


def test_prefix_tie_reports_both_ends():
    # 5 + 5/3 = 10/3 + 10/3: indices 1 and 2 tie at t = -5/3
    seq = TailSeq((F(1, 2), F(5), F(10, 3)), 2, 4, 0)
    sm = shifted_minimizers(seq, F(-5, 3), 1)
    assert sm.value == XReal.of(F(20, 3)) and (sm.first, sm.last) == (1, 2)


@settings(max_examples=200, deadline=None)
@given(tailseqs(nonneg=False), small_ratios)
def test_last_minimizer_matches_scan(seq, t):
    sm = shifted_minimizers(seq, t, 1)
    if sm.value.is_finite and sm.last is not None and sm.last < 3000:
        vals = [seq[k] - t * k for k in range(1, 4001)]
        best = min(vals)
        assert max(k for k, v in enumerate(vals, 1) if v == best) == sm.last
