"""ROUGE-L: published example sentences, identity, LCS oracle equivalence."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codescore.metrics import default_config, get_scorer
from codescore.metrics.rouge import lcs_length

from .conftest import make_candidates, make_corpus
from .oracles import lcs_exhaustive

CFG = default_config()


def rouge(ref, hyp):
    corpus = make_corpus({"p": [ref] if isinstance(ref, str) else ref})
    cands = make_candidates("m", {"p": hyp})
    return get_scorer("rouge-l", CFG).score(corpus, cands).value


def test_gunman_examples():
    assert rouge("police killed the gunman", "police kill the gunman") == pytest.approx(75.0, abs=1e-9)
    assert rouge("police killed the gunman", "the gunman killed police") == pytest.approx(50.0, abs=1e-9)


def test_identity_scores_100():
    assert rouge("x = compute(a, b)", "x = compute(a, b)") == pytest.approx(100.0)


def test_empty_candidate_scores_zero():
    assert rouge("a b c", "") == 0.0


def test_multi_reference_takes_max():
    value = rouge(["a b c d", "q w e r"], "q w e r")
    assert value == pytest.approx(100.0)


token = st.sampled_from(["a", "b", "c", "d"])


@settings(max_examples=200, deadline=None)
@given(st.lists(token, max_size=7), st.lists(token, max_size=7))
def test_lcs_matches_exhaustive_oracle(a, b):
    assert lcs_length(a, b) == lcs_exhaustive(tuple(a), tuple(b))


@settings(max_examples=100, deadline=None)
@given(st.lists(token, min_size=1, max_size=8), st.lists(token, min_size=1, max_size=8))
def test_rouge_matches_direct_formula(a, b):
    ref, hyp = " ".join(a), " ".join(b)
    lcs = lcs_exhaustive(tuple(a), tuple(b))
    p, r = lcs / len(b), lcs / len(a)
    expected = 0.0 if lcs == 0 else 100.0 * 2 * p * r / (p + r)
    assert rouge(ref, hyp) == pytest.approx(expected, abs=1e-9)


def test_micro_aggregation_option():
    from dataclasses import replace

    micro_cfg = replace(CFG, aggregation="micro")
    corpus = make_corpus({"p1": ["a b c d"], "p2": ["x y"]})
    cands = make_candidates("m", {"p1": "a b", "p2": "x y"})
    macro = get_scorer("rouge-l", CFG).score(corpus, cands).value
    micro = get_scorer("rouge-l", micro_cfg).score(corpus, cands).value
    assert macro != pytest.approx(micro)
    assert 0 <= micro <= 100


def test_multi_reference_first_policy():
    from dataclasses import replace

    first_cfg = replace(CFG, multi_reference="first")
    corpus = make_corpus({"p": ["a b c d", "q w e r"]})
    cands = make_candidates("m", {"p": "q w e r"})
    best = get_scorer("rouge-l", CFG).score(corpus, cands).value
    first = get_scorer("rouge-l", first_cfg).score(corpus, cands).value
    assert best == pytest.approx(100.0)
    assert first == 0.0  # only the first reference counts
