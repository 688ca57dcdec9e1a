"""BLEU variants: worked examples, identity, aggregation semantics."""

import math

import pytest

from codescore.corpus import ValidationError
from codescore.metrics import default_config, get_scorer
from codescore.metrics.config import BleuConfig, MetricConfig

from .conftest import make_candidates, make_corpus

CFG = default_config()


def score_one(ref, hyp, name, config=CFG):
    corpus = make_corpus({"p": [ref] if isinstance(ref, str) else ref})
    cands = make_candidates("m", {"p": hyp})
    return get_scorer(name, config).score(corpus, cands).value


def test_identical_single_reference_scores_100():
    assert score_one("x = foo(bar, 1)", "x = foo(bar, 1)", "bleu") == pytest.approx(100.0)


def test_prefix_candidate_is_pure_brevity_penalty():
    # ref 6 tokens, hyp its first 4: every n-gram precision is 1, so the
    # score is exactly the brevity penalty 100 * e^(1 - 6/4)
    ref = "a b c d e f"
    hyp = "a b c d"
    expected = 100.0 * math.exp(1.0 - 6.0 / 4.0)
    assert score_one(ref, hyp, "bleu") == pytest.approx(expected, abs=1e-9)


def test_list_concat_pair_sentence_score():
    # known tricky pair: wrong snippet, high n-gram overlap
    ref = "''.join(['a','b','c'])"
    hyp = "set(['a','b','b'])"
    assert score_one(ref, hyp, "sentence-bleu") == pytest.approx(48.09, abs=0.5)


def test_corpus_bleu_differs_from_mean_sentence_bleu():
    refs = {"p1": ["a b c d e f g h"], "p2": ["x y"]}
    hyps = {"p1": "a b c d e f g h", "p2": "x q"}
    corpus = make_corpus(refs)
    cands = make_candidates("m", hyps)
    corpus_value = get_scorer("bleu", CFG).score(corpus, cands).value
    sentence_value = get_scorer("sentence-bleu", CFG).score(corpus, cands).value
    assert corpus_value != pytest.approx(sentence_value)


def test_empty_candidate_contributes_zero_counts_in_corpus_mode():
    refs = {"p1": ["a b c d"], "p2": ["a b c d"]}
    corpus = make_corpus(refs)
    with_empty = make_candidates("m", {"p1": "a b c d", "p2": ""})
    value = get_scorer("bleu", CFG).score(corpus, with_empty).value
    # counts from p1 only, but r accumulates both references: BP = e^(1-8/4)
    assert value == pytest.approx(100.0 * math.exp(1.0 - 8.0 / 4.0), abs=1e-9)


def test_empty_candidate_scores_zero_in_sentence_mode():
    assert score_one("a b", "", "sentence-bleu") == 0.0


def test_all_empty_candidates_score_zero():
    corpus = make_corpus({"p": ["a b"]})
    cands = make_candidates("m", {"p": ""})
    assert get_scorer("bleu", CFG).score(corpus, cands).value == 0.0


def test_multi_reference_clipping_takes_max_repeat_count():
    # 'the' twice in one reference allows the duplicated unigram
    refs = ["the cat the hat", "a cat sat"]
    hyp = "the cat the hat"
    assert score_one(refs, hyp, "bleu") == pytest.approx(100.0)


def test_smoothing_none_zeroes_on_missing_order():
    config = MetricConfig(bleu=BleuConfig(smoothing="none"))
    # no 2-gram overlap: unsmoothed sentence score collapses to zero
    assert score_one("a b c d", "a x b y", "sentence-bleu", config) == 0.0


def test_smoothing_floor_keeps_partial_credit():
    assert score_one("a b c d", "a x b y", "sentence-bleu") > 0.0


def test_smoothing_add_k():
    config = MetricConfig(bleu=BleuConfig(smoothing="add-k"))
    value = score_one("a b c d", "a x b y", "sentence-bleu", config)
    assert 0.0 < value < 100.0


def test_short_pair_excludes_impossible_orders():
    # single-token pair: only unigrams exist; weights renormalize
    assert score_one("x", "x", "sentence-bleu") == pytest.approx(100.0)
    assert score_one("x", "x", "bleu") == pytest.approx(100.0)


def test_corpus_mode_has_no_per_snippet_values():
    corpus = make_corpus({"p": ["a b"]})
    cands = make_candidates("m", {"p": "a b"})
    assert get_scorer("bleu", CFG).score(corpus, cands).per_snippet is None
    assert get_scorer("sentence-bleu", CFG).score(corpus, cands).per_snippet is not None


# keyword-weighted unigram variant


def test_weighted_unigram_worked_example():
    # ref "for x in lst": weighted mass 5+1+5+1 = 12; hyp "for x of" matches
    # mass 6; BP = e^(1 - 4/3)
    expected = 100.0 * math.exp(-1.0 / 3.0) * (6.0 / 12.0)
    assert score_one("for x in lst", "for x of", "bleu-weighted") == pytest.approx(
        expected, abs=1e-6
    )


def test_weighted_unigram_identity():
    assert score_one("for x in lst", "for x in lst", "bleu-weighted") == pytest.approx(100.0)


def test_weighted_unigram_zero_overlap():
    assert score_one("for x in lst", "q w e", "bleu-weighted") == 0.0


def test_weighted_unigram_empty_reference_errors():
    corpus = make_corpus({"p": [""]})
    cands = make_candidates("m", {"p": "x"})
    with pytest.raises(ValidationError):
        get_scorer("bleu-weighted", CFG).score(corpus, cands)


def test_scores_stay_in_range_on_garbage():
    for hyp in ["", "§§§\x00", "for for for", "x" * 500]:
        for name in ("bleu", "sentence-bleu", "bleu-weighted"):
            value = score_one("y = f(x)", hyp, name)
            assert 0.0 <= value <= 100.0
