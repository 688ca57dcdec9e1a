"""Alignment metric: analytic cases, frozen fixture pairs, exhaustive oracle."""

import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codescore.metrics import default_config, get_scorer
from codescore.metrics.meteor import align, meteor_score
from codescore.metrics.porter import stem
from codescore.tokens import tokenize_texts

from .conftest import make_candidates, make_corpus
from .oracles import meteor_exhaustive

CFG = default_config()
FIXTURES = Path(__file__).parent / "fixtures"


def meteor(ref, hyp):
    corpus = make_corpus({"p": [ref] if isinstance(ref, str) else ref})
    cands = make_candidates("m", {"p": hyp})
    return get_scorer("meteor", CFG).score(corpus, cands).value


def test_zero_matches_scores_zero():
    assert meteor("alpha beta", "gamma delta") == 0.0


def test_single_identical_token_is_one_minus_gamma():
    assert meteor("x", "x") == pytest.approx(100.0 * (1.0 - CFG.meteor.gamma), abs=1e-9)


def test_identity_follows_analytic_formula():
    text = "y = f(x) + 1"
    n = len(tokenize_texts(text))
    expected = 100.0 * (1.0 - CFG.meteor.gamma * (1.0 / n) ** CFG.meteor.beta)
    assert meteor(text, text) == pytest.approx(expected, abs=1e-9)


def test_stem_matcher_connects_inflections():
    with_stem = meteor("sorted values", "sorting value")
    assert with_stem > 0.0


def test_reordering_is_penalized():
    in_order = meteor("a b c d", "a b c d")
    shuffled = meteor("a b c d", "d c b a")
    assert shuffled < in_order


def test_identical_alignment_is_one_chunk():
    tokens = tokenize_texts("f ( a , b )")
    alignment = align(tokens, tokens, CFG.meteor)
    assert len(alignment.matches) == len(tokens)
    assert alignment.chunks == 1
    assert alignment.distance == 0


def test_multi_reference_takes_max():
    assert meteor(["alpha beta", "x"], "x") == pytest.approx(
        100.0 * (1.0 - CFG.meteor.gamma), abs=1e-9
    )


def test_porter_stemmer_known_pairs():
    cases = {
        "caresses": "caress",
        "ponies": "poni",
        "ties": "ti",
        "caress": "caress",
        "cats": "cat",
        "feed": "feed",
        "agreed": "agre",
        "plastered": "plaster",
        "motoring": "motor",
        "sing": "sing",
        "conflated": "conflat",
        "troubling": "troubl",
        "sized": "size",
        "hopping": "hop",
        "falling": "fall",
        "hissing": "hiss",
        "fizzed": "fizz",
        "happy": "happi",
        "relational": "relat",
        "conditional": "condit",
        "rational": "ration",
        "digitizer": "digit",
        "operator": "oper",
        "feudalism": "feudal",
        "formality": "formal",
        "triplicate": "triplic",
        "formative": "form",
        "electrical": "electr",
        "hopefulness": "hope",
        "goodness": "good",
        "revival": "reviv",
        "allowance": "allow",
        "inference": "infer",
        "adjustable": "adjust",
        "probate": "probat",
        "controll": "control",
        "roll": "roll",
    }
    for word, expected in cases.items():
        assert stem(word) == expected, word


@pytest.fixture(scope="module")
def fixture_cases():
    with open(FIXTURES / "meteor_cases.json", encoding="utf-8") as fh:
        return json.load(fh)


def test_fixture_pairs_match_frozen_oracle_values(fixture_cases):
    assert len(fixture_cases) == 20
    for case in fixture_cases:
        got = meteor(case["reference"], case["candidate"])
        assert got == pytest.approx(case["expected"], abs=1e-4), case


token = st.sampled_from(["x", "y", "z", "value", "values", "f", "(", ")", "="])


@settings(max_examples=60, deadline=None)
@given(st.lists(token, max_size=5), st.lists(token, max_size=5))
def test_beam_matches_exhaustive_alignment_on_small_pairs(hyp, ref):
    fast = 100.0 * meteor_score(hyp, ref, CFG.meteor)
    slow = meteor_exhaustive(hyp, ref, CFG.meteor)
    assert fast == pytest.approx(slow, abs=1e-9)
