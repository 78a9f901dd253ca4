import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from adforge import features
from adforge.errors import EmptyText
from adforge.features import (
    coleman_liau_index,
    count_syllables,
    dale_chall_score,
    difficult_word_count,
    extract_features,
    flesch_kincaid_grade,
    flesch_reading_ease,
    lexical_diversity,
    linsear_write_grade,
    readability_consensus,
    sentiment_compound,
    surface_counts,
)

SENTENCE_A = "The cat sat on the mat."
# 6 words / 1 sentence / 6 syllables / 17 letters / 0 difficult words
SENTENCE_B = "Discover remarkable remedies today. Order quickly!"
# 6 words / 2 sentences / 16 syllables / 43 letters / 3 difficult words


@pytest.mark.parametrize(
    "word,syllables",
    [
        ("cat", 1),
        ("remedy", 3),
        ("delivery", 4),
        ("the", 1),
        ("table", 2),
        ("free", 1),
        ("understanding", 4),
        ("discover", 3),
        ("remarkable", 4),
        ("quickly", 2),
    ],
)
def test_count_syllables(word, syllables):
    assert count_syllables(word) == syllables


def test_flesch_reading_ease_golden():
    assert flesch_reading_ease(SENTENCE_A) == pytest.approx(116.145, abs=0.01)


def test_flesch_kincaid_grade_golden():
    # 0.39*6 + 11.8*1 - 15.59
    assert flesch_kincaid_grade(SENTENCE_A) == pytest.approx(-1.45, abs=0.01)


def test_readability_second_fixture_hand_computed():
    # 6 words, 2 sentences, 16 syllables
    assert flesch_reading_ease(SENTENCE_B) == pytest.approx(
        206.835 - 1.015 * 3 - 84.6 * (16 / 6), abs=1e-9
    )
    assert flesch_kincaid_grade(SENTENCE_B) == pytest.approx(
        0.39 * 3 + 11.8 * (16 / 6) - 15.59, abs=1e-9
    )


def test_empty_text_raises():
    for fn in (flesch_reading_ease, flesch_kincaid_grade, readability_consensus,
               lexical_diversity):
        with pytest.raises(EmptyText):
            fn("")


def test_difficult_words_counted_per_occurrence():
    assert difficult_word_count("understanding understanding") == 2
    assert difficult_word_count(SENTENCE_A) == 0
    assert difficult_word_count("") == 0
    assert difficult_word_count(SENTENCE_B) == 3


def test_consensus_is_median_of_three():
    # hand computation on SENTENCE_A: DC=0.2976, LW=2.0, CLI=-4.0733...
    assert dale_chall_score(SENTENCE_A) == pytest.approx(0.0496 * 6, abs=1e-9)
    assert linsear_write_grade(SENTENCE_A) == pytest.approx(2.0, abs=1e-9)
    assert coleman_liau_index(SENTENCE_A) == pytest.approx(
        0.0588 * (1700 / 6) - 0.296 * (100 / 6) - 15.8, abs=1e-9
    )
    assert readability_consensus(SENTENCE_A) == pytest.approx(0.0496 * 6, abs=1e-9)


def test_consensus_second_fixture_hand_computed():
    # 3 difficult of 6 words -> 50% > 5 -> +3.6365; LW=(12/2-2)/2; CLI from 43 letters
    dc = 0.1579 * 50 + 0.0496 * 3 + 3.6365
    lw = 2.0
    cli = 0.0588 * (4300 / 6) - 0.296 * (200 / 6) - 15.8
    assert dale_chall_score(SENTENCE_B) == pytest.approx(dc, abs=1e-9)
    assert linsear_write_grade(SENTENCE_B) == pytest.approx(lw, abs=1e-9)
    assert coleman_liau_index(SENTENCE_B) == pytest.approx(cli, abs=1e-9)
    assert readability_consensus(SENTENCE_B) == pytest.approx(
        sorted([dc, lw, cli])[1], abs=1e-9
    )


def test_single_word_no_division_by_zero():
    value = readability_consensus("word")
    assert math.isfinite(value)


def test_sentiment_no_lexicon_words_is_zero():
    assert sentiment_compound("plain ordinary filler words") == 0.0


def test_sentiment_great_matches_formula():
    assert sentiment_compound("great") == pytest.approx(3.1 / math.sqrt(3.1**2 + 15), abs=1e-9)


def test_sentiment_negation_flips_sign():
    assert sentiment_compound("not great") < 0
    v = -3.1 * 0.74
    assert sentiment_compound("not great") == pytest.approx(v / math.sqrt(v * v + 15), abs=1e-9)


def test_sentiment_booster_amplifies():
    assert sentiment_compound("very great") > sentiment_compound("great")
    assert sentiment_compound("very bad") < sentiment_compound("bad")


def test_sentiment_exclamation_follows_total_sign():
    assert sentiment_compound("great!") > sentiment_compound("great")
    assert sentiment_compound("bad!") < sentiment_compound("bad")
    # cap at four exclamation marks
    assert sentiment_compound("great!!!!") == sentiment_compound("great!!!!!")


@given(st.text(max_size=60))
def test_sentiment_bounded(text):
    assert -1.0 <= sentiment_compound(text) <= 1.0


def test_lexical_diversity_examples():
    assert lexical_diversity("check here check now") == pytest.approx(0.75)
    assert lexical_diversity("all distinct words here") == 1.0


def test_surface_counts_examples():
    assert surface_counts("good remedy") == (0, 1, 1)
    assert surface_counts("!!!") == (3, 0, 0)
    assert surface_counts("") == (0, 0, 0)


def test_surface_counts_det_adj_noun_run():
    # DET ADJ NOUN NOUN is one maximal noun phrase
    punct, nps, adjs = surface_counts("the good remedy works. check here")
    assert (punct, nps, adjs) == (1, 1, 1)


def test_extract_features_assembles_everything():
    vec = extract_features(SENTENCE_B)
    assert vec.fk_ease == pytest.approx(flesch_reading_ease(SENTENCE_B))
    assert vec.difficult_words == 3
    assert vec.punct_count == 2
    assert 0 < vec.lexical_diversity <= 1
    assert all(math.isfinite(v) for v in vec.values())


def test_extract_features_deterministic():
    assert extract_features(SENTENCE_B) == extract_features(SENTENCE_B)


def test_extract_features_whitespace_only_raises():
    with pytest.raises(EmptyText):
        extract_features("   ")
    with pytest.raises(EmptyText):
        extract_features("?!")


def test_duplication_keeps_readability_fixed():
    doubled = SENTENCE_A + " " + SENTENCE_A
    assert flesch_reading_ease(doubled) == pytest.approx(flesch_reading_ease(SENTENCE_A))
    assert flesch_kincaid_grade(doubled) == pytest.approx(flesch_kincaid_grade(SENTENCE_A))
    assert lexical_diversity(doubled) <= lexical_diversity(SENTENCE_A)


_AD_WORDS = st.lists(
    st.sampled_from("great bad check cough remedy now deal top tips free !".split()),
    min_size=1,
    max_size=15,
)


@given(words=_AD_WORDS)
def test_features_total_on_nonempty(words):
    text = " ".join(words)
    if not any(w != "!" for w in words):
        return
    vec = extract_features(text)
    assert all(math.isfinite(v) for v in vec.values())


def test_feature_vector_json_fields():
    payload = extract_features(SENTENCE_A).to_json()
    assert sorted(payload) == sorted(features.FeatureVector.NAMES)
