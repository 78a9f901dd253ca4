import json

import numpy as np
import pytest

from adforge import psych
from adforge.errors import EmptyPopulation, TooFewLabels, ZeroVariance
from adforge.psych import (
    BowVocabulary,
    DesireEffects,
    LabeledAd,
    TreeEnsembleReg,
    bow_featurize,
    desire_effects,
    detect_cta_verbs,
    pearson,
    population_summary,
    predict_affect,
    train_arousal,
    train_valence,
)

WORKED_AD = (
    "Dry Cough relief - More information provided. "
    "Browse available information about dry cough relief. Check here."
)

EFFECT_EXAMPLES = [
    ("Science diet coupons - Up to 60% Off Now. Christmas Sales! Compare...", "petty_advantage"),
    ("Unbearable Smokeless Coals - Great Range, Fast Delivery...", "extra_convenience"),
    ("Jenny Craig Official Site - A Proven Plan For Weigh Loss...", "trustworthy"),
    ("Best Remedy For Cough - Updated 24/7...", "luxury_seeking"),
]


def separable_toy_set():
    pos = [
        "joy win delight", "win joy smile", "delight smile win", "joy delight happy",
        "happy win smile", "joy happy delight", "smile happy joy", "win delight happy",
        "joy win happy", "smile delight joy",
    ]
    neg = [
        "fear harm dread", "harm dread fear", "dread fear loss", "loss harm fear",
        "fear dread harm", "harm loss dread", "dread harm loss", "loss fear dread",
        "fear loss harm", "dread loss fear",
    ]
    return [LabeledAd(text=t, arousal=2.0, valence=2.0) for t in pos] + [
        LabeledAd(text=t, arousal=-2.0, valence=-2.0) for t in neg
    ]


def r_squared(model, labeled, attr):
    y = np.array([getattr(ad, attr) for ad in labeled])
    p = np.array([model.predict_text(ad.text) for ad in labeled])
    return 1.0 - ((y - p) ** 2).sum() / ((y - y.mean()) ** 2).sum()


# -- CTA ------------------------------------------------------------------------


def test_cta_worked_example():
    assert detect_cta_verbs(WORKED_AD) == {"browse", "check"}


def test_cta_requires_imperative_position():
    assert detect_cta_verbs("We provide a checkup") == set()
    # verb mid-sentence, not after punctuation or conjunction
    assert detect_cta_verbs("You should browse maybe") == set()
    # after a conjunction it counts
    assert detect_cta_verbs("Come and browse our offers") == {"browse"}


def test_cta_empty():
    assert detect_cta_verbs("") == set()


def test_cta_case_and_lemma_insensitive():
    assert detect_cta_verbs("CHECKED prices here. Browsing deals!") == {"check", "browse"}


# -- desire effects ----------------------------------------------------------------


@pytest.mark.parametrize("text,label", EFFECT_EXAMPLES)
def test_desire_effects_table_examples(text, label):
    assert label in desire_effects(text)


def test_percent_pattern_triggers_petty_advantage():
    assert desire_effects("Only 15% today") == {"petty_advantage"}
    assert desire_effects("fifteen percent maybe") == set()


def test_effects_custom_config(tmp_path):
    path = tmp_path / "effects.json"
    path.write_text(json.dumps({"custom": ["zebra"]}), encoding="utf-8")
    effects = DesireEffects.from_json_file(path)
    assert desire_effects("a zebra walks", effects) == {"custom"}


# -- bag of words ---------------------------------------------------------------------


def test_bow_out_of_vocabulary_zero():
    vocab = BowVocabulary(["check", "cough"])
    assert np.all(bow_featurize("totally unrelated words", vocab) == 0)


def test_bow_counts_occurrences():
    vocab = BowVocabulary(["check"])
    assert bow_featurize("check check", vocab)[0] == 2


def test_bow_vocab_built_from_training_set():
    vocab = BowVocabulary.build(["check this", "check that"], min_freq=1)
    assert "check" in vocab.index
    assert "this" in vocab.index


# -- affect models ----------------------------------------------------------------------


def test_too_few_labels():
    labeled = separable_toy_set()[:5]
    with pytest.raises(TooFewLabels):
        train_arousal(labeled)


def test_constant_labels_constant_predictor():
    labeled = [
        LabeledAd(text=f"word{i} filler text", arousal=1.0, valence=1.0) for i in range(12)
    ]
    model = train_arousal(labeled)
    preds = {model.predict_text(ad.text) for ad in labeled}
    assert preds == {1.0}


def test_separable_toy_fit():
    labeled = separable_toy_set()
    boosted = train_arousal(labeled)
    forest = train_valence(labeled)
    assert boosted.kind == "boosted"
    assert forest.kind == "forest"
    assert r_squared(boosted, labeled, "arousal") >= 0.9
    assert r_squared(forest, labeled, "valence") >= 0.9


def test_same_seed_identical_model_files(tmp_path):
    labeled = separable_toy_set()
    a = train_valence(labeled, n_trees=20, seed=3)
    b = train_valence(labeled, n_trees=20, seed=3)
    pa, pb = tmp_path / "a.json", tmp_path / "b.json"
    a.save(pa)
    b.save(pb)
    assert pa.read_bytes() == pb.read_bytes()


def test_predictions_clamped(affect_models):
    arousal, valence = affect_models
    for text in ["", "joy joy joy joy joy!", "dread dread dread"]:
        assert -2.0 <= predict_affect(arousal, text) <= 2.0
        assert -2.0 <= predict_affect(valence, text) <= 2.0


def test_empty_text_predicts_base_value(affect_models):
    arousal, _ = affect_models
    zero_vec_pred = predict_affect(arousal, "")
    assert -2.0 <= zero_vec_pred <= 2.0


def test_batch_equals_pointwise(affect_models):
    arousal, _ = affect_models
    texts = ["joy win", "dread loss", "plain words"]
    single = [predict_affect(arousal, t) for t in texts]
    again = [predict_affect(arousal, t) for t in texts]
    assert single == again


def test_model_json_round_trip(tmp_path, affect_models):
    arousal, _ = affect_models
    path = tmp_path / "arousal.json"
    arousal.save(path)
    loaded = TreeEnsembleReg.load(path)
    assert loaded.predict_text("joy win delight") == pytest.approx(
        arousal.predict_text("joy win delight")
    )


def test_forest_prediction_is_tree_mean(affect_models):
    _, valence = affect_models
    x = bow_featurize("joy win delight", valence.vocabulary)[None, :]
    votes = [t.predict(x)[0] for t in valence.ensemble.trees]
    raw = float(np.mean(votes))
    assert valence.ensemble.predict(x)[0] == pytest.approx(raw)


# -- pearson -------------------------------------------------------------------------------


def test_pearson_perfect_and_inverse():
    xs = [1.0, 2.0, 3.0, 4.0]
    assert pearson(xs, [2 * x for x in xs]) == pytest.approx(1.0)
    assert pearson(xs, [-x for x in xs]) == pytest.approx(-1.0)


def test_pearson_constant_raises():
    with pytest.raises(ZeroVariance):
        pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])


def test_pearson_scale_invariance():
    rng = np.random.default_rng(0)
    xs = rng.normal(size=10)
    ys = rng.normal(size=10)
    base = pearson(xs, ys)
    assert pearson(3.0 * xs + 1.0, ys) == pytest.approx(base)
    assert pearson(-2.0 * xs + 5.0, ys) == pytest.approx(-base)


# -- population summary ---------------------------------------------------------------------


def test_population_summary_fractions():
    report = population_summary({"pop": ["Check this out now", "no verbs here today"]})
    assert report["pop"]["cta_fraction"] == pytest.approx(0.5)


def test_population_summary_single_cta_ad():
    report = population_summary({"pop": ["Browse the offers"]})
    assert report["pop"]["cta_fraction"] == 1.0


def test_population_summary_empty_raises():
    with pytest.raises(EmptyPopulation):
        population_summary({"pop": []})


def test_population_summary_effect_fractions():
    report = population_summary(
        {"pop": ["Big discount today", "official site", "plain words"]}
    )
    fractions = report["pop"]["effect_fractions"]
    assert fractions["petty_advantage"] == pytest.approx(1 / 3)
    assert fractions["trustworthy"] == pytest.approx(1 / 3)


def test_population_summary_includes_affect(affect_models):
    arousal, valence = affect_models
    report = population_summary(
        {"pop": ["joy win delight now"]}, arousal_model=arousal, valence_model=valence
    )
    assert -2.0 <= report["pop"]["mean_arousal"] <= 2.0
    assert -2.0 <= report["pop"]["mean_valence"] <= 2.0


def test_sample_labeled_loads():
    labeled = psych.sample_labeled()
    assert len(labeled) >= 40
    assert all(-2 <= ad.arousal <= 2 and -2 <= ad.valence <= 2 for ad in labeled)
