from __future__ import annotations

import numpy as np
import pytest


def pytest_runtest_logreport(report):
    """One visible pass/fail line per acceptance criterion."""
    if report.when == "call" and "test_acceptance" in report.nodeid:
        status = "PASS" if report.passed else "FAIL"
        name = report.nodeid.split("::")[-1]
        print(f"\n[{status}] acceptance: {name}")

from adforge import pipeline, psych, ranker, seq2seq
from adforge.corpus import Ad


def make_ad(
    ad_id="a1",
    query="cough remedy",
    domain="MS",
    titles=("Best Remedy For Cough", "Updated 24/7"),
    descriptions=("Search for best remedy for cough. Browse it Now!",),
    impressions=1000,
    clicks=30,
    url=None,
) -> Ad:
    return Ad(
        id=ad_id,
        query=query,
        domain=domain,
        titles=list(titles),
        descriptions=list(descriptions),
        impressions=impressions,
        clicks=clicks,
        url=url,
    )


# Words deliberately absent from the gazetteer and fixed points of the
# lemmatizer, so normalize() maps the toy sources to themselves and the
# memorized model behaves identically inside run_translator.
TOY_CONDITIONS = ["soreness", "stiffness", "dizziness", "numbness", "dryness", "tightness"]
TOY_VERBS = ["check", "browse", "learn", "discover", "get", "try"]


def toy_text_pairs(n=6) -> list[seq2seq.TextPair]:
    return [
        seq2seq.TextPair(
            source=f"{c} relief. expert {c} info.",
            target=f"{v} top {c} remedy now!",
            query_id=f"q{i}",
        )
        for i, (c, v) in enumerate(zip(TOY_CONDITIONS[:n], TOY_VERBS[:n]))
    ]


@pytest.fixture(scope="session")
def toy_translator() -> seq2seq.TrainedModel:
    """A small memorized model shared by pipeline/service tests."""
    cfg = seq2seq.TrainConfig(
        d_emb=32, d_hid=32, epochs=1500, lr=3e-3, min_freq=1, seed=5, loss_target=0.008
    )
    return seq2seq.train(toy_text_pairs(), cfg)


@pytest.fixture(scope="session")
def affect_models() -> tuple[psych.TreeEnsembleReg, psych.TreeEnsembleReg]:
    labeled = psych.sample_labeled()
    return (
        psych.train_arousal(labeled),
        psych.train_valence(labeled, n_trees=100),  # smaller forest keeps tests quick
    )


@pytest.fixture(scope="session")
def small_ranker() -> ranker.GbmRankModel:
    rng = np.random.default_rng(11)
    groups = []
    for q in range(12):
        feats = rng.uniform(0, 1, size=(5, 9))
        ctrs = 0.01 + 0.1 * feats[:, 0]
        groups.append(ranker.RankingGroup(query_id=f"q{q}", features=feats, ctrs=ctrs))
    dataset = ranker.RankingDataset(groups=groups)
    return ranker.train_lambdamart(dataset, ranker.RankerConfig(n_trees=40, seed=1))


@pytest.fixture(scope="session")
def toy_bundle(toy_translator, affect_models, small_ranker) -> pipeline.ModelBundle:
    bundle = pipeline.ModelBundle.fresh()
    bundle.translators = {"MS": toy_translator, "PH": toy_translator}
    bundle.ctr_ranker = small_ranker
    bundle.arousal, bundle.valence = affect_models
    return bundle
