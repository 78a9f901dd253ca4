"""Synthetic corpus generation and the desk-scale offline evaluation run:
k-fold ranker validation, four-way variant ranking, rank aggregation and
psych population summaries.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import features, pipeline, psych, ranker
from .corpus import Ad, group_by_query, save_corpus
from .errors import ConfigError
from .pipeline import ModelBundle, VARIANT_ORDER

MS_TOPICS = [
    "cough", "vertigo", "fatigue", "earache", "migraine", "heartburn",
    "insomnia", "asthma", "allergy", "eczema", "back pain", "sore throat",
]
PH_TOPICS = [
    "weight loss", "flu shot", "vaccination", "birth control", "diabetes",
    "blood sugar", "cholesterol", "high blood pressure", "smoking cessation",
    "cancer screening",
]

# Each slot offers an easy and a hard phrasing; the complexity knob picks
# between them, which drives readability (and through it the planted CTR).
_TITLE_EASY = ["Fast {topic} Help", "Top {topic} Tips", "Easy {topic} Fixes", "Quick {topic} Care"]
_TITLE_HARD = [
    "Comprehensive {topic} Documentation",
    "Authoritative {topic} Terminology Overview",
    "Multidisciplinary {topic} Considerations",
    "Epidemiological {topic} Investigations",
]
_SECOND_EASY = ["Updated 24/7", "New Deals Today", "Free Advice Now", "Plain Facts Here"]
_SECOND_HARD = [
    "Systematically Consolidated References",
    "Institutionally Accredited Material",
    "Extensively Annotated Bibliography",
    "Rigorously Validated Methodology",
]
_DESC_EASY = [
    "Check these simple tips now!",
    "See the best plan for you. Try it today!",
    "Get help fast. Browse our easy guide now!",
    "Learn what works. Start today!",
]
_DESC_HARD = [
    "Understanding multifactorial considerations surrounding contemporary management recommendations.",
    "Longitudinal observational investigations characterizing heterogeneous population outcomes.",
    "Methodologically sophisticated documentation summarizing institutional deliberations.",
    "Comprehensive dissemination of authoritative interdisciplinary recommendations.",
]


@dataclass(frozen=True)
class SynthConfig:
    n_queries: int = 50
    ads_per_query: int = 6
    ms_fraction: float = 0.5
    ctr_base: float = 0.02
    fk_ease_weight: float = 0.0012  # CTR points per reading-ease point
    noise_sigma: float = 0.004
    min_impressions: int = 800
    max_impressions: int = 2000
    seed: int = 0

    def __post_init__(self):
        if self.ads_per_query < 5:
            raise ConfigError("ads_per_query must be at least 5")
        if self.n_queries < 1:
            raise ConfigError("n_queries must be positive")
        if not 0.0 <= self.ms_fraction <= 1.0:
            raise ConfigError("ms_fraction must lie in [0, 1]")


_PAGE_TEMPLATE = """<html>
<head><title>{title}</title></head>
<body>
<div class="header location">
<p>Menu</p>
</div>
<div class="article-content">
<p>{para1}</p>
<p>{para2}</p>
</div>
<div class="footer copyright">
<p>All rights reserved. Contact and legal information.</p>
</div>
</body>
</html>
"""


def _pick(rng: np.random.Generator, easy: list[str], hard: list[str], complexity: float) -> str:
    bank = hard if rng.random() < complexity else easy
    return bank[int(rng.integers(0, len(bank)))]


def _title_case(topic: str) -> str:
    return " ".join(w.capitalize() for w in topic.split())


def generate_corpus(config: SynthConfig, out_dir) -> list[Ad]:
    """Write ``corpus.jsonl`` plus one fixture page per query under
    ``pages/``; CTR follows reading ease through the planted linear model.
    """
    rng = np.random.default_rng(config.seed)
    out_dir = Path(out_dir)
    pages_dir = out_dir / "pages"
    pages_dir.mkdir(parents=True, exist_ok=True)

    ads: list[Ad] = []
    n_ms = round(config.n_queries * config.ms_fraction)
    for q_idx in range(config.n_queries):
        domain = "MS" if q_idx < n_ms else "PH"
        topics = MS_TOPICS if domain == "MS" else PH_TOPICS
        topic = topics[q_idx % len(topics)]
        query = f"{topic} advice {q_idx}"
        page_path = pages_dir / f"q{q_idx}.html"
        page_path.write_text(
            _PAGE_TEMPLATE.format(
                title=f"{_title_case(topic)} Guide",
                para1=f"Everything you need to know about {topic} in one place, "
                f"written in plain language by health editors.",
                para2=f"Simple steps, common questions and practical help for {topic}, "
                f"reviewed and updated through the year.",
            ),
            encoding="utf-8",
        )
        for a_idx in range(config.ads_per_query):
            complexity = a_idx / (config.ads_per_query - 1)
            titled = _title_case(topic)
            titles = [
                _pick(rng, _TITLE_EASY, _TITLE_HARD, complexity).format(topic=titled),
                _pick(rng, _SECOND_EASY, _SECOND_HARD, complexity),
            ]
            descriptions = [_pick(rng, _DESC_EASY, _DESC_HARD, complexity)]
            ad = Ad(
                id=f"ad-{q_idx:03d}-{a_idx}",
                query=query,
                domain=domain,
                titles=titles,
                descriptions=descriptions,
                impressions=int(rng.integers(config.min_impressions, config.max_impressions + 1)),
                clicks=0,
                url=f"pages/q{q_idx}.html",
            )
            ease = features.flesch_reading_ease(pipeline.concat_text(ad))
            ctr = config.ctr_base + config.fk_ease_weight * max(0.0, ease) + rng.normal(
                0.0, config.noise_sigma
            )
            ctr = float(np.clip(ctr, 0.001, 0.35))
            ad.clicks = int(rng.binomial(ad.impressions, ctr))
            ads.append(ad)
    save_corpus(ads, out_dir / "corpus.jsonl")
    return ads


@dataclass
class EvalReport:
    n_ads: int
    n_queries: int
    kt_folds: list[float]
    kt_mean: float
    kt_random_baseline: float
    kemeny_order: list[str]
    rank_shares: dict[str, list[float]]  # variant -> share at ranks 1..4
    psych_summary: dict
    tie_convention: str = (
        "probabilities closer than 0.1 share a rank via transitive closure"
    )

    def to_json(self) -> dict:
        return {
            "n_ads": self.n_ads,
            "n_queries": self.n_queries,
            "kt_folds": self.kt_folds,
            "kt_mean": self.kt_mean,
            "kt_random_baseline": self.kt_random_baseline,
            "kemeny_order": self.kemeny_order,
            "rank_shares": self.rank_shares,
            "psych_summary": self.psych_summary,
            "tie_convention": self.tie_convention,
        }


def dataset_from_ads(ads: list[Ad]) -> ranker.RankingDataset:
    """Feature every ad's concatenated text, grouped by query."""
    groups = []
    for query, group in group_by_query(ads).items():
        mats = [
            features.extract_features(pipeline.concat_text(ad)).values() for ad in group
        ]
        groups.append(
            ranker.RankingGroup(
                query_id=query,
                features=np.array(mats),
                ctrs=np.array([ad.ctr() for ad in group]),
            )
        )
    return ranker.RankingDataset(groups=groups)


def random_ordering_baseline(dataset: ranker.RankingDataset, seed: int = 1) -> float:
    """Mean tau of seeded random scores against true CTR order."""
    rng = np.random.default_rng(seed)
    taus = [
        ranker.kendall_tau(rng.permutation(len(g.ctrs)), g.ctrs) for g in dataset.groups
    ]
    return float(np.mean(taus))


def offline_eval(
    ads: list[Ad],
    bundle: ModelBundle,
    k: int = 5,
    config: ranker.RankerConfig = ranker.RankerConfig(),
    corpus_root: Path | None = None,
) -> EvalReport:
    """The paper-procedure evaluation on a desk-scale corpus.

    Trains/validates the CTR ranker on the human-authored ads, builds a
    variant set per ad, aggregates rank shares and the Kemeny-Young
    consensus order, and summarizes psych annotations per population.
    """
    dataset = dataset_from_ads(ads)
    kt_folds, kt_mean = ranker.cross_validate(dataset, k=k, config=config)
    kt_random = random_ordering_baseline(dataset, seed=config.seed + 1)

    bundle.ctr_ranker = ranker.train_lambdamart(dataset, config)
    if bundle.arousal is None:
        bundle.arousal = psych.train_arousal(psych.sample_labeled())
    if bundle.valence is None:
        bundle.valence = psych.train_valence(psych.sample_labeled())

    variant_sets = []
    for ad in ads:
        html = None
        if ad.url and corpus_root is not None and bundle.generator is not None:
            page = corpus_root / ad.url
            if page.exists():
                html = page.read_text(encoding="utf-8")
        variant_sets.append(pipeline.build_variant_set(ad, bundle, html=html))

    present = [
        name
        for name in VARIANT_ORDER
        if any(name in vs.variants for vs in variant_sets)
    ]
    shares: dict[str, list[float]] = {}
    for name in present:
        counts = [0, 0, 0, 0]
        total = 0
        for vs in variant_sets:
            variant = vs.variants.get(name)
            if variant is None or variant.rank is None:
                continue
            counts[variant.rank - 1] += 1
            total += 1
        if total:
            shares[name] = [c / total for c in counts]

    prefs = ranker.PreferenceMatrix.empty(present)
    for vs in variant_sets:
        ranks = vs.ranks()
        if len(ranks) >= 2:
            prefs.add_ranked_vote(ranks)
    kemeny = ranker.kemeny_young(prefs) if present else []

    populations = {
        name: [vs.variants[name].realized for vs in variant_sets if name in vs.variants]
        for name in present
    }
    summary = psych.population_summary(
        populations,
        arousal_model=bundle.arousal,
        valence_model=bundle.valence,
        cta_lexicon=bundle.cta_lexicon,
        effects=bundle.effects,
    )

    return EvalReport(
        n_ads=len(ads),
        n_queries=len(dataset.groups),
        kt_folds=kt_folds,
        kt_mean=kt_mean,
        kt_random_baseline=kt_random,
        kemeny_order=kemeny,
        rank_shares=shares,
        psych_summary=summary,
    )


def emit_report(report: EvalReport, out_dir) -> list[Path]:
    """Write report.json, report.csv and rank_shares.csv; returns paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    json_path = out_dir / "report.json"
    json_path.write_text(
        json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )

    csv_path = out_dir / "report.csv"
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["metric", "value"])
        writer.writerow(["n_ads", report.n_ads])
        writer.writerow(["n_queries", report.n_queries])
        writer.writerow(["kt_mean", repr(report.kt_mean)])
        writer.writerow(["kt_random_baseline", repr(report.kt_random_baseline)])
        for i, v in enumerate(report.kt_folds):
            writer.writerow([f"kt_fold_{i}", repr(v)])
        writer.writerow(["kemeny_order", " > ".join(report.kemeny_order)])

    shares_path = out_dir / "rank_shares.csv"
    with open(shares_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["variant", "rank1", "rank2", "rank3", "rank4"])
        for name, row in report.rank_shares.items():
            writer.writerow([name] + [repr(v) for v in row])

    psych_path = out_dir / "psych_summary.csv"
    effect_labels = sorted(
        {
            label
            for entry in report.psych_summary.values()
            for label in entry.get("effect_fractions", {})
        }
    )
    with open(psych_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["variant", "count", "cta_fraction", "mean_arousal", "mean_valence"]
            + effect_labels
        )
        for name, entry in report.psych_summary.items():
            row = [
                name,
                entry.get("count", ""),
                repr(entry["cta_fraction"]) if "cta_fraction" in entry else "",
                repr(entry["mean_arousal"]) if "mean_arousal" in entry else "",
                repr(entry["mean_valence"]) if "mean_valence" in entry else "",
            ]
            fractions = entry.get("effect_fractions", {})
            row += [repr(fractions[label]) if label in fractions else "" for label in effect_labels]
            writer.writerow(row)

    return [json_path, csv_path, shares_path, psych_path]


def load_report(path) -> dict:
    with open(Path(path) / "report.json", encoding="utf-8") as fh:
        return json.load(fh)
