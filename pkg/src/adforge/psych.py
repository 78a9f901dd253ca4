"""Psychological annotation: CTA verbs, desire-effect keywords, and
arousal/valence regression over bag-of-words features."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import textproc
from .errors import EmptyPopulation, TooFewLabels, ZeroVariance
from .trees import BoostedTrees, RandomForest, fit_boosted, fit_forest

AFFECT_RANGE = (-2.0, 2.0)

_PERCENT_RE = re.compile(r"^\d+(\.\d+)?%$")

# Imperative-position heuristic: a CTA verb counts when it opens a
# sentence or follows punctuation or a conjunction.
_CONJUNCTIONS = {"and", "or", "but", "then", "&", "plus", "so"}


def _load_data(name: str) -> str:
    return resources.files("adforge.data").joinpath(name).read_text(encoding="utf-8")


@dataclass(frozen=True)
class CtaLexicon:
    verbs: frozenset[str]

    @classmethod
    def default(cls) -> "CtaLexicon":
        verbs = {
            line.strip().lower()
            for line in _load_data("cta_verbs.txt").splitlines()
            if line.strip() and not line.startswith("#")
        }
        return cls(verbs=frozenset(verbs))


@dataclass(frozen=True)
class DesireEffects:
    groups: dict[str, tuple[str, ...]]

    @classmethod
    def default(cls) -> "DesireEffects":
        data = json.loads(_load_data("desire_effects.json"))
        return cls(groups={k: tuple(v) for k, v in data.items()})

    @classmethod
    def from_json_file(cls, path) -> "DesireEffects":
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        return cls(groups={k: tuple(v) for k, v in data.items()})


@dataclass
class LabeledAd:
    text: str
    arousal: float
    valence: float
    cta: list[str] = field(default_factory=list)

    def __post_init__(self):
        lo, hi = AFFECT_RANGE
        if not (lo <= self.arousal <= hi and lo <= self.valence <= hi):
            raise ValueError("affect scores must lie in [-2, 2]")

    @classmethod
    def from_json(cls, data: dict) -> "LabeledAd":
        return cls(
            text=data["text"],
            arousal=float(data["arousal"]),
            valence=float(data["valence"]),
            cta=list(data.get("cta", [])),
        )

    def to_json(self) -> dict:
        return {"text": self.text, "arousal": self.arousal, "valence": self.valence, "cta": self.cta}


def load_labeled(path) -> list[LabeledAd]:
    ads = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                ads.append(LabeledAd.from_json(json.loads(line)))
    return ads


def sample_labeled() -> list[LabeledAd]:
    """The small hand-labeled set shipped with the package."""
    return [
        LabeledAd.from_json(json.loads(line))
        for line in _load_data("labeled_ads_sample.jsonl").splitlines()
        if line.strip()
    ]


def detect_cta_verbs(ad_text: str, lexicon: CtaLexicon | None = None) -> set[str]:
    """Base-form CTA verbs in imperative position."""
    lexicon = lexicon or CtaLexicon.default()
    tokens = textproc.tokenize(ad_text)
    found: set[str] = set()
    for i, tok in enumerate(tokens):
        if tok.kind != "word" or tok.base not in lexicon.verbs:
            continue
        if i == 0:
            found.add(tok.base)
            continue
        prev = tokens[i - 1]
        if prev.kind == "punct" or prev.surface.lower() in _CONJUNCTIONS:
            found.add(tok.base)
    return found


def desire_effects(ad_text: str, effects: DesireEffects | None = None) -> set[str]:
    """Effect labels whose keywords appear as whole-word lemma matches.

    The petty-advantage percent pattern matches any ``<number>%`` token.
    """
    effects = effects or DesireEffects.default()
    tokens = textproc.tokenize(ad_text)
    lemmas = {t.base for t in tokens if t.kind == "word"}
    labels = set()
    for label, keywords in effects.groups.items():
        if any(kw in lemmas for kw in keywords):
            labels.add(label)
    if any(_PERCENT_RE.match(t.surface) for t in tokens):
        labels.add("petty_advantage")
    return labels


class BowVocabulary:
    """Lemma-token index for bag-of-words count vectors."""

    def __init__(self, tokens: list[str]):
        self.tokens = list(tokens)
        self.index = {tok: i for i, tok in enumerate(self.tokens)}

    def __len__(self) -> int:
        return len(self.tokens)

    @classmethod
    def build(cls, texts: list[str], min_freq: int = 1) -> "BowVocabulary":
        counts: dict[str, int] = {}
        for text in texts:
            for tok in textproc.tokenize(text):
                if tok.kind in ("word", "number", "placeholder"):
                    counts[tok.base] = counts.get(tok.base, 0) + 1
        kept = sorted(
            (t for t, n in counts.items() if n >= min_freq),
            key=lambda t: (-counts[t], t),
        )
        return cls(kept)

    def to_json(self) -> list[str]:
        return list(self.tokens)

    @classmethod
    def from_json(cls, data: list[str]) -> "BowVocabulary":
        return cls(list(data))


def bow_featurize(text: str, vocabulary: BowVocabulary) -> np.ndarray:
    vector = np.zeros(len(vocabulary))
    for tok in textproc.tokenize(text):
        if tok.kind in ("word", "number", "placeholder"):
            idx = vocabulary.index.get(tok.base)
            if idx is not None:
                vector[idx] += 1.0
    return vector


@dataclass
class TreeEnsembleReg:
    """An affect regressor: tree ensemble plus its bag-of-words featurizer."""

    kind: str  # boosted | forest
    ensemble: BoostedTrees | RandomForest
    vocabulary: BowVocabulary

    def predict_text(self, text: str) -> float:
        x = bow_featurize(text, self.vocabulary)[None, :]
        lo, hi = AFFECT_RANGE
        return float(np.clip(self.ensemble.predict(x)[0], lo, hi))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "vocabulary": self.vocabulary.to_json(),
            "ensemble": self.ensemble.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "TreeEnsembleReg":
        ensemble_cls = BoostedTrees if data["kind"] == "boosted" else RandomForest
        return cls(
            kind=data["kind"],
            ensemble=ensemble_cls.from_json(data["ensemble"]),
            vocabulary=BowVocabulary.from_json(data["vocabulary"]),
        )

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, sort_keys=True)

    @classmethod
    def load(cls, path) -> "TreeEnsembleReg":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


MIN_LABELED = 10


def _bow_matrix(labeled: list[LabeledAd]) -> tuple[np.ndarray, BowVocabulary]:
    if len(labeled) < MIN_LABELED:
        raise TooFewLabels(f"need at least {MIN_LABELED} labeled ads, got {len(labeled)}")
    vocab = BowVocabulary.build([ad.text for ad in labeled], min_freq=1)
    X = np.stack([bow_featurize(ad.text, vocab) for ad in labeled])
    return X, vocab


def train_arousal(
    labeled: list[LabeledAd], n_trees: int = 100, shrinkage: float = 0.2
) -> TreeEnsembleReg:
    X, vocab = _bow_matrix(labeled)
    y = np.array([ad.arousal for ad in labeled])
    ensemble = fit_boosted(X, y, n_trees=n_trees, shrinkage=shrinkage)
    return TreeEnsembleReg(kind="boosted", ensemble=ensemble, vocabulary=vocab)


def train_valence(
    labeled: list[LabeledAd], n_trees: int = 500, seed: int = 0
) -> TreeEnsembleReg:
    X, vocab = _bow_matrix(labeled)
    y = np.array([ad.valence for ad in labeled])
    ensemble = fit_forest(X, y, n_trees=n_trees, seed=seed)
    return TreeEnsembleReg(kind="forest", ensemble=ensemble, vocabulary=vocab)


def predict_affect(model: TreeEnsembleReg, text: str) -> float:
    return model.predict_text(text)


def pearson(xs, ys) -> float:
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("pearson needs two equal-length vectors")
    xc = x - x.mean()
    yc = y - y.mean()
    denom = np.sqrt((xc @ xc) * (yc @ yc))
    if denom == 0.0:
        raise ZeroVariance("pearson is undefined for constant input")
    return float((xc @ yc) / denom)


def population_summary(
    populations: dict[str, list[str]],
    arousal_model: TreeEnsembleReg | None = None,
    valence_model: TreeEnsembleReg | None = None,
    cta_lexicon: CtaLexicon | None = None,
    effects: DesireEffects | None = None,
) -> dict:
    """Per-population CTA share, mean affect and desire-effect shares."""
    cta_lexicon = cta_lexicon or CtaLexicon.default()
    effects = effects or DesireEffects.default()
    report: dict[str, dict] = {}
    for name, texts in populations.items():
        if not texts:
            raise EmptyPopulation(f"population {name!r} is empty")
        n = len(texts)
        cta_hits = sum(1 for t in texts if detect_cta_verbs(t, cta_lexicon))
        effect_hits = {label: 0 for label in effects.groups}
        for t in texts:
            for label in desire_effects(t, effects):
                effect_hits[label] = effect_hits.get(label, 0) + 1
        entry: dict = {
            "count": n,
            "cta_fraction": cta_hits / n,
            "effect_fractions": {k: v / n for k, v in sorted(effect_hits.items())},
        }
        if arousal_model is not None:
            entry["mean_arousal"] = float(
                np.mean([arousal_model.predict_text(t) for t in texts])
            )
        if valence_model is not None:
            entry["mean_valence"] = float(
                np.mean([valence_model.predict_text(t) for t in texts])
            )
        report[name] = entry
    return report
