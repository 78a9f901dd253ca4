"""LambdaMART ranking over ad features, plus the rank-analysis helpers:
within-group probabilities, the 0.1 tie rule, Kendall tau-b and exact
Kemeny-Young aggregation.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadFoldCount, DegenerateDataset
from .features import FeatureVector
from .trees import RegressionTree, fit_tree

N_GRADES = 5
TIE_GAP = 0.1  # probabilities closer than this share a rank


@dataclass
class RankingGroup:
    query_id: str
    features: np.ndarray  # (n_items, n_features)
    ctrs: np.ndarray  # (n_items,)


@dataclass
class RankingDataset:
    groups: list[RankingGroup]
    feature_names: list[str] = field(default_factory=lambda: list(FeatureVector.NAMES))

    def __post_init__(self):
        for g in self.groups:
            if len(g.ctrs) < 2:
                raise DegenerateDataset(f"group {g.query_id} has fewer than 2 items")


@dataclass(frozen=True)
class RankerConfig:
    n_trees: int = 200
    shrinkage: float = 0.1
    max_depth: int = 4
    min_leaf: int = 5
    seed: int = 0


@dataclass
class GbmRankModel:
    trees: list[RegressionTree]
    shrinkage: float
    feature_names: list[str]
    train_ndcg: list[float] = field(default_factory=list)

    def predict(self, features: np.ndarray) -> np.ndarray:
        X = np.asarray(features, dtype=float)
        single = X.ndim == 1
        if single:
            X = X[None, :]
        scores = np.zeros(X.shape[0])
        for tree in self.trees:
            scores += self.shrinkage * tree.predict(X)
        return scores[0] if single else scores

    def to_json(self) -> dict:
        return {
            "shrinkage": self.shrinkage,
            "feature_names": self.feature_names,
            "trees": [t.to_json() for t in self.trees],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GbmRankModel":
        return cls(
            trees=[RegressionTree.from_json(t) for t in data["trees"]],
            shrinkage=data["shrinkage"],
            feature_names=list(data["feature_names"]),
        )

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, sort_keys=True)

    @classmethod
    def load(cls, path) -> "GbmRankModel":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def grade_from_ctr(ctrs) -> list[int]:
    """Quintile relevance grades 0..4 within one group; equal CTRs share."""
    ctrs = list(ctrs)
    n = len(ctrs)
    if n == 1:
        return [0]
    grades = []
    for value in ctrs:
        below = sum(1 for other in ctrs if other < value)
        grades.append((N_GRADES - 1) * below // (n - 1))
    return grades


def _dcg_positions(n: int) -> np.ndarray:
    return 1.0 / np.log2(np.arange(n) + 2.0)


def _group_ndcg(scores: np.ndarray, grades: np.ndarray) -> float:
    gains = 2.0**grades - 1.0
    discounts = _dcg_positions(len(grades))
    idcg = float(np.sort(gains)[::-1] @ discounts)
    if idcg == 0.0:
        return 0.0
    dcg = float(gains[np.argsort(-scores, kind="stable")] @ discounts)
    return dcg / idcg


def _lambda_targets(scores: np.ndarray, grades: np.ndarray) -> np.ndarray:
    """Pairwise lambda contributions, NDCG-weighted, sigma = 1.

    Each strict grade pair pushes the better item's score up and the
    worse item's down by |delta NDCG| / (1 + exp(s_hi - s_lo)).
    """
    n = len(scores)
    lambdas = np.zeros(n)
    gains = 2.0**grades - 1.0
    max_gain = np.sort(gains)[::-1]
    discounts = _dcg_positions(n)
    idcg = float(max_gain @ discounts)
    if idcg == 0.0:
        return lambdas
    positions = np.empty(n, dtype=int)
    positions[np.argsort(-scores, kind="stable")] = np.arange(n)
    for i in range(n):
        for j in range(n):
            if grades[i] <= grades[j]:
                continue
            rho = 1.0 / (1.0 + math.exp(scores[i] - scores[j]))
            delta = abs(
                (gains[i] - gains[j])
                * (discounts[positions[i]] - discounts[positions[j]])
            ) / idcg
            lambdas[i] += rho * delta
            lambdas[j] -= rho * delta
    return lambdas


def train_lambdamart(
    dataset: RankingDataset, config: RankerConfig = RankerConfig()
) -> GbmRankModel:
    """Boosted regression trees fit to NDCG-weighted lambda gradients."""
    grades_per_group = [np.array(grade_from_ctr(g.ctrs), dtype=float) for g in dataset.groups]
    if not any(len(set(g)) > 1 for g in grades_per_group):
        raise DegenerateDataset("no group contains two distinct grades")

    X = np.vstack([g.features for g in dataset.groups]).astype(float)
    bounds = np.cumsum([0] + [len(g.ctrs) for g in dataset.groups])
    scores = np.zeros(X.shape[0])
    trees: list[RegressionTree] = []
    ndcg_trace: list[float] = []
    for _ in range(config.n_trees):
        ndcg_trace.append(
            float(
                np.mean(
                    [
                        _group_ndcg(scores[a:b], grades)
                        for (a, b), grades in zip(
                            itertools.pairwise(bounds), grades_per_group
                        )
                    ]
                )
            )
        )
        lambdas = np.zeros(X.shape[0])
        for (a, b), grades in zip(itertools.pairwise(bounds), grades_per_group):
            lambdas[a:b] = _lambda_targets(scores[a:b], grades)
        tree = fit_tree(
            X, lambdas, max_depth=config.max_depth, min_leaf=config.min_leaf
        )
        scores += config.shrinkage * tree.predict(X)
        trees.append(tree)
    ndcg_trace.append(
        float(
            np.mean(
                [
                    _group_ndcg(scores[a:b], grades)
                    for (a, b), grades in zip(itertools.pairwise(bounds), grades_per_group)
                ]
            )
        )
    )
    return GbmRankModel(
        trees=trees,
        shrinkage=config.shrinkage,
        feature_names=list(dataset.feature_names),
        train_ndcg=ndcg_trace,
    )


def predict(model: GbmRankModel, features) -> float:
    return float(model.predict(np.asarray(features, dtype=float)))


def group_probabilities(scores) -> list[float]:
    """Min-max normalize scores within one group; constant groups map to 0.5."""
    scores = np.asarray(scores, dtype=float)
    span = scores.max() - scores.min()
    if span == 0.0:
        return [0.5] * len(scores)
    return list((scores - scores.min()) / span)


def rank_variants(probabilities: list[float]) -> list[int]:
    """Competition ranks (1 = best) where probabilities closer than 0.1
    share a rank, via the transitive closure of the nearness relation."""
    n = len(probabilities)
    order = sorted(range(n), key=lambda i: (-probabilities[i], i))
    clusters: list[list[int]] = []
    for idx in order:
        if clusters and abs(probabilities[clusters[-1][-1]] - probabilities[idx]) < TIE_GAP:
            clusters[-1].append(idx)
        else:
            clusters.append([idx])
    ranks = [0] * n
    position = 1
    for cluster in clusters:
        for idx in cluster:
            ranks[idx] = position
        position += len(cluster)
    return ranks


def kendall_tau(order_a, order_b) -> float:
    """Tau-b rank correlation between two equal-length score sequences."""
    a = np.asarray(order_a, dtype=float)
    b = np.asarray(order_b, dtype=float)
    if a.shape != b.shape:
        raise ValueError("sequences must have equal length")
    n = len(a)
    concordant = discordant = ties_a = ties_b = 0
    for i in range(n):
        for j in range(i + 1, n):
            da = a[i] - a[j]
            db = b[i] - b[j]
            if da == 0 and db == 0:
                ties_a += 1
                ties_b += 1
            elif da == 0:
                ties_a += 1
            elif db == 0:
                ties_b += 1
            elif da * db > 0:
                concordant += 1
            else:
                discordant += 1
    n0 = n * (n - 1) // 2
    denom = math.sqrt((n0 - ties_a) * (n0 - ties_b))
    if denom == 0:
        return 0.0
    return (concordant - discordant) / denom


@dataclass
class PreferenceMatrix:
    """counts[i][j] = number of voters preferring alternative i over j."""

    names: list[str]
    counts: np.ndarray

    @classmethod
    def empty(cls, names: list[str]) -> "PreferenceMatrix":
        return cls(names=list(names), counts=np.zeros((len(names), len(names)), dtype=int))

    def add_vote(self, ordering: list[str]) -> None:
        idx = {name: self.names.index(name) for name in ordering}
        for a, b in itertools.combinations(ordering, 2):
            self.counts[idx[a], idx[b]] += 1

    def add_ranked_vote(self, ranks: dict[str, int]) -> None:
        """Record strict preferences from possibly-tied ranks (1 = best)."""
        for a, b in itertools.combinations(ranks, 2):
            if ranks[a] < ranks[b]:
                self.counts[self.names.index(a), self.names.index(b)] += 1
            elif ranks[b] < ranks[a]:
                self.counts[self.names.index(b), self.names.index(a)] += 1


def kemeny_young(prefs: PreferenceMatrix) -> list[str]:
    """The ordering maximizing total pairwise agreement, by exhaustive
    search (n <= 8); ties break to the lexicographically-first permutation
    of the alternative indices."""
    n = len(prefs.names)
    if n > 8:
        raise ValueError("exact Kemeny-Young enumeration is limited to 8 alternatives")
    best_order: tuple[int, ...] | None = None
    best_score = -1
    for perm in itertools.permutations(range(n)):
        score = sum(
            prefs.counts[perm[i], perm[j]]
            for i in range(n)
            for j in range(i + 1, n)
        )
        if score > best_score:
            best_score = score
            best_order = perm
    return [prefs.names[i] for i in best_order]


def kendall_tau_metric(model: GbmRankModel, group: RankingGroup) -> float:
    """Tau between predicted scores and true CTRs for one group."""
    return kendall_tau(model.predict(group.features), group.ctrs)


def cross_validate(
    dataset: RankingDataset,
    k: int = 5,
    config: RankerConfig = RankerConfig(),
    metric=kendall_tau_metric,
) -> tuple[list[float], float]:
    """Group-level k-fold cross validation; whole queries stay together.

    Returns (per-fold metric means, overall mean).
    """
    if k < 2:
        raise BadFoldCount("cross validation needs at least 2 folds")
    if k > len(dataset.groups):
        raise BadFoldCount("more folds than groups")
    rng = np.random.default_rng(config.seed)
    order = rng.permutation(len(dataset.groups))
    folds = [sorted(order[i::k]) for i in range(k)]
    fold_scores: list[float] = []
    for fold in folds:
        held = set(fold)
        train_groups = [g for i, g in enumerate(dataset.groups) if i not in held]
        test_groups = [dataset.groups[i] for i in fold]
        model = train_lambdamart(
            RankingDataset(groups=train_groups, feature_names=dataset.feature_names), config
        )
        fold_scores.append(float(np.mean([metric(model, g) for g in test_groups])))
    return fold_scores, float(np.mean(fold_scores))
