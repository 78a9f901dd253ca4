"""CART-style regression trees plus the two ensemble trainers built on them.

Splits minimize squared error over midpoint thresholds; ties resolve to
the lowest feature index and smallest threshold so fitting is fully
deterministic for a given RNG seed.
"""

from __future__ import annotations

import numpy as np


class RegressionTree:
    """Binary tree of (feature, threshold) splits; rows with
    value <= threshold go left."""

    def __init__(self, root: dict):
        self.root = root

    def predict_one(self, x) -> float:
        node = self.root
        while "value" not in node:
            node = node["left"] if x[node["feature"]] <= node["threshold"] else node["right"]
        return node["value"]

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        out = np.empty(X.shape[0])
        self._predict_into(self.root, X, np.arange(X.shape[0]), out)
        return out

    def _predict_into(self, node, X, rows, out) -> None:
        if "value" in node:
            out[rows] = node["value"]
            return
        mask = X[rows, node["feature"]] <= node["threshold"]
        self._predict_into(node["left"], X, rows[mask], out)
        self._predict_into(node["right"], X, rows[~mask], out)

    def to_json(self) -> dict:
        return self.root

    @classmethod
    def from_json(cls, data: dict) -> "RegressionTree":
        return cls(data)


def _best_split(X, y, features, min_leaf):
    """Return (sse, feature, threshold) of the best split, or None."""
    n = len(y)
    best = None
    for f in features:
        x = X[:, f]
        order = np.argsort(x, kind="stable")
        xs = x[order]
        ys = y[order]
        csum = np.cumsum(ys)
        csq = np.cumsum(ys * ys)
        idx = np.arange(min_leaf - 1, n - min_leaf)
        if len(idx) == 0:
            continue
        valid = xs[idx] < xs[idx + 1]
        if not valid.any():
            continue
        i = idx[valid]
        n_left = (i + 1).astype(float)
        n_right = n - n_left
        s_left = csum[i]
        s_right = csum[-1] - s_left
        q_left = csq[i]
        q_right = csq[-1] - q_left
        sse = (q_left - s_left**2 / n_left) + (q_right - s_right**2 / n_right)
        k = int(np.argmin(sse))
        if best is None or sse[k] < best[0]:
            threshold = (xs[i[k]] + xs[i[k] + 1]) / 2.0
            best = (float(sse[k]), int(f), float(threshold))
    return best


def fit_tree(
    X: np.ndarray,
    y: np.ndarray,
    max_depth: int = 4,
    min_leaf: int = 5,
    rng: np.random.Generator | None = None,
    n_split_features: int | None = None,
) -> RegressionTree:
    """Fit a squared-error regression tree.

    When ``n_split_features`` is set, each split considers a random subset
    of that many features drawn from ``rng`` (random-forest style).
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    p = X.shape[1]

    def build(rows, depth) -> dict:
        ys = y[rows]
        if depth >= max_depth or len(rows) < 2 * min_leaf or np.ptp(ys) == 0.0:
            return {"value": float(ys.mean())}
        if n_split_features is not None and n_split_features < p:
            features = np.sort(rng.choice(p, size=n_split_features, replace=False))
        else:
            features = range(p)
        split = _best_split(X[rows], ys, features, min_leaf)
        if split is None:
            return {"value": float(ys.mean())}
        _, feature, threshold = split
        mask = X[rows, feature] <= threshold
        return {
            "feature": feature,
            "threshold": threshold,
            "left": build(rows[mask], depth + 1),
            "right": build(rows[~mask], depth + 1),
        }

    return RegressionTree(build(np.arange(X.shape[0]), 0))


class BoostedTrees:
    """Squared-error gradient boosting: base value plus shrunken tree sum."""

    kind = "boosted"

    def __init__(self, base: float, shrinkage: float, trees: list[RegressionTree]):
        self.base = base
        self.shrinkage = shrinkage
        self.trees = trees

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        out = np.full(X.shape[0], self.base)
        for tree in self.trees:
            out += self.shrinkage * tree.predict(X)
        return out

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "base": self.base,
            "shrinkage": self.shrinkage,
            "trees": [t.to_json() for t in self.trees],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BoostedTrees":
        return cls(
            base=data["base"],
            shrinkage=data["shrinkage"],
            trees=[RegressionTree.from_json(t) for t in data["trees"]],
        )


class RandomForest:
    """Bagged trees with sqrt-p per-split feature subsampling; mean vote."""

    kind = "forest"

    def __init__(self, trees: list[RegressionTree]):
        self.trees = trees

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        votes = np.stack([t.predict(X) for t in self.trees])
        return votes.mean(axis=0)

    def to_json(self) -> dict:
        return {"kind": self.kind, "trees": [t.to_json() for t in self.trees]}

    @classmethod
    def from_json(cls, data: dict) -> "RandomForest":
        return cls(trees=[RegressionTree.from_json(t) for t in data["trees"]])


def fit_boosted(
    X: np.ndarray,
    y: np.ndarray,
    n_trees: int = 100,
    shrinkage: float = 0.2,
    max_depth: int = 3,
    min_leaf: int = 2,
) -> BoostedTrees:
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    base = float(y.mean())
    residual = y - base
    trees: list[RegressionTree] = []
    for _ in range(n_trees):
        tree = fit_tree(X, residual, max_depth=max_depth, min_leaf=min_leaf)
        residual -= shrinkage * tree.predict(X)
        trees.append(tree)
    return BoostedTrees(base=base, shrinkage=shrinkage, trees=trees)


def fit_forest(
    X: np.ndarray,
    y: np.ndarray,
    n_trees: int = 500,
    max_depth: int = 8,
    min_leaf: int = 1,
    seed: int = 0,
) -> RandomForest:
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    rng = np.random.default_rng(seed)
    n, p = X.shape
    n_split = max(1, int(np.sqrt(p)))
    trees = []
    for _ in range(n_trees):
        rows = rng.integers(0, n, size=n)
        trees.append(
            fit_tree(
                X[rows], y[rows],
                max_depth=max_depth, min_leaf=min_leaf,
                rng=rng, n_split_features=n_split,
            )
        )
    return RandomForest(trees=trees)
