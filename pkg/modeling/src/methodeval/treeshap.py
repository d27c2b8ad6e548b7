"""Exact Shapley attribution for tree ensembles.

Interventional formulation with a single deterministic baseline vector z
(callers use the training-fold feature means): for each sample x the game
is v(S) = f(w) with w taking x's values on S and z's elsewhere. For one
tree, a leaf is reachable for exactly the coalitions that include all
features where only x satisfies the path (set A) and exclude all features
where only z does (set B); its Shapley contribution has the closed form

    phi_i = +v * (a-1)! b! / (a+b)!   for i in A,
    phi_i = -v * a! (b-1)! / (a+b)!   for i in B,    a=|A|, b=|B|.

The traversal visits only hybrid-reachable nodes (a node where x and z
agree has one live child), features are deduplicated along the path, and a
path needing a feature on both sides is unreachable and pruned. Values are
exact and deterministic; features never split on get exactly zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

_FACTORIALS = np.array([math.factorial(i) for i in range(171)], dtype=np.float64)


@dataclass
class TreeEnsemble:
    """Flat per-tree arrays; leaves have left = -1 and carry the value."""

    lefts: list[np.ndarray]
    rights: list[np.ndarray]
    features: list[np.ndarray]
    thresholds: list[np.ndarray]
    values: list[np.ndarray]
    max_depth: int
    base_offset: float = 0.0
    output: str = "probability"  # or "raw margin"

    @property
    def n_trees(self) -> int:
        return len(self.lefts)


def _tree_depth(left: np.ndarray, right: np.ndarray) -> int:
    depth = 0
    stack = [(0, 0)]
    while stack:
        node, d = stack.pop()
        depth = max(depth, d)
        if left[node] >= 0:
            stack.append((left[node], d + 1))
            stack.append((right[node], d + 1))
    return depth


def from_random_forest(model) -> TreeEnsemble:
    """Class-1 probability ensemble: mean of per-tree leaf probabilities."""
    classes = list(model.classes_)
    pos = classes.index(1)
    scale = 1.0 / len(model.estimators_)
    lefts, rights, features, thresholds, values = [], [], [], [], []
    max_depth = 0
    for est in model.estimators_:
        tree = est.tree_
        left = tree.children_left.astype(np.int64)
        right = tree.children_right.astype(np.int64)
        counts = tree.value[:, 0, :]
        totals = counts.sum(axis=1)
        totals[totals == 0] = 1.0
        value = (counts[:, pos] / totals) * scale
        lefts.append(left)
        rights.append(right)
        features.append(tree.feature.astype(np.int64))
        thresholds.append(tree.threshold.astype(np.float64))
        values.append(np.ascontiguousarray(value, dtype=np.float64))
        max_depth = max(max_depth, _tree_depth(left, right))
    return TreeEnsemble(lefts, rights, features, thresholds, values, max_depth)


def from_hist_gradient_boosting(model) -> TreeEnsemble:
    """Raw-margin ensemble (log-odds); the sigmoid is monotone so ranking by
    |attribution| is unaffected by explaining the margin."""
    lefts, rights, features, thresholds, values = [], [], [], [], []
    max_depth = 0
    for stage in model._predictors:
        (predictor,) = stage
        nodes = predictor.nodes
        is_leaf = nodes["is_leaf"].astype(bool)
        left = np.where(is_leaf, -1, nodes["left"].astype(np.int64))
        right = np.where(is_leaf, -1, nodes["right"].astype(np.int64))
        lefts.append(left)
        rights.append(right)
        features.append(nodes["feature_idx"].astype(np.int64))
        thresholds.append(nodes["num_threshold"].astype(np.float64))
        values.append(nodes["value"].astype(np.float64))
        max_depth = max(max_depth, _tree_depth(left, right))
    base = float(np.ravel(model._baseline_prediction)[0])
    return TreeEnsemble(
        lefts, rights, features, thresholds, values, max_depth,
        base_offset=base, output="raw margin",
    )


def from_fitted_model(model) -> TreeEnsemble:
    if hasattr(model, "estimators_"):
        return from_random_forest(model)
    if hasattr(model, "_predictors"):
        return from_hist_gradient_boosting(model)
    raise TypeError(f"no tree extraction for {type(model).__name__}")


@njit(cache=True)
def _shap_one_tree(X, z, left, right, feature, threshold, value, fact, depth, phi):
    n_samples = X.shape[0]
    n_features = X.shape[1]
    state = np.zeros(n_features, dtype=np.int8)
    cap = 4 * (depth + 2) + 8
    stack_node = np.empty(cap, dtype=np.int64)
    stack_feat = np.empty(cap, dtype=np.int64)
    stack_side = np.empty(cap, dtype=np.int8)
    stack_undo = np.empty(cap, dtype=np.int8)
    path_feat = np.empty(depth + 2, dtype=np.int64)
    path_side = np.empty(depth + 2, dtype=np.int8)

    for s in range(n_samples):
        a = 0
        b = 0
        path_len = 0
        top = 0
        stack_node[top] = 0
        stack_feat[top] = -1
        stack_side[top] = 0
        stack_undo[top] = 0
        top += 1
        while top > 0:
            top -= 1
            node = stack_node[top]
            feat = stack_feat[top]
            side = stack_side[top]
            undo = stack_undo[top]
            if undo == 1:
                state[feat] = 0
                if side == 1:
                    a -= 1
                else:
                    b -= 1
                path_len -= 1
                continue
            if feat >= 0:
                state[feat] = side
                if side == 1:
                    a += 1
                else:
                    b += 1
                path_feat[path_len] = feat
                path_side[path_len] = side
                path_len += 1
            if left[node] < 0:
                v = value[node]
                wpos = 0.0
                wneg = 0.0
                if a > 0:
                    wpos = fact[a - 1] * fact[b] / fact[a + b]
                if b > 0:
                    wneg = fact[a] * fact[b - 1] / fact[a + b]
                for p in range(path_len):
                    f = path_feat[p]
                    if path_side[p] == 1:
                        phi[s, f] += wpos * v
                    else:
                        phi[s, f] -= wneg * v
                continue
            f = feature[node]
            t = threshold[node]
            x_left = X[s, f] <= t
            z_left = z[f] <= t
            if x_left == z_left:
                child = left[node] if x_left else right[node]
                stack_node[top] = child
                stack_feat[top] = -1
                stack_side[top] = 0
                stack_undo[top] = 0
                top += 1
                continue
            x_child = left[node] if x_left else right[node]
            z_child = left[node] if z_left else right[node]
            st = state[f]
            if st != 1:  # the z-side branch is reachable
                if st == 0:
                    stack_node[top] = -1
                    stack_feat[top] = f
                    stack_side[top] = 2
                    stack_undo[top] = 1
                    top += 1
                    stack_node[top] = z_child
                    stack_feat[top] = f
                    stack_side[top] = 2
                    stack_undo[top] = 0
                    top += 1
                else:
                    stack_node[top] = z_child
                    stack_feat[top] = -1
                    stack_side[top] = 0
                    stack_undo[top] = 0
                    top += 1
            if st != 2:  # the x-side branch is reachable
                if st == 0:
                    stack_node[top] = -1
                    stack_feat[top] = f
                    stack_side[top] = 1
                    stack_undo[top] = 1
                    top += 1
                    stack_node[top] = x_child
                    stack_feat[top] = f
                    stack_side[top] = 1
                    stack_undo[top] = 0
                    top += 1
                else:
                    stack_node[top] = x_child
                    stack_feat[top] = -1
                    stack_side[top] = 0
                    stack_undo[top] = 0
                    top += 1


def shap_values(ensemble: TreeEnsemble, X: np.ndarray, baseline: np.ndarray) -> np.ndarray:
    """Per-sample, per-feature attributions; rows sum to f(x) - f(z)."""
    X = np.ascontiguousarray(X, dtype=np.float64)
    z = np.ascontiguousarray(baseline, dtype=np.float64)
    if z.shape != (X.shape[1],):
        raise ValueError("baseline must be one vector of the model's features")
    phi = np.zeros_like(X)
    for i in range(ensemble.n_trees):
        _shap_one_tree(
            X, z,
            ensemble.lefts[i], ensemble.rights[i], ensemble.features[i],
            ensemble.thresholds[i], ensemble.values[i],
            _FACTORIALS, ensemble.max_depth, phi,
        )
    return phi


def ensemble_value(ensemble: TreeEnsemble, X: np.ndarray) -> np.ndarray:
    """f(x) for each row (probability or raw margin per ensemble.output)."""
    X = np.asarray(X, dtype=np.float64)
    out = np.full(X.shape[0], ensemble.base_offset, dtype=np.float64)
    for i in range(ensemble.n_trees):
        left = ensemble.lefts[i]
        right = ensemble.rights[i]
        feature = ensemble.features[i]
        threshold = ensemble.thresholds[i]
        value = ensemble.values[i]
        for s in range(X.shape[0]):
            node = 0
            while left[node] >= 0:
                node = left[node] if X[s, feature[node]] <= threshold[node] else right[node]
            out[s] += value[node]
    return out
