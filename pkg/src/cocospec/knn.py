"""k-nearest-neighbor classification with fully deterministic tie rules.

Tie rules (fixed so results are reproducible): neighbors are ranked by
distance with equal distances broken by lower exemplar index; a tie in
the class vote goes to the class with the smaller summed distance over
its voting neighbors, then to the lower class id.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

METRIC_EUCLIDEAN = "euclidean"
METRIC_MANHATTAN = "manhattan"


@dataclass(frozen=True)
class KnnModel:
    exemplars: np.ndarray
    labels: np.ndarray
    k: int
    metric: str = METRIC_EUCLIDEAN


def fit_knn(X, y, k: int, metric: str = METRIC_EUCLIDEAN) -> KnnModel:
    """Store the training data verbatim (lazy learner)."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValidationError("exemplar matrix must be 2-D and non-empty")
    if y.shape != (X.shape[0],):
        raise ValidationError("label count must match exemplar count")
    if not 1 <= k <= X.shape[0]:
        raise ValidationError(f"k must be in 1..{X.shape[0]}")
    if metric not in (METRIC_EUCLIDEAN, METRIC_MANHATTAN):
        raise ValidationError(f"unknown metric {metric!r}")
    return KnnModel(exemplars=X.copy(), labels=y.copy(), k=k, metric=metric)


def _distances(model: KnnModel, x0: np.ndarray) -> np.ndarray:
    delta = model.exemplars - x0
    if model.metric == METRIC_EUCLIDEAN:
        return np.sqrt(np.sum(delta * delta, axis=1))
    return np.sum(np.abs(delta), axis=1)


def predict_knn(model: KnnModel, x0) -> int:
    """Majority vote among the k nearest exemplars of a single query row."""
    x0 = np.asarray(x0, dtype=float).ravel()
    if x0.size != model.exemplars.shape[1]:
        raise ValidationError(
            f"query has {x0.size} features, exemplars have {model.exemplars.shape[1]}"
        )
    dist = _distances(model, x0)
    order = np.lexsort((np.arange(dist.size), dist))[: model.k]
    votes = model.labels[order]
    counts = np.bincount(votes)
    top = counts.max()
    tied = np.nonzero(counts == top)[0]
    if tied.size == 1:
        return int(tied[0])
    sums = [float(np.sum(dist[order][votes == c])) for c in tied]
    best = min(zip(sums, tied))
    return int(best[1])


def predict_knn_many(model: KnnModel, X) -> np.ndarray:
    """predict_knn applied to each row of X."""
    X = np.asarray(X, dtype=float)
    return np.array([predict_knn(model, row) for row in X], dtype=int)
