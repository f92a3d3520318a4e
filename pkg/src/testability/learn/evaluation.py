"""Stratified k-fold cross-validation and the five evaluation measures.

Out-of-fold discipline: every model (including the MLP's internal
standardization) is fit on the training split only; predictions for all
test folds are pooled before accuracy, class-weighted precision/recall/F,
and AUC are computed. Pooling rather than per-fold averaging is recorded
in the report so the choice stays auditable.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from ..records import EffectivenessLabel, FeatureMatrix
from .base import ModelKind, SingleClassInput
from .forest import ForestParams, train_random_forest
from .mlp import MLPParams, train_mlp
from .tree import TreeParams, train_decision_tree


class TooFewPerClass(ValueError):
    pass


class FoldTrainingError(RuntimeError):
    def __init__(self, fold: int, cause: Exception):
        self.fold = fold
        super().__init__(f"training failed on fold {fold}: {cause}")


@dataclass(frozen=True)
class EvalReport:
    classifier: ModelKind
    accuracy: float
    precision: float
    recall: float
    f_measure: float
    auc: float
    folds: int
    seed: int
    tp: int
    fp: int
    tn: int
    fn: int
    averaging: str = "class-weighted"
    auc_pooling: str = "pooled out-of-fold scores"


def stratified_kfold(
    matrix: FeatureMatrix, k: int = 10, seed: int = 0
) -> list[tuple[np.ndarray, np.ndarray]]:
    """Deterministic stratified folds: per-class shuffle, then round-robin.

    Each class's indices are dealt across the k folds, so per-fold class
    counts differ from exact proportionality by at most one instance.
    """
    y = matrix.y
    rng = np.random.default_rng(seed)
    fold_members: list[list[np.ndarray]] = [[] for _ in range(k)]
    for cls in (0, 1):
        idx = np.flatnonzero(y == cls)
        if idx.size < k:
            raise TooFewPerClass(f"class {cls} has {idx.size} rows, need >= {k}")
        rng.shuffle(idx)
        for f in range(k):
            fold_members[f].append(idx[f::k])
    folds = []
    all_rows = np.arange(y.size)
    for f in range(k):
        test = np.sort(np.concatenate(fold_members[f]))
        train = np.setdiff1d(all_rows, test, assume_unique=True)
        folds.append((train, test))
    return folds


def auc(scores: Sequence[float], labels: Sequence[EffectivenessLabel | int]) -> float:
    """Area under the ROC curve by the trapezoidal rule.

    Sweeping thresholds over the unique scores and joining the resulting
    (FPR, TPR) points with trapezoids makes ties count half, so the result
    equals the probability-of-correct-ranking statistic.
    """
    s = np.asarray(scores, dtype=np.float64)
    y = np.array(
        [l.value if isinstance(l, EffectivenessLabel) else int(l) for l in labels],
        dtype=np.int8,
    )
    n_pos = int((y == 1).sum())
    n_neg = int((y == 0).sum())
    if n_pos == 0 or n_neg == 0:
        raise SingleClassInput("AUC needs both classes present")
    order = np.argsort(-s, kind="stable")
    s_sorted = s[order]
    y_sorted = y[order]
    tp = np.cumsum(y_sorted == 1)
    fp = np.cumsum(y_sorted == 0)
    # keep only the last point of each tied-score run (thresholds are unique scores)
    last = np.nonzero(np.append(s_sorted[1:] != s_sorted[:-1], True))[0]
    tpr = np.concatenate(([0.0], tp[last] / n_pos))
    fpr = np.concatenate(([0.0], fp[last] / n_neg))
    return float(np.trapezoid(tpr, fpr))


def _train(matrix: FeatureMatrix, kind: ModelKind, params, seed: int):
    if kind is ModelKind.DECISION_TREE:
        return train_decision_tree(matrix, params or TreeParams(), seed=seed)
    if kind is ModelKind.RANDOM_FOREST:
        return train_random_forest(matrix, params or ForestParams(), seed=seed)
    if kind is ModelKind.MULTILAYER_PERCEPTRON:
        return train_mlp(matrix, params or MLPParams(), seed=seed)
    raise ValueError(f"unknown classifier kind: {kind}")


def evaluate(
    matrix: FeatureMatrix,
    kind: ModelKind,
    params=None,
    k: int = 10,
    seed: int = 0,
) -> EvalReport:
    """k-fold CV: train on each fold's complement, pool out-of-fold scores."""
    folds = stratified_kfold(matrix, k=k, seed=seed)
    scores = np.empty(matrix.n_rows, dtype=np.float64)
    for fold_no, (train_idx, test_idx) in enumerate(folds):
        sub = FeatureMatrix(
            feature_ids=matrix.feature_ids,
            X=matrix.X[train_idx],
            y=matrix.y[train_idx],
        )
        try:
            model = _train(sub, kind, params, seed=seed)
        except Exception as exc:
            raise FoldTrainingError(fold_no, exc) from exc
        scores[test_idx] = model.predict_scores(matrix.X[test_idx])

    y = matrix.y.astype(np.int8)
    predicted = (scores >= 0.5).astype(np.int8)
    tp = int(((predicted == 1) & (y == 1)).sum())
    fp = int(((predicted == 1) & (y == 0)).sum())
    tn = int(((predicted == 0) & (y == 0)).sum())
    fn = int(((predicted == 0) & (y == 1)).sum())
    n = y.size
    accuracy = (tp + tn) / n

    def prf(tp_c: int, fp_c: int, support: int) -> tuple[float, float, float]:
        precision = tp_c / (tp_c + fp_c) if tp_c + fp_c else 0.0
        recall = tp_c / support if support else 0.0
        f = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        return precision, recall, f

    p_eff, r_eff, f_eff = prf(tp, fp, tp + fn)
    p_non, r_non, f_non = prf(tn, fn, tn + fp)
    w_eff = (tp + fn) / n
    w_non = (tn + fp) / n
    return EvalReport(
        classifier=kind,
        accuracy=accuracy,
        precision=w_eff * p_eff + w_non * p_non,
        recall=w_eff * r_eff + w_non * r_non,
        f_measure=w_eff * f_eff + w_non * f_non,
        auc=auc(scores, y),
        folds=k,
        seed=seed,
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
    )
