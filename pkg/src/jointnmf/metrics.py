"""Clustering evaluation: average F1, pairwise scores, ROC curves.

Labelings are positional: item i carries pred[i] and truth[i].
Predictions are hard (one label per item).  Truth may overlap, in
which case truth[i] is a set of labels; two items count as
truth-connected when their label sets intersect.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DataError, DegenerateLabels, LabelMissing, UniverseMismatch

__all__ = [
    "ConfusionMatrix",
    "PairwiseCounts",
    "PairwiseScores",
    "confusion",
    "average_f1",
    "pairwise_counts",
    "pairwise_scores",
    "roc_curve",
    "auc",
    "read_labels",
    "write_labels",
    "read_pair_scores",
]


@dataclass
class ConfusionMatrix:
    counts: np.ndarray  # pred clusters x truth clusters, c_ij = |B_i and G_j|
    pred_sizes: np.ndarray
    truth_sizes: np.ndarray
    pred_labels: list
    truth_labels: list


@dataclass
class PairwiseCounts:
    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


class PairwiseScores(NamedTuple):
    pwf1: float | None
    pwfpr: float | None
    pwfnr: float | None


def confusion(pred, truth, n_pred_clusters: int | None = None) -> ConfusionMatrix:
    """Intersection counts between hard predicted clusters and truth clusters.

    With integer predictions and n_pred_clusters given, clusters that
    received no item still get a (zero) row, so empty clusters are
    visible to average_f1.
    """
    pred = list(pred)
    truth_sets = _as_sets(truth)
    if len(pred) != len(truth_sets):
        raise UniverseMismatch(
            f"{len(pred)} predicted items vs {len(truth_sets)} truth items"
        )
    if not pred:
        raise UniverseMismatch("empty labelings")

    if n_pred_clusters is not None:
        codes = np.asarray(pred, dtype=np.int64)
        if codes.min() < 0 or codes.max() >= n_pred_clusters:
            raise DataError("prediction label outside [0, n_pred_clusters)")
        pred_labels = list(range(n_pred_clusters))
        k = n_pred_clusters
    else:
        pred_labels, codes = np.unique(np.asarray(pred, dtype=object), return_inverse=True)
        pred_labels = list(pred_labels)
        k = len(pred_labels)

    truth_labels = sorted({lab for s in truth_sets for lab in s}, key=_label_key)
    tcode = {lab: j for j, lab in enumerate(truth_labels)}
    counts = np.zeros((k, len(truth_labels)), dtype=np.int64)
    for i, s in enumerate(truth_sets):
        for lab in s:
            counts[codes[i], tcode[lab]] += 1
    return ConfusionMatrix(
        counts=counts,
        pred_sizes=np.bincount(codes, minlength=k).astype(np.int64),
        truth_sizes=counts.sum(axis=0),
        pred_labels=pred_labels,
        truth_labels=truth_labels,
    )


def average_f1(C: ConfusionMatrix) -> float:
    """Symmetrized best-match F1 between the two clusterings.

    F1(i, j) = 2 c_ij / (|B_i| + |G_j|); each side averages its
    best match and the two averages are averaged.  Empty predicted
    clusters contribute 0 to their side.
    """
    c = C.counts.astype(np.float64)
    denom = C.pred_sizes[:, None] + C.truth_sizes[None, :]
    with np.errstate(invalid="ignore", divide="ignore"):
        f1 = np.where(denom > 0, 2.0 * c / denom, 0.0)
    return 0.5 * (float(f1.max(axis=1).mean()) + float(f1.max(axis=0).mean()))


def pairwise_counts(pred, truth) -> PairwiseCounts:
    """Tally every unordered item pair.

    Predicted-connected means same hard cluster; truth-connected means
    intersecting label sets.
    """
    pred = list(pred)
    truth_sets = _as_sets(truth)
    n = len(pred)
    if n != len(truth_sets):
        raise UniverseMismatch(f"{n} predicted items vs {len(truth_sets)} truth items")
    if n < 2:
        raise DataError("pairwise counts need at least 2 items")

    _, codes = np.unique(np.asarray(pred, dtype=object), return_inverse=True)
    same_pred = codes[:, None] == codes[None, :]

    labels = sorted({lab for s in truth_sets for lab in s}, key=_label_key)
    tcode = {lab: j for j, lab in enumerate(labels)}
    member = np.zeros((n, len(labels)), dtype=bool)
    for i, s in enumerate(truth_sets):
        for lab in s:
            member[i, tcode[lab]] = True
    truth_conn = member @ member.T

    iu = np.triu_indices(n, k=1)
    p = same_pred[iu]
    t = truth_conn[iu]
    return PairwiseCounts(
        tp=int(np.count_nonzero(p & t)),
        tn=int(np.count_nonzero(~p & ~t)),
        fp=int(np.count_nonzero(p & ~t)),
        fn=int(np.count_nonzero(~p & t)),
    )


def pairwise_scores(pc: PairwiseCounts) -> PairwiseScores:
    """PWF1, PWFPR, PWFNR; None where the denominator is zero."""

    def ratio(num, den):
        return num / den if den > 0 else None

    return PairwiseScores(
        pwf1=ratio(2.0 * pc.tp, 2.0 * pc.tp + pc.fn + pc.fp),
        pwfpr=ratio(float(pc.fp), pc.fp + pc.tn),
        pwfnr=ratio(float(pc.fn), pc.fn + pc.tp),
    )


def roc_curve(scores, truth) -> tuple[np.ndarray, np.ndarray]:
    """Sweep thresholds from +inf downward over the distinct scores.

    Returns (fpr, tpr) starting at (0, 0) and ending at (1, 1); tied
    scores enter or leave together, so ties share one point.
    """
    scores = np.asarray(scores, dtype=np.float64)
    flags = np.asarray(truth, dtype=bool)
    if scores.ndim != 1 or scores.shape != flags.shape:
        raise UniverseMismatch(f"scores shape {scores.shape} vs truth {flags.shape}")
    if not np.isfinite(scores).all():
        raise DataError("scores must be finite")
    pos = int(flags.sum())
    neg = flags.size - pos
    if pos == 0 or neg == 0:
        raise DegenerateLabels("need at least one positive and one negative pair")

    order = np.argsort(-scores, kind="stable")
    s = scores[order]
    f = flags[order]
    tps = np.cumsum(f)
    fps = np.cumsum(~f)
    last_of_tie = np.flatnonzero(np.append(s[1:] != s[:-1], True))
    fpr = np.concatenate(([0.0], fps[last_of_tie] / neg))
    tpr = np.concatenate(([0.0], tps[last_of_tie] / pos))
    return fpr, tpr


def auc(fpr, tpr) -> float:
    """Trapezoidal area under a roc_curve output."""
    return float(np.trapezoid(np.asarray(tpr), np.asarray(fpr)))


def read_labels(path) -> dict[str, set[str]]:
    """`item_id<TAB>label` lines; repeated items accumulate label sets."""
    out: dict[str, set[str]] = {}
    with open(path) as fh:
        for ln, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise DataError(f"{path}:{ln}: expected `item_id<TAB>label`")
            out.setdefault(parts[0], set()).add(parts[1])
    return out


def write_labels(path, ids, labels) -> None:
    with open(path, "w") as fh:
        for i, lab in zip(ids, labels):
            fh.write(f"{i}\t{lab}\n")


def read_pair_scores(path) -> list[tuple[str, str, float]]:
    """`item_i<TAB>item_j<TAB>score` lines."""
    out = []
    with open(path) as fh:
        for ln, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise DataError(f"{path}:{ln}: expected `item_i<TAB>item_j<TAB>score`")
            try:
                out.append((parts[0], parts[1], float(parts[2])))
            except ValueError as exc:
                raise DataError(f"{path}:{ln}: bad score {parts[2]!r}") from exc
    return out


def _as_sets(truth) -> list[frozenset]:
    sets = []
    for i, lab in enumerate(truth):
        if isinstance(lab, (set, frozenset, list, tuple)):
            s = frozenset(lab)
        else:
            s = frozenset((lab,))
        if not s:
            raise LabelMissing(f"item {i} has no label")
        sets.append(s)
    return sets


def _label_key(lab):
    # stable ordering for mixed label types
    return (str(type(lab).__name__), str(lab))
