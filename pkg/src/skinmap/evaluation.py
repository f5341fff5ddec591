"""Threshold sweeps, confusion counting, ROC curves and AUC.

A pixel is positive when its SPM value is >= the threshold. The sweep
uses the fixed grid k/1000 for k = 1..999. Multi-image evaluation pools
raw counts across images before computing rates (micro-averaging).
"""

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError, DegenerateMaskError

THRESHOLDS = np.arange(1, 1000) / 1000.0


@dataclass
class ConfusionCounts:
    tp: int
    fp: int
    s: int   # total skin pixels
    ns: int  # total non-skin pixels


@dataclass
class RocCurve:
    thresholds: np.ndarray  # (k,), strictly increasing
    fpr: np.ndarray         # (k,), non-increasing
    tpr: np.ndarray         # (k,), non-increasing
    auc: float


def _check_pair(spm, mask):
    values = np.asarray(spm, dtype=np.float64)
    labels = np.asarray(mask, dtype=bool)
    if values.shape != labels.shape:
        raise ContractViolationError(
            f"SPM shape {values.shape} != mask shape {labels.shape}"
        )
    return values.ravel(), labels.ravel()


def confusion_at(spm, mask, threshold: float) -> ConfusionCounts:
    """Confusion counts of the binary image obtained at one threshold."""
    values, labels = _check_pair(spm, mask)
    positive = values >= threshold
    return ConfusionCounts(
        tp=int(np.count_nonzero(positive & labels)),
        fp=int(np.count_nonzero(positive & ~labels)),
        s=int(np.count_nonzero(labels)),
        ns=int(np.count_nonzero(~labels)),
    )


def rates(counts: ConfusionCounts) -> tuple[float, float]:
    """(TPR, FPR) = (TP/S, FP/NS). Both classes must be present."""
    if counts.s == 0 or counts.ns == 0:
        raise DegenerateMaskError("mask contains a single class; rates are undefined")
    return counts.tp / counts.s, counts.fp / counts.ns


def _sweep_counts(spm, mask):
    # Exact per-threshold counts via sorted search: the number of values
    # >= t equals n minus the insertion index of t. Matches brute-force
    # integer counting bit for bit.
    values, labels = _check_pair(spm, mask)
    skin = np.sort(values[labels])
    nonskin = np.sort(values[~labels])
    tp = skin.size - np.searchsorted(skin, THRESHOLDS, side="left")
    fp = nonskin.size - np.searchsorted(nonskin, THRESHOLDS, side="left")
    return tp, fp, skin.size, nonskin.size


def auc(fpr, tpr) -> float:
    """Trapezoidal area under a ROC point set.

    Points are sorted by ascending (fpr, tpr); endpoints (0, 0) and
    (1, 1) are appended when absent. The result is clamped to [0, 1].
    """
    fpr = np.asarray(fpr, dtype=np.float64)
    tpr = np.asarray(tpr, dtype=np.float64)
    order = np.lexsort((tpr, fpr))
    xs = fpr[order]
    ys = tpr[order]
    if xs[0] != 0.0 or ys[0] != 0.0:
        xs = np.concatenate(([0.0], xs))
        ys = np.concatenate(([0.0], ys))
    if xs[-1] != 1.0 or ys[-1] != 1.0:
        xs = np.concatenate((xs, [1.0]))
        ys = np.concatenate((ys, [1.0]))
    area = float(np.trapezoid(ys, xs))
    return min(max(area, 0.0), 1.0)


def roc_sweep(spm, mask) -> RocCurve:
    """ROC curve of one SPM/mask pair over the 999-point threshold grid."""
    tp, fp, s, ns = _sweep_counts(spm, mask)
    if s == 0 or ns == 0:
        raise DegenerateMaskError("mask contains a single class; ROC is undefined")
    tpr = tp / s
    fpr = fp / ns
    return RocCurve(
        thresholds=THRESHOLDS.copy(),
        fpr=fpr,
        tpr=tpr,
        auc=auc(fpr, tpr),
    )


def aggregate_roc(spms, masks) -> RocCurve:
    """Micro-averaged ROC over several SPM/mask pairs.

    Raw TP/FP/S/NS counts are pooled across all pairs per threshold, then
    rates are computed once from the pooled totals.
    """
    if len(spms) != len(masks):
        raise ContractViolationError(
            f"{len(spms)} SPMs paired with {len(masks)} masks"
        )
    if not spms:
        raise ContractViolationError("need at least one SPM/mask pair")
    tp = np.zeros(THRESHOLDS.size, dtype=np.int64)
    fp = np.zeros(THRESHOLDS.size, dtype=np.int64)
    s = 0
    ns = 0
    for spm, mask in zip(spms, masks):
        tp_i, fp_i, s_i, ns_i = _sweep_counts(spm, mask)
        tp += tp_i
        fp += fp_i
        s += s_i
        ns += ns_i
    if s == 0 or ns == 0:
        raise DegenerateMaskError("pooled mask contains a single class")
    tpr = tp / s
    fpr = fp / ns
    return RocCurve(
        thresholds=THRESHOLDS.copy(),
        fpr=fpr,
        tpr=tpr,
        auc=auc(fpr, tpr),
    )


def write_roc_csv(path, curve: RocCurve) -> None:
    """Write a curve as `threshold,fpr,tpr` rows (6-decimal fixed point)
    followed by a `# auc=` comment row."""
    lines = ["threshold,fpr,tpr"]
    for t, f, r in zip(curve.thresholds, curve.fpr, curve.tpr):
        lines.append(f"{t:.6f},{f:.6f},{r:.6f}")
    lines.append(f"# auc={curve.auc:.6f}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
