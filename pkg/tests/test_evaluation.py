"""ROC sweep checked against per-threshold brute force and hand trapezoids."""

import numpy as np
import pytest

from skinmap import (
    THRESHOLDS,
    aggregate_roc,
    auc,
    confusion_at,
    rates,
    roc_sweep,
    write_roc_csv,
)
from skinmap.errors import DegenerateMaskError


def brute_force_curve(spm, mask):
    skin = mask.astype(bool)
    s, ns = int(skin.sum()), int((~skin).sum())
    fpr, tpr = [], []
    for t in THRESHOLDS:
        positive = spm >= t
        tpr.append(int((positive & skin).sum()) / s)
        fpr.append(int((positive & ~skin).sum()) / ns)
    return np.array(fpr), np.array(tpr)


def test_threshold_grid():
    assert THRESHOLDS.shape == (999,)
    np.testing.assert_array_equal(THRESHOLDS, np.arange(1, 1000) / 1000.0)
    assert THRESHOLDS[0] == 0.001 and THRESHOLDS[-1] == 0.999


def test_confusion_hand_case():
    spm = np.array([[0.9, 0.5], [0.4, 0.1]])
    mask = np.array([[1, 1], [0, 0]], dtype=bool)
    counts = confusion_at(spm, mask, 0.5)
    # the >= rule keeps the pixel sitting exactly at the threshold positive
    assert (counts.tp, counts.fp, counts.s, counts.ns) == (2, 0, 2, 2)
    counts = confusion_at(spm, mask, 0.3)
    assert (counts.tp, counts.fp) == (2, 1)
    tpr, fpr = rates(counts)
    assert (tpr, fpr) == (1.0, 0.5)


def test_rates_need_both_classes():
    spm = np.array([0.5, 0.6])
    with pytest.raises(DegenerateMaskError):
        rates(confusion_at(spm, np.array([True, True]), 0.5))
    with pytest.raises(DegenerateMaskError):
        rates(confusion_at(spm, np.array([False, False]), 0.5))


def test_sweep_matches_brute_force_exactly():
    rng = np.random.default_rng(61)
    spm = rng.random((25, 40))
    mask = rng.random((25, 40)) < 0.4
    curve = roc_sweep(spm, mask)
    fpr, tpr = brute_force_curve(spm, mask)
    np.testing.assert_array_equal(curve.fpr, fpr)
    np.testing.assert_array_equal(curve.tpr, tpr)
    np.testing.assert_array_equal(curve.thresholds, THRESHOLDS)


def test_sweep_handles_grid_valued_maps():
    # map values sitting exactly on thresholds exercise the >= boundary
    rng = np.random.default_rng(62)
    spm = rng.integers(0, 1001, size=500) / 1000.0
    mask = rng.random(500) < 0.5
    curve = roc_sweep(spm, mask)
    fpr, tpr = brute_force_curve(spm, mask)
    np.testing.assert_array_equal(curve.fpr, fpr)
    np.testing.assert_array_equal(curve.tpr, tpr)


def test_sweep_rates_are_monotone():
    rng = np.random.default_rng(63)
    curve = roc_sweep(rng.random(2000), rng.random(2000) < 0.3)
    assert np.all(np.diff(curve.fpr) <= 0)
    assert np.all(np.diff(curve.tpr) <= 0)


def test_perfect_and_inverted_maps():
    mask = np.array([True] * 50 + [False] * 50)
    spm = np.where(mask, 0.9, 0.1)
    assert roc_sweep(spm, mask).auc == 1.0
    assert roc_sweep(1.0 - spm, mask).auc == 0.0


def test_constant_half_map_scores_half():
    rng = np.random.default_rng(64)
    mask = rng.random(400) < 0.5
    curve = roc_sweep(np.full(400, 0.5), mask)
    assert curve.auc == 0.5
    # every threshold <= 0.5 accepts everything, the rest reject everything
    assert set(zip(curve.fpr, curve.tpr)) == {(1.0, 1.0), (0.0, 0.0)}


def test_auc_hand_trapezoid():
    # single interior point (0.5, 0.75) with implied (0,0) and (1,1) anchors
    np.testing.assert_allclose(auc([0.5], [0.75]), 0.625, atol=1e-15)
    assert auc([0.0, 1.0], [0.0, 1.0]) == 0.5
    assert auc([0.0, 0.0, 1.0], [0.0, 1.0, 1.0]) == 1.0


def test_auc_order_insensitive():
    rng = np.random.default_rng(65)
    fpr = rng.random(30)
    tpr = np.clip(fpr + rng.random(30) * 0.3, 0, 1)
    order = rng.permutation(30)
    np.testing.assert_allclose(auc(fpr[order], tpr[order]), auc(fpr, tpr), atol=1e-15)


def test_aggregate_equals_pooled_pixels():
    rng = np.random.default_rng(66)
    spms = [rng.random((10, 12)), rng.random((7, 9)), rng.random(30)]
    masks = [rng.random(s.shape) < 0.4 for s in spms]
    pooled_spm = np.concatenate([s.ravel() for s in spms])
    pooled_mask = np.concatenate([m.ravel() for m in masks])
    got = aggregate_roc(spms, masks)
    want = roc_sweep(pooled_spm, pooled_mask)
    np.testing.assert_array_equal(got.fpr, want.fpr)
    np.testing.assert_array_equal(got.tpr, want.tpr)
    assert got.auc == want.auc


def test_aggregate_image_order_is_irrelevant():
    rng = np.random.default_rng(67)
    spms = [rng.random(100), rng.random(50)]
    masks = [rng.random(100) < 0.5, rng.random(50) < 0.5]
    a = aggregate_roc(spms, masks)
    b = aggregate_roc(spms[::-1], masks[::-1])
    np.testing.assert_array_equal(a.fpr, b.fpr)
    np.testing.assert_array_equal(a.tpr, b.tpr)


def test_aggregate_tolerates_one_sided_images():
    # an all-skin image is fine as long as the pool has both classes
    spms = [np.array([0.8, 0.9]), np.array([0.1, 0.2])]
    masks = [np.array([True, True]), np.array([False, False])]
    curve = aggregate_roc(spms, masks)
    assert curve.auc == 1.0


def test_roc_csv_format(tmp_path):
    rng = np.random.default_rng(68)
    curve = roc_sweep(rng.random(500), rng.random(500) < 0.5)
    path = tmp_path / "roc.csv"
    write_roc_csv(path, curve)
    lines = path.read_text().splitlines()
    assert len(lines) == 1001
    assert lines[0] == "threshold,fpr,tpr"
    assert lines[1] == "0.001000,%.6f,%.6f" % (curve.fpr[0], curve.tpr[0])
    assert lines[-1] == "# auc=%.6f" % curve.auc
    assert path.read_text().endswith("\n")
