"""Dataset perturbations: exact count/cell accounting."""

import numpy as np
import pytest

from imbal import Dataset, InvalidArgumentError, class_distribution
from imbal.perturb import (
    PerturbationSpec,
    apply_perturbation,
    inject_label_noise,
    inject_missing,
    intensify_imbalance,
)

from _util import random_dataset


# ---------------------------------------------------------------------------
# label noise
# ---------------------------------------------------------------------------


def test_label_noise_preserves_class_counts():
    rng = np.random.default_rng(71)
    for trial in range(30):
        ds = random_dataset(rng, min_count=6, max_count=40)
        before = np.bincount(ds.labels, minlength=ds.n_classes)
        for ratio in (0.1, 0.2, 0.4):
            out = inject_label_noise(ds, ratio, seed=trial)
            after = np.bincount(out.labels, minlength=ds.n_classes)
            np.testing.assert_array_equal(before, after)
            np.testing.assert_array_equal(out.features, ds.features)


def test_label_noise_changes_exactly_2m_rows():
    rng = np.random.default_rng(72)
    for trial in range(20):
        ds = random_dataset(rng, min_count=10, max_count=30, n_classes=2)
        dist = class_distribution(ds)
        m = int(0.3 * dist.counts[dist.minority])
        out = inject_label_noise(ds, 0.3, seed=trial)
        changed = int((out.labels != ds.labels).sum())
        # m minority rows flip out, m non-minority rows flip in
        assert changed == 2 * m


def test_label_noise_zero_budget_is_identity():
    rng = np.random.default_rng(73)
    ds = random_dataset(rng, min_count=4, max_count=9)
    out = inject_label_noise(ds, 0.1, seed=0)  # floor(0.1 * <10) == 0
    np.testing.assert_array_equal(out.labels, ds.labels)
    assert out.labels is not ds.labels  # still a private copy


def test_label_noise_deterministic():
    rng = np.random.default_rng(74)
    ds = random_dataset(rng, min_count=10)
    a = inject_label_noise(ds, 0.4, seed=5)
    b = inject_label_noise(ds, 0.4, seed=5)
    np.testing.assert_array_equal(a.labels, b.labels)
    c = inject_label_noise(ds, 0.4, seed=6)
    assert not np.array_equal(a.labels, c.labels)


def test_label_noise_ratio_validation():
    X = np.zeros((13, 1))
    y = np.array([0] * 10 + [1] * 3)
    ds = Dataset("t", X, y, 2)
    with pytest.raises(InvalidArgumentError):
        inject_label_noise(ds, 1.5, seed=0)
    with pytest.raises(InvalidArgumentError):
        inject_label_noise(ds, -0.1, seed=0)


# ---------------------------------------------------------------------------
# missing cells
# ---------------------------------------------------------------------------


def test_missing_masks_exact_cell_count():
    rng = np.random.default_rng(75)
    for trial in range(30):
        ds = random_dataset(rng, min_count=5, max_count=25)
        n, d = ds.features.shape
        ratio = float(rng.choice([0.05, 0.1, 0.3]))
        out = inject_missing(ds, ratio, seed=trial)
        expect = int(ratio * n * d)
        assert int((out.features != ds.features).sum()) <= expect
        # filled with pre-mask column means: count cells that moved
        moved = out.features != ds.features
        assert moved.sum() <= expect
        # exact accounting: every masked cell now equals its column mean
        mu = ds.features.mean(axis=0)
        rows, cols = np.nonzero(moved)
        np.testing.assert_allclose(out.features[rows, cols], mu[cols], atol=1e-12)


def test_missing_cell_count_via_sentinel():
    # constant-free dataset where column means never collide with values
    rng = np.random.default_rng(76)
    X = rng.normal(size=(40, 5)) + 100.0
    y = np.array([0, 1] * 20)
    ds = Dataset("t", X, y, 2)
    out = inject_missing(ds, 0.2, seed=1)
    assert int((out.features != X).sum()) == int(0.2 * 40 * 5)


def test_missing_zero_ratio_identity():
    rng = np.random.default_rng(77)
    ds = random_dataset(rng)
    out = inject_missing(ds, 0.0, seed=0)
    np.testing.assert_array_equal(out.features, ds.features)


def test_missing_deterministic():
    rng = np.random.default_rng(78)
    ds = random_dataset(rng)
    a = inject_missing(ds, 0.25, seed=9)
    b = inject_missing(ds, 0.25, seed=9)
    np.testing.assert_array_equal(a.features, b.features)


# ---------------------------------------------------------------------------
# imbalance intensification
# ---------------------------------------------------------------------------


def test_intensify_halves_minority_at_200():
    rng = np.random.default_rng(79)
    for trial in range(30):
        ds = random_dataset(rng, min_count=6, max_count=40)
        dist = class_distribution(ds)
        out = intensify_imbalance(ds, 200.0, seed=trial)
        after = np.bincount(out.labels, minlength=ds.n_classes)
        assert after[dist.minority] == dist.counts[dist.minority] // 2
        # every other class untouched
        for c in range(ds.n_classes):
            if c != dist.minority:
                assert after[c] == dist.counts[c]


def test_intensify_doubles_ir_within_rounding():
    rng = np.random.default_rng(80)
    for trial in range(20):
        ds = random_dataset(rng, min_count=8, max_count=40)
        dist = class_distribution(ds)
        out = intensify_imbalance(ds, 200.0, seed=trial)
        new = class_distribution(out)
        lo = dist.counts[dist.minority]
        # floor division inflates the ratio by at most lo/(lo-1)
        assert 2.0 * dist.imbalance_ratio - 1e-9 <= new.imbalance_ratio
        assert new.imbalance_ratio <= 2.0 * dist.imbalance_ratio * lo / max(lo - 1, 1) + 1e-9


def test_intensify_level_100_identity_counts():
    rng = np.random.default_rng(81)
    ds = random_dataset(rng, min_count=5)
    out = intensify_imbalance(ds, 100.0, seed=0)
    np.testing.assert_array_equal(
        np.bincount(out.labels, minlength=ds.n_classes),
        np.bincount(ds.labels, minlength=ds.n_classes),
    )


def test_intensify_keeps_original_rows_only():
    rng = np.random.default_rng(82)
    ds = random_dataset(rng, min_count=8)
    out = intensify_imbalance(ds, 300.0, seed=0)
    src = {tuple(r) for r in ds.features}
    assert all(tuple(r) in src for r in out.features)


def test_intensify_floor_guard():
    X = np.zeros((13, 1))
    y = np.array([0] * 10 + [1] * 3)
    ds = Dataset("t", X, y, 2)
    with pytest.raises(InvalidArgumentError):
        intensify_imbalance(ds, 200.0, seed=0)  # floor(3/2) = 1 < 2


# ---------------------------------------------------------------------------
# spec plumbing
# ---------------------------------------------------------------------------


def test_spec_keys():
    assert PerturbationSpec().key() == "none"
    assert PerturbationSpec("label_noise", 0.2).key() == "label_noise:0.2"
    assert PerturbationSpec("missing", 0.1).key() == "missing:0.1"
    assert PerturbationSpec("imbalance", 200.0).key() == "imbalance:200"


def test_spec_validation():
    with pytest.raises(InvalidArgumentError):
        PerturbationSpec("shuffle", 0.1)
    with pytest.raises(InvalidArgumentError):
        PerturbationSpec("label_noise", 1.2)
    with pytest.raises(InvalidArgumentError):
        PerturbationSpec("imbalance", 50.0)


def test_apply_perturbation_dispatch():
    rng = np.random.default_rng(83)
    ds = random_dataset(rng, min_count=10)
    same = apply_perturbation(ds, PerturbationSpec(), seed=0)
    assert same is ds  # none short-circuits
    noisy = apply_perturbation(ds, PerturbationSpec("label_noise", 0.4), seed=1)
    np.testing.assert_array_equal(
        noisy.labels, inject_label_noise(ds, 0.4, seed=1).labels
    )
    holey = apply_perturbation(ds, PerturbationSpec("missing", 0.2), seed=2)
    np.testing.assert_array_equal(
        holey.features, inject_missing(ds, 0.2, seed=2).features
    )
    skewed = apply_perturbation(ds, PerturbationSpec("imbalance", 200.0), seed=3)
    assert skewed.features.shape[0] < ds.features.shape[0]
