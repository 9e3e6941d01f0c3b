"""Dataset container, class stats, preprocessing, folds, synthetic source."""

import numpy as np
import pytest

from imbal import (
    ColumnSpec,
    Dataset,
    InvalidArgumentError,
    InvalidDatasetError,
    class_distribution,
    encode_labels,
    preprocess_apply,
    preprocess_fit,
    stratified_kfold,
)
from imbal.synthetic import make_gaussian_overlap


def small_ds():
    X = np.array([[0.0], [1.0], [2.0], [3.0], [4.0], [5.0]])
    y = np.array([0, 0, 0, 0, 1, 1])
    return Dataset("toy", X, y, 2)


# ---------------------------------------------------------------------------
# Dataset validation
# ---------------------------------------------------------------------------


def test_dataset_coerces_dtypes():
    ds = Dataset("t", [[1, 2], [3, 4]], [0, 1], 2)
    assert ds.features.dtype == np.float64
    assert ds.labels.dtype == np.int64
    assert ds.n_samples == 2 and ds.n_features == 2


def test_dataset_rejects_bad_shapes():
    with pytest.raises(InvalidDatasetError):
        Dataset("t", np.zeros(4), np.zeros(4, dtype=int), 2)
    with pytest.raises(InvalidDatasetError):
        Dataset("t", np.zeros((4, 2)), np.zeros(3, dtype=int), 2)


def test_dataset_rejects_nonfinite_and_bad_labels():
    with pytest.raises(InvalidDatasetError):
        Dataset("t", [[np.nan], [1.0]], [0, 1], 2)
    with pytest.raises(InvalidDatasetError):
        Dataset("t", [[0.0], [1.0]], [0, 2], 2)
    with pytest.raises(InvalidDatasetError):
        Dataset("t", [[0.0], [1.0]], [0, 1], 1)


def test_dataset_schema_length_checked():
    from imbal import FeatureKind

    with pytest.raises(InvalidDatasetError):
        Dataset("t", [[0.0, 1.0]], [0], 2, schema=(FeatureKind("numeric"),))


def test_subset_and_replace_preserve_metadata():
    ds = small_ds()
    sub = ds.subset(np.array([4, 0, 5]))
    np.testing.assert_array_equal(sub.labels, [1, 0, 1])
    assert sub.n_classes == 2 and sub.name == "toy"
    swapped = ds.replace(labels=1 - ds.labels)
    np.testing.assert_array_equal(swapped.labels, [1, 1, 1, 1, 0, 0])
    np.testing.assert_array_equal(swapped.features, ds.features)


# ---------------------------------------------------------------------------
# class distribution
# ---------------------------------------------------------------------------


def test_class_distribution_basic():
    dist = class_distribution(small_ds())
    assert dist.counts == (4, 2)
    assert dist.minority == 1 and dist.majority == 0
    assert dist.imbalance_ratio == 2.0
    assert dist.minority_count == 2 and dist.majority_count == 4


def test_class_distribution_tie_breaks_low():
    ds = Dataset("t", np.zeros((4, 1)), [0, 0, 1, 1], 2)
    dist = class_distribution(ds)
    assert dist.minority == 0 and dist.majority == 0
    assert dist.imbalance_ratio == 1.0


def test_class_distribution_needs_two_present():
    ds = Dataset("t", np.zeros((3, 1)), [1, 1, 1], 2)
    with pytest.raises(InvalidDatasetError):
        class_distribution(ds)


# ---------------------------------------------------------------------------
# stratified folds
# ---------------------------------------------------------------------------


def test_stratified_within_one_sweep():
    rng = np.random.default_rng(7)
    for _ in range(60):
        K = int(rng.integers(2, 5))
        counts = rng.integers(5, 60, size=K)
        y = np.concatenate([np.full(int(c), k) for k, c in enumerate(counts)])
        y = y[rng.permutation(y.size)]
        k = int(rng.integers(2, 6))
        plan = stratified_kfold(y, k, seed=int(rng.integers(1 << 30)))
        for cls in range(K):
            per_fold = np.bincount(plan.assignment[y == cls], minlength=k)
            assert per_fold.max() - per_fold.min() <= 1
        # folds partition the samples
        assert np.sort(np.concatenate([plan.test_indices(f) for f in range(k)])).size == y.size


def test_fold_plan_train_test_disjoint():
    y = np.array([0] * 10 + [1] * 5)
    plan = stratified_kfold(y, 5, seed=3)
    for f in range(5):
        tr, te = plan.train_indices(f), plan.test_indices(f)
        assert np.intersect1d(tr, te).size == 0
        assert tr.size + te.size == y.size


def test_stratified_determinism_and_seed_sensitivity():
    y = np.array([0] * 20 + [1] * 7)
    a = stratified_kfold(y, 4, seed=1).assignment
    b = stratified_kfold(y, 4, seed=1).assignment
    c = stratified_kfold(y, 4, seed=2).assignment
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)


def test_stratified_errors():
    y = np.array([0, 0, 1, 1])
    with pytest.raises(InvalidArgumentError):
        stratified_kfold(y, 1, seed=0)
    with pytest.raises(InvalidArgumentError):
        stratified_kfold(y, 5, seed=0)
    # k=4 with class sizes 2+2 leaves fold 3 empty
    with pytest.raises(InvalidArgumentError):
        stratified_kfold(y, 4, seed=0)


# ---------------------------------------------------------------------------
# preprocessing
# ---------------------------------------------------------------------------


def test_numeric_standardization_roundtrip():
    rng = np.random.default_rng(11)
    rows = [tuple(float(v) for v in row) for row in rng.normal(3.0, 2.5, size=(40, 3))]
    schema = tuple(ColumnSpec("numeric", None, f"c{j}") for j in range(3))
    model = preprocess_fit(rows, schema)
    X = preprocess_apply(model, rows)
    np.testing.assert_allclose(X.mean(axis=0), 0.0, atol=1e-9)
    np.testing.assert_allclose(X.std(axis=0), 1.0, atol=1e-9)


def test_constant_column_maps_to_zero():
    rows = [(5.0,), (5.0,), (5.0,)]
    model = preprocess_fit(rows, (ColumnSpec("numeric", None, "c"),))
    X = preprocess_apply(model, rows)
    np.testing.assert_array_equal(X, np.zeros((3, 1)))


def test_missing_numeric_takes_training_mean():
    rows = [(1.0,), (3.0,), (None,)]
    model = preprocess_fit(rows, (ColumnSpec("numeric", None, "c"),))
    X = preprocess_apply(model, rows)
    assert X[2, 0] == 0.0  # mean of {1, 3} standardizes to zero
    assert model.means[0] == 2.0


def test_binary_column_is_single_ordinal():
    schema = (ColumnSpec("categorical", ("no", "yes"), "flag"),)
    rows = [("no",), ("yes",), ("no",)]
    model = preprocess_fit(rows, schema)
    assert model.out_dim == 1
    X = preprocess_apply(model, rows)
    np.testing.assert_array_equal(X[:, 0], [0.0, 1.0, 0.0])


def test_multicategory_one_hot_and_unseen():
    schema = (ColumnSpec("categorical", ("a", "b", "c"), "col"),)
    model = preprocess_fit([("a",), ("b",)], schema)
    assert model.out_dim == 3
    X = preprocess_apply(model, [("a",), ("c",), ("zzz",), (None,)])
    np.testing.assert_array_equal(X[0], [1.0, 0.0, 0.0])
    np.testing.assert_array_equal(X[1], [0.0, 0.0, 1.0])
    np.testing.assert_array_equal(X[2], [0.0, 0.0, 0.0])  # unseen: zero block
    np.testing.assert_array_equal(X[3], [0.0, 0.0, 0.0])


def test_preprocess_row_width_errors():
    model = preprocess_fit([(1.0,)], (ColumnSpec("numeric", None, "c"),))
    with pytest.raises(InvalidDatasetError):
        preprocess_apply(model, [(1.0, 2.0)])
    with pytest.raises(InvalidDatasetError):
        preprocess_fit([(1.0, 2.0)], (ColumnSpec("numeric", None, "c"),))


def test_numeric_column_rejects_text():
    with pytest.raises(InvalidDatasetError):
        preprocess_fit([("abc",)], (ColumnSpec("numeric", None, "c"),))


def test_categorical_spec_needs_categories():
    with pytest.raises(InvalidArgumentError):
        ColumnSpec("categorical", None, "bad")


def test_encode_labels_sorted_and_strict():
    y, classes = encode_labels(["b", "a", "b", "c"])
    assert classes == ("a", "b", "c")
    np.testing.assert_array_equal(y, [1, 0, 1, 2])
    with pytest.raises(InvalidDatasetError):
        encode_labels(["a", None])


# ---------------------------------------------------------------------------
# synthetic source
# ---------------------------------------------------------------------------


def test_gaussian_overlap_counts_and_determinism():
    ds = make_gaussian_overlap(n=300, d=4, imbalance_ratio=5.0, seed=9)
    counts = np.bincount(ds.labels)
    assert counts[1] == round(300 / 6.0)
    assert counts.sum() == 300
    again = make_gaussian_overlap(n=300, d=4, imbalance_ratio=5.0, seed=9)
    np.testing.assert_array_equal(ds.features, again.features)
    other = make_gaussian_overlap(n=300, d=4, imbalance_ratio=5.0, seed=10)
    assert not np.allclose(ds.features, other.features)


def test_gaussian_overlap_name_and_validation():
    ds = make_gaussian_overlap(n=100, d=2, imbalance_ratio=4.0, seed=1)
    assert ds.name == "gauss-n100-d2-ir4-s1"
    with pytest.raises(InvalidArgumentError):
        make_gaussian_overlap(n=3)
    with pytest.raises(InvalidArgumentError):
        make_gaussian_overlap(imbalance_ratio=0.5)


def test_gaussian_overlap_classes_actually_overlap():
    # center distance is 1.8 sigma: neither class is linearly separable
    ds = make_gaussian_overlap(n=2000, d=10, imbalance_ratio=2.0, seed=0)
    mu0 = ds.features[ds.labels == 0].mean(axis=0)
    mu1 = ds.features[ds.labels == 1].mean(axis=0)
    assert 1.4 < np.linalg.norm(mu1 - mu0) < 2.2
