"""Single entry point covering every method tag."""

import numpy as np
import pytest

from imbal import InvalidArgumentError
from imbal.methods import DEFAULT_ENSEMBLE_SIZE, METHOD_GROUPS, METHOD_TAGS, fit_method

from _util import random_dataset


def test_registry_shape():
    assert len(METHOD_TAGS) == 32
    assert len(set(METHOD_TAGS)) == 32
    assert sum(len(v) for v in METHOD_GROUPS.values()) == 32
    assert DEFAULT_ENSEMBLE_SIZE == 100
    assert "base" in METHOD_GROUPS["baseline"]


def test_every_tag_fits_and_scores():
    rng = np.random.default_rng(91)
    ds = random_dataset(rng, n_classes=2, min_count=8, max_count=24, d=3)
    n = ds.features.shape[0]
    for tag in METHOD_TAGS:
        model = fit_method(ds, tag, seed=1, n_estimators=5)
        P = model.predict_proba(ds.features)
        assert P.shape == (n, 2), tag
        np.testing.assert_allclose(P.sum(axis=1), 1.0, atol=1e-9, err_msg=tag)
        pred = model.predict(ds.features)
        assert set(np.unique(pred)) <= {0, 1}, tag


def test_multiclass_tags():
    rng = np.random.default_rng(92)
    ds = random_dataset(rng, n_classes=3, min_count=8, max_count=20, d=3)
    for tag in ("base", "rus", "smote", "spe", "underbagging", "adacost"):
        model = fit_method(ds, tag, seed=0, n_estimators=4)
        P = model.predict_proba(ds.features)
        assert P.shape == (ds.features.shape[0], 3)


def test_unknown_tag_raises():
    rng = np.random.default_rng(93)
    ds = random_dataset(rng)
    with pytest.raises(InvalidArgumentError):
        fit_method(ds, "xgboost", seed=0)


def test_unknown_param_raises():
    rng = np.random.default_rng(94)
    ds = random_dataset(rng, min_count=8)
    with pytest.raises(InvalidArgumentError):
        fit_method(ds, "smote", params={"bogus_knob": 3}, seed=0)


def test_params_accept_float_ints():
    rng = np.random.default_rng(95)
    ds = random_dataset(rng, min_count=8, max_count=20)
    # search spaces hand integers back as floats; the registry coerces
    a = fit_method(ds, "smote", params={"k_neighbors": 3.0}, seed=2, n_estimators=5)
    b = fit_method(ds, "smote", params={"k_neighbors": 3}, seed=2, n_estimators=5)
    np.testing.assert_allclose(
        a.predict_proba(ds.features), b.predict_proba(ds.features), atol=0
    )


def test_n_estimators_respected():
    rng = np.random.default_rng(96)
    ds = random_dataset(rng, min_count=8, max_count=20)
    for tag in ("underbagging", "overbagging", "spe", "brf"):
        m = fit_method(ds, tag, seed=0, n_estimators=6)
        assert m.n_members == 6, tag


def test_method_deterministic_per_seed():
    rng = np.random.default_rng(97)
    ds = random_dataset(rng, min_count=8, max_count=20)
    for tag in ("rus", "smote", "spe", "adacost"):
        a = fit_method(ds, tag, seed=11, n_estimators=4)
        b = fit_method(ds, tag, seed=11, n_estimators=4)
        np.testing.assert_allclose(
            a.predict_proba(ds.features), b.predict_proba(ds.features), atol=0
        )


def test_learning_rate_param_flows_to_boosters():
    rng = np.random.default_rng(98)
    ds = random_dataset(rng, min_count=8, max_count=20)
    m = fit_method(ds, "rusboost", params={"learning_rate": 0.5}, seed=0, n_estimators=4)
    assert m.n_members >= 1
