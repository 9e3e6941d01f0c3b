"""Seed derivation: stable across runs, order-sensitive, no global state."""

import numpy as np

from imbal import derive_seed, rng_from


def test_derived_values_are_frozen():
    # changing the hash would silently reshuffle every seeded experiment
    assert derive_seed("a") == 4681665781835383343
    assert derive_seed("ds", "rus", 0) == 7452115668098863483


def test_order_and_boundaries_matter():
    assert derive_seed("a", 1) != derive_seed(1, "a")
    assert derive_seed("a", 1) != derive_seed("a1")
    assert derive_seed("ab", "c") != derive_seed("a", "bc")


def test_int_like_floats_collapse_to_ints():
    # TOML round-trips may widen 2 to 2.0; both must address the same stream
    assert derive_seed(2.0) == derive_seed(2)
    assert derive_seed("x", 5.0, "y") == derive_seed("x", 5, "y")
    assert derive_seed(2.5) != derive_seed(2)


def test_sequences_hash_by_content():
    assert derive_seed((1, 2)) == derive_seed([1, 2])
    assert derive_seed((1, 2)) != derive_seed(1, 2)


def test_rng_streams_repeat_and_differ():
    a = rng_from("ctx", 0).random(8)
    b = rng_from("ctx", 1).random(8)
    again = rng_from("ctx", 0).random(8)
    np.testing.assert_array_equal(a, again)
    assert not np.allclose(a, b)


def test_rng_does_not_touch_global_state():
    np.random.seed(123)
    before = np.random.get_state()[1][:10].copy()
    rng_from("anything", 7).random(100)
    np.random.seed(123)
    np.testing.assert_array_equal(np.random.get_state()[1][:10], before)


def test_seed_spread_over_grid():
    seeds = {derive_seed("ds", m, f) for m in range(64) for f in range(8)}
    assert len(seeds) == 64 * 8
