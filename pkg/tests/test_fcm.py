import numpy as np
import pytest

import gzclust as gz
from gzclust import membership_matrix


def test_closed_form_membership():
    # Point 0.25 between centers 0 and 1 with m=2:
    # u0 = 1 / (1 + (0.25/0.75)^2) = 0.9
    sq = np.array([[0.25**2, 0.75**2]])
    u = membership_matrix(sq, 2.0)
    np.testing.assert_allclose(u, [[0.9, 0.1]], atol=1e-12)


def test_membership_rows_sum_to_one():
    rng = np.random.default_rng(0)
    sq = rng.random((50, 4)) + 0.01
    u = membership_matrix(sq, 2.0)
    np.testing.assert_allclose(u.sum(axis=1), 1.0, atol=1e-12)
    assert (u >= 0).all()


def test_zero_distance_goes_crisp():
    u = membership_matrix(np.array([[0.0, 4.0]]), 2.0)
    np.testing.assert_array_equal(u, [[1.0, 0.0]])


def test_coincident_zero_distances_split_equally():
    u = membership_matrix(np.array([[0.0, 0.0, 9.0]]), 2.0)
    np.testing.assert_array_equal(u, [[0.5, 0.5, 0.0]])


def test_tiny_distance_overflow_guard():
    # Reciprocal powers overflow for denormal distances; the row must
    # still come back crisp on the closest center rather than NaN.
    u = membership_matrix(np.array([[1e-320, 5.0]]), 2.0)
    assert np.isfinite(u).all()
    np.testing.assert_allclose(u, [[1.0, 0.0]], atol=1e-12)


def test_fuzzifier_controls_softness():
    sq = np.array([[1.0, 4.0]])
    sharp = membership_matrix(sq, 1.5)
    soft = membership_matrix(sq, 6.0)
    assert sharp[0, 0] > soft[0, 0] > 0.5  # larger m flattens memberships


def test_columns_sum_to_one_every_iteration():
    rng = np.random.default_rng(1)
    x = rng.normal(size=(150, 5))
    worst = []
    gz.fcm(
        x,
        3,
        seed=0,
        on_step=lambda it, u, centers, j: worst.append(np.abs(u.sum(axis=0) - 1.0).max()),
    )
    assert worst  # hook fired
    assert max(worst) < 1e-9


def test_objective_history_non_increasing():
    rng = np.random.default_rng(2)
    for i in range(8):
        x = rng.normal(size=(120, 4))
        run = gz.fcm(x, 2 + i % 3, seed=i)
        h = run.objective_history
        rel = np.diff(h) / np.maximum(1.0, np.abs(h[:-1]))
        assert (rel <= 1e-9).all()


def test_converges_on_separated_data():
    feats, _ = gz.synth_blobs(200, 2, 3, separation=12.0, spread=1.0, seed=0)
    run = gz.fcm(feats.data, 2, seed=0)
    assert run.converged
    assert run.iterations < 300
    # Near-certain memberships on well-separated blobs
    assert np.sort(run.memberships, axis=0)[-1].min() > 0.95


def test_centers_found_on_two_point_line():
    x = np.array([[0.0], [1.0], [10.0], [11.0]])
    run = gz.fcm(x, 2, seed=3)
    got = np.sort(run.centers.ravel())
    np.testing.assert_allclose(got, [0.5, 10.5], atol=0.01)


def test_defuzzify_argmax_with_tie_to_lowest():
    u = np.array([[0.5, 0.2], [0.5, 0.8]])
    np.testing.assert_array_equal(gz.defuzzify(u), [0, 1])


def test_defuzzify_validates_partition():
    with pytest.raises(ValueError):
        gz.defuzzify(np.array([[0.9, 0.5], [0.3, 0.5]]))  # column sums off
    with pytest.raises(ValueError):
        gz.defuzzify(np.array([1.0, 0.0]))  # not 2-d


def test_seeded_determinism():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(90, 3))
    a = gz.fcm(x, 3, seed=5)
    b = gz.fcm(x, 3, seed=5)
    np.testing.assert_array_equal(a.memberships, b.memberships)
    assert a.objective == b.objective


def test_singletons_on_n_equals_c():
    x = np.array([[0.0, 0.0], [20.0, 0.0], [0.0, 20.0]])
    run = gz.fcm(x, 3, seed=1)
    assert sorted(run.labels.tolist()) == [0, 1, 2]
    assert run.objective < 1e-6


def test_epsilon_stops_iteration():
    rng = np.random.default_rng(4)
    x = rng.normal(size=(80, 2))
    loose = gz.fcm(x, 2, epsilon=1e-2, seed=0)
    tight = gz.fcm(x, 2, epsilon=1e-12, seed=0)
    assert loose.iterations <= tight.iterations


def test_validation_errors():
    x = np.zeros((5, 2))
    with pytest.raises(ValueError):
        gz.fcm(x, 1, seed=0)
    with pytest.raises(ValueError):
        gz.fcm(x, 6, seed=0)
    with pytest.raises(ValueError):
        gz.fcm(x, 2, m=1.0, seed=0)
    with pytest.raises(ValueError):
        gz.fcm(x, 2, epsilon=0.0, seed=0)
    with pytest.raises(ValueError):
        gz.fcm(x, 2, seed=0, max_iter=0)


def test_memberships_shape_and_orientation():
    rng = np.random.default_rng(5)
    x = rng.normal(size=(40, 2))
    run = gz.fcm(x, 3, seed=0)
    assert run.memberships.shape == (3, 40)  # clusters by galaxies
    np.testing.assert_allclose(run.memberships.sum(axis=0), 1.0, atol=1e-9)
    np.testing.assert_array_equal(run.labels, np.argmax(run.memberships, axis=0))
