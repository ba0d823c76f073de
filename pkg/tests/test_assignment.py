from itertools import permutations

import numpy as np
import pytest

import gzclust as gz

linear_sum_assignment = pytest.importorskip("scipy.optimize").linear_sum_assignment


def test_build_confusion_counts():
    cm = gz.build_confusion([0, 0, 1, 1, 1], [0, 1, 1, 1, 0], 2)
    np.testing.assert_array_equal(cm, [[1, 1], [1, 2]])


def test_build_confusion_empty_inputs():
    cm = gz.build_confusion([], [], 3)
    np.testing.assert_array_equal(cm, np.zeros((3, 3)))


def test_build_confusion_validation():
    with pytest.raises(ValueError):
        gz.build_confusion([0, 1], [0], 2)
    with pytest.raises(ValueError):
        gz.build_confusion([0, 2], [0, 1], 2)
    with pytest.raises(ValueError):
        gz.build_confusion([0, 1], [0, -1], 2)


def test_hand_worked_permutation():
    # Swapping beats identity: 7 + 5 = 12 versus 0 + 1
    mapping, total = gz.best_permutation(np.array([[0, 5], [7, 1]]))
    assert mapping == (1, 0)
    assert total == 12


def test_identity_kept_when_already_best():
    mapping, total = gz.best_permutation(np.array([[9, 1], [1, 9]]))
    assert mapping == (0, 1)
    assert total == 18


def test_tie_breaks_to_lexicographically_smallest():
    mapping, total = gz.best_permutation(np.full((3, 3), 4))
    assert mapping == (0, 1, 2)
    assert total == 12


def test_matches_optimal_assignment_oracle():
    rng = np.random.default_rng(0)
    for _ in range(100):
        k = int(rng.integers(2, 7))
        cm = rng.integers(0, 50, size=(k, k))
        mapping, total = gz.best_permutation(cm)
        rows, cols = linear_sum_assignment(cm, maximize=True)
        assert total == int(cm[rows, cols].sum())


def test_matches_exhaustive_recount():
    rng = np.random.default_rng(1)
    cm = rng.integers(0, 30, size=(4, 4))
    _, total = gz.best_permutation(cm)
    brute = max(sum(cm[p[j], j] for j in range(4)) for p in permutations(range(4)))
    assert total == int(brute)


def test_exhaustive_cap():
    cm = np.eye(9, dtype=np.int64)
    with pytest.raises(ValueError, match="max_exhaustive"):
        gz.best_permutation(cm)
    mapping, total = gz.best_permutation(np.eye(5, dtype=np.int64), max_exhaustive=5)
    assert mapping == (0, 1, 2, 3, 4)
    assert total == 5


def test_best_permutation_validation():
    with pytest.raises(ValueError):
        gz.best_permutation(np.zeros((2, 3)))


def test_apply_mapping_renames():
    mapped = gz.apply_mapping([0, 1, 2, 1], (2, 0, 1))
    np.testing.assert_array_equal(mapped, [2, 0, 1, 0])


def test_apply_mapping_diagonalizes_confusion():
    true = np.array([0, 0, 1, 1, 1, 2])
    pred = np.array([2, 2, 0, 0, 0, 1])  # clusters are a rotation of classes
    cm = gz.build_confusion(true, pred, 3)
    mapping, total = gz.best_permutation(cm)
    mapped_cm = gz.build_confusion(true, gz.apply_mapping(pred, mapping), 3)
    assert int(np.trace(mapped_cm)) == total == 6


def test_apply_mapping_validation():
    with pytest.raises(ValueError, match="permutation"):
        gz.apply_mapping([0], (0, 0))
    with pytest.raises(ValueError, match="range"):
        gz.apply_mapping([2], (0, 1))
