import math
from itertools import combinations

import numpy as np
import pytest

from mheights import codes, linalg


def test_rank_identity():
    assert linalg.rank(np.eye(3), 1e-9) == 3


def test_rank_dependent_rows():
    assert linalg.rank([[1, 2], [2, 4]], 1e-9) == 1


def test_rank_zero_matrix():
    assert linalg.rank(np.zeros((2, 3))) == 0


def test_rank_circular_parity_matrix():
    # the two rows are orthogonal and nonzero, so the rank must be 2
    H = codes.make_negacyclic(6).parity_check
    assert abs(H[0] @ H[1]) < 1e-12
    assert H[0] @ H[0] > 0 and H[1] @ H[1] > 0
    assert linalg.rank(H, 1e-9) == 2


def test_rank_rejects_nonfinite():
    with pytest.raises(ValueError):
        linalg.rank([[1.0, float("nan")]])


def test_invert_identity():
    assert np.allclose(linalg.invert(np.eye(3)), np.eye(3))


def test_invert_diagonal():
    assert np.allclose(linalg.invert([[2, 0], [0, 4]]), [[0.5, 0], [0, 0.25]])


def test_invert_circular_columns():
    # columns 0 and 1 for n = 4 are (1, 0) and (cos 45, sin 45); the
    # closed-form 2x2 inverse is [[1, -1], [0, sqrt 2]]
    H = codes.make_negacyclic(4).parity_check
    expected = np.array([[1.0, -1.0], [0.0, math.sqrt(2.0)]])
    assert np.allclose(linalg.invert(H[:, :2]), expected, atol=1e-12)


def test_invert_singular_raises():
    with pytest.raises(linalg.SingularMatrixError):
        linalg.invert([[1, 2], [2, 4]])


def test_invert_contract_residual():
    rng = np.random.default_rng(5)
    M = rng.standard_normal((5, 5))
    inv = linalg.invert(M)
    assert np.abs(M @ inv - np.eye(5)).max() < 1e-9


def test_null_space_one_constraint():
    K = linalg.null_space_basis([[1.0, 1.0]])
    assert K.shape == (1, 2)
    # spans (1, -1) up to scale
    assert abs(K[0, 0] + K[0, 1]) < 1e-12


def test_null_space_circular_n3():
    H = codes.make_negacyclic(3).parity_check
    K = linalg.null_space_basis(H)
    assert K.shape == (1, 3)
    direction = np.array([-1.0, 1.0, -1.0])
    cos = (K[0] @ direction) / (np.linalg.norm(K[0]) * np.linalg.norm(direction))
    assert abs(abs(cos) - 1.0) < 1e-12


def test_null_space_padded_identity():
    K = linalg.null_space_basis([[1, 0, 0], [0, 1, 0]])
    assert K.shape == (1, 3)
    assert np.allclose(np.abs(K[0]), [0, 0, 1], atol=1e-12)


def test_null_space_rank_deficient_raises():
    with pytest.raises(linalg.RankDeficientError):
        linalg.null_space_basis([[1, 2], [2, 4]])


def test_null_space_orthogonality_property():
    rng = np.random.default_rng(17)
    for _ in range(20):
        rows = int(rng.integers(1, 4))
        cols = int(rng.integers(rows + 1, 8))
        M = rng.standard_normal((rows, cols))
        K = linalg.null_space_basis(M)
        assert K.shape == (cols - rows, cols)
        assert linalg.rank(K) == cols - rows
        scale = max(1.0, np.abs(M).max())
        assert np.abs(M @ K.T).max() <= 1e-9 * scale


def test_enumerate_subsets_basic():
    assert list(linalg.enumerate_subsets(3, 2)) == [(0, 1), (0, 2), (1, 2)]


def test_enumerate_subsets_empty():
    assert list(linalg.enumerate_subsets(4, 0)) == [()]


def test_enumerate_subsets_count_and_order():
    subsets = list(linalg.enumerate_subsets(6, 3))
    assert len(subsets) == math.comb(6, 3) == 20
    assert subsets[0] == (0, 1, 2)
    assert subsets[-1] == (3, 4, 5)
    assert len(set(subsets)) == len(subsets)
    assert subsets == sorted(subsets)


def test_enumerate_subsets_bad_args():
    with pytest.raises(ValueError):
        list(linalg.enumerate_subsets(3, 4))


def test_complement():
    assert linalg.complement((1, 3), 5) == (0, 2, 4)
    assert linalg.complement((), 3) == (0, 1, 2)


def test_upsilon_simple():
    # every 2x2 minor of [[1,0,1],[0,1,1]] is nonzero
    assert linalg.upsilon([[1, 0, 1], [0, 1, 1]]) == [(0, 1), (0, 2), (1, 2)]


def test_upsilon_zero_column():
    assert linalg.upsilon([[1, 0, 0], [0, 1, 0]]) == [(0, 1)]


def test_upsilon_icosahedral_is_full(ico):
    # the [6,3] icosahedral code is MDS: every 3-subset is an information set
    assert len(linalg.upsilon(ico.generator)) == math.comb(6, 3)


def test_upsilon_invert_consistency():
    rng = np.random.default_rng(3)
    G = rng.standard_normal((3, 6))
    ups = set(linalg.upsilon(G))
    for S in combinations(range(6), 3):
        if S in ups:
            linalg.invert(G[:, S])  # must succeed
        else:
            with pytest.raises(linalg.SingularMatrixError):
                linalg.invert(G[:, S])


def test_upsilon_complement_duality():
    # I is an information set of the code iff its complement is one of the dual
    rng = np.random.default_rng(9)
    G = rng.standard_normal((2, 5))
    K = linalg.null_space_basis(G)
    primal = set(linalg.upsilon(G))
    dual_sets = set(linalg.upsilon(K))
    for S in combinations(range(5), 2):
        assert (S in primal) == (linalg.complement(S, 5) in dual_sets)
