"""Dense real matrix kernels: rank, inverse, null space, subset streams.

Everything operates on small dense float64 arrays.  Pivot decisions use a
relative threshold: a pivot is accepted only if its magnitude exceeds
``tol`` times the largest magnitude of the *input* matrix.  Elimination
uses partial pivoting by largest magnitude, so results are deterministic
and downstream "first maximizer" tie-breaks are reproducible.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

DEFAULT_TOL = 1e-9


class SingularMatrixError(ValueError):
    """Square matrix has no inverse at the working tolerance."""


class RankDeficientError(ValueError):
    """Matrix rows are linearly dependent at the working tolerance."""


def as_matrix(values) -> np.ndarray:
    """Coerce to a 2-D float64 array, rejecting NaN/inf entries."""
    M = np.asarray(values, dtype=float)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {M.shape}")
    if M.size and not np.all(np.isfinite(M)):
        raise ValueError("matrix entries must be finite")
    return M


def rank(M, tol: float = DEFAULT_TOL) -> int:
    """Numerical rank via row reduction with partial pivoting.

    A pivot is accepted iff its magnitude exceeds ``tol`` times the
    largest entry magnitude of ``M``.  The zero matrix has rank 0.
    """
    A = as_matrix(M).copy()
    rows, cols = A.shape
    if A.size == 0:
        return 0
    threshold = tol * np.max(np.abs(A))
    if threshold == 0.0:
        return 0
    r = 0
    for col in range(cols):
        if r == rows:
            break
        p = r + int(np.argmax(np.abs(A[r:, col])))
        if abs(A[p, col]) <= threshold:
            continue
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r + 1 :] -= np.outer(A[r + 1 :, col] / A[r, col], A[r])
        r += 1
    return r


def invert(M, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Inverse of a square matrix by Gauss-Jordan with partial pivoting.

    Raises:
        SingularMatrixError: some pivot falls below the relative
            threshold, i.e. the matrix has rank below its order.
    """
    A = as_matrix(M)
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"matrix is not square: shape {A.shape}")
    order = A.shape[0]
    if order == 0:
        return np.zeros((0, 0))
    threshold = tol * np.max(np.abs(A))
    if threshold == 0.0:
        raise SingularMatrixError("zero matrix is singular")
    aug = np.hstack([A.astype(float), np.eye(order)])
    for col in range(order):
        p = col + int(np.argmax(np.abs(aug[col:, col])))
        if abs(aug[p, col]) <= threshold:
            raise SingularMatrixError(f"pivot {aug[p, col]:.3e} below threshold in column {col}")
        if p != col:
            aug[[col, p]] = aug[[p, col]]
        aug[col] /= aug[col, col]
        other = np.arange(order) != col
        aug[other] -= np.outer(aug[other, col], aug[col])
    return aug[:, order:]


def null_space_basis(M, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Full-rank basis of the right null space, as matrix rows.

    For an r x n input of full row rank r, returns an (n-r) x n matrix K
    with orthonormal rows satisfying M @ K.T == 0 (to roundoff).

    Raises:
        RankDeficientError: rank(M) < number of rows.
    """
    A = as_matrix(M)
    rows, cols = A.shape
    if rank(A, tol) < rows:
        raise RankDeficientError("rows are linearly dependent; null space basis undefined")
    _, _, vh = np.linalg.svd(A, full_matrices=True)
    return vh[rows:].copy()


def enumerate_subsets(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """All m-subsets of range(n) as sorted tuples, in lexicographic order."""
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    return iter(combinations(range(n), m))


def complement(members: Iterable[int], ambient: int) -> tuple[int, ...]:
    """Sorted complement of an index subset inside range(ambient)."""
    inside = set(members)
    return tuple(j for j in range(ambient) if j not in inside)


def upsilon(G, tol: float = DEFAULT_TOL) -> list[tuple[int, ...]]:
    """Information sets of a k x n generator matrix.

    Returns every k-subset of column indices on which G is nonsingular,
    in lexicographic order.
    """
    A = as_matrix(G)
    k, n = A.shape
    return [s for s in combinations(range(n), k) if rank(A[:, s], tol) == k]
