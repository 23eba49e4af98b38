"""Deterministic dense linear programming machinery.

A two-phase tableau simplex with Bland's least-index anti-cycling rule
solves maximization problems over free variables with row constraints
``A x <= b``.  A brute-force vertex enumerator serves as an independent
test oracle, and the least-absolute-deviations helpers solve the L1
regression subproblems needed by the height computations.

All routines are pure: every call allocates its own working state, so
they are safe to invoke concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import linalg

DEFAULT_TOL = 1e-9
_MAX_PIVOTS = 50_000

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


class ZeroDirectionError(ValueError):
    """Direction vector of a scalar L1 fit is identically zero."""


def _rhs_scale(b: np.ndarray) -> float:
    return max(1.0, float(np.abs(b).max())) if b.size else 1.0


@dataclass(frozen=True, eq=False)
class LpProblem:
    """Maximize ``objective @ x`` subject to ``constraint_matrix @ x <= rhs``.

    Variables are free (unrestricted in sign).  Encode ``>=`` rows by
    negating them and equality rows as paired inequalities.
    """

    objective: np.ndarray
    constraint_matrix: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float).ravel()
        A = linalg.as_matrix(self.constraint_matrix)
        b = np.asarray(self.rhs, dtype=float).ravel()
        if A.shape != (b.size, c.size):
            raise ValueError(
                f"inconsistent LP shapes: A {A.shape}, c {c.size}, b {b.size}"
            )
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "constraint_matrix", A)
        object.__setattr__(self, "rhs", b)


@dataclass(frozen=True, eq=False)
class LpSolution:
    """Solver outcome; ``optimum``/``point`` are set only when optimal.

    ``active_set`` lists the constraints that are tight at the returned
    point, within the feasibility tolerance.
    """

    status: str
    optimum: float | None = None
    point: np.ndarray | None = None
    active_set: tuple[int, ...] = ()


def _pivot(T: np.ndarray, basis: list[int], i: int, j: int) -> None:
    T[i] /= T[i, j]
    col = T[:, j].copy()
    col[i] = 0.0
    T -= np.outer(col, T[i])
    basis[i] = j


def _run_simplex(T: np.ndarray, basis: list[int], cost: np.ndarray, tol: float) -> str:
    """Minimize ``cost @ z`` over ``T z = rhs, z >= 0`` from a feasible basis.

    ``T`` is the (rows x ncols+1) tableau with the rhs in its last
    column, already expressed in the given basis.  Bland's rule: the
    entering variable is the smallest index with a negative reduced
    cost, and ratio-test ties leave the basic variable of smallest
    index.  Mutates ``T`` and ``basis``; returns OPTIMAL or UNBOUNDED.
    """
    ncols = T.shape[1] - 1
    red = cost - cost[np.asarray(basis, dtype=int)] @ T[:, :ncols]
    for _ in range(_MAX_PIVOTS):
        improving = np.nonzero(red < -tol)[0]
        if improving.size == 0:
            return OPTIMAL
        j = int(improving[0])
        col = T[:, j]
        pos = np.nonzero(col > tol)[0]
        if pos.size == 0:
            return UNBOUNDED
        ratios = T[pos, -1] / col[pos]
        rmin = ratios.min()
        near = pos[ratios <= rmin * (1.0 + 1e-9) + 1e-15]
        i = int(near[np.argmin([basis[t] for t in near])])
        _pivot(T, basis, i, j)
        red = red - red[j] * T[i, :ncols]
    raise ArithmeticError("simplex failed to terminate within the pivot budget")


def solve_lp(problem: LpProblem, tol: float = DEFAULT_TOL) -> LpSolution:
    """Global optimum of a dense LP by the two-phase simplex method.

    Free variables are split into positive and negative parts and each
    row gets a nonnegative slack, which yields the standard augmented
    equality form.  Identical inputs produce the identical solution
    point (Bland pivoting is fully index-determined).
    """
    c = problem.objective
    A = problem.constraint_matrix
    b = problem.rhs
    mc, nv = A.shape
    sign = np.where(b < 0, -1.0, 1.0)
    body = sign[:, None] * np.hstack([A, -A, np.eye(mc)])
    rhs = sign * b
    ncols = 2 * nv + mc
    art_rows = np.nonzero(sign < 0)[0]

    if art_rows.size:
        art = np.zeros((mc, art_rows.size))
        art[art_rows, np.arange(art_rows.size)] = 1.0
        T = np.hstack([body, art, rhs[:, None]])
        basis = [0] * mc
        next_art = ncols
        for i in range(mc):
            if sign[i] < 0:
                basis[i] = next_art
                next_art += 1
            else:
                basis[i] = 2 * nv + i
        cost1 = np.zeros(ncols + art_rows.size)
        cost1[ncols:] = 1.0
        _run_simplex(T, basis, cost1, tol)  # bounded below by 0, never unbounded
        if cost1[np.asarray(basis, dtype=int)] @ T[:, -1] > tol * _rhs_scale(b):
            return LpSolution(INFEASIBLE)
        # drive leftover artificials out of the basis, then drop their columns
        keep_rows = np.ones(T.shape[0], dtype=bool)
        for i in range(T.shape[0]):
            if basis[i] >= ncols:
                nz = np.nonzero(np.abs(T[i, :ncols]) > tol)[0]
                if nz.size:
                    _pivot(T, basis, i, int(nz[0]))
                else:
                    keep_rows[i] = False  # redundant constraint row
        if not keep_rows.all():
            T = T[keep_rows]
            basis = [v for v, keep in zip(basis, keep_rows) if keep]
        T = np.hstack([T[:, :ncols], T[:, -1:]])
    else:
        T = np.hstack([body, rhs[:, None]])
        basis = [2 * nv + i for i in range(mc)]

    cost2 = np.concatenate([-c, c, np.zeros(mc)])  # minimize -objective
    status = _run_simplex(T, basis, cost2, tol)
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED)
    z = np.zeros(ncols)
    z[basis] = T[:, -1]
    x = z[:nv] - z[nv : 2 * nv]
    residual = b - A @ x
    active = tuple(int(i) for i in np.nonzero(np.abs(residual) <= tol * _rhs_scale(b))[0])
    return LpSolution(OPTIMAL, float(c @ x), x, active)


def _best_vertex(A: np.ndarray, b: np.ndarray, c: np.ndarray, tol: float):
    """Best feasible basic point, scanning all square constraint subsets."""
    mc, nv = A.shape
    best_val = None
    best_x = None
    for rows in combinations(range(mc), nv):
        sub = A[list(rows)]
        if linalg.rank(sub, 1e-10) < nv:
            continue
        x = np.linalg.solve(sub, b[list(rows)])
        if np.all(A @ x <= b + tol * _rhs_scale(b)):
            val = float(c @ x)
            if best_val is None or val > best_val:
                best_val, best_x = val, x
    return best_val, best_x


def solve_lp_by_vertices(problem: LpProblem, tol: float = DEFAULT_TOL) -> LpSolution:
    """Brute-force LP oracle: enumerate basic points, keep the best feasible.

    Intended for cross-checking ``solve_lp`` on small instances (at most
    8 variables and 40 constraints).  Statuses are trustworthy when the
    constraint matrix has full column rank, so that a nonempty feasible
    region has at least one vertex; unboundedness is detected through a
    boxed recession-direction subproblem.
    """
    c = problem.objective
    A = problem.constraint_matrix
    b = problem.rhs
    mc, nv = A.shape
    if nv > 8 or mc > 40:
        raise ValueError("vertex oracle limited to <= 8 variables and <= 40 constraints")
    best_val, best_x = _best_vertex(A, b, c, tol)
    if best_x is None:
        return LpSolution(INFEASIBLE)
    A_rec = np.vstack([A, np.eye(nv), -np.eye(nv)])
    b_rec = np.concatenate([np.zeros(mc), np.ones(2 * nv)])
    rec_val, _ = _best_vertex(A_rec, b_rec, c, tol)
    if rec_val is not None and rec_val > tol * (1.0 + np.abs(c).sum()):
        return LpSolution(UNBOUNDED)
    residual = b - A @ best_x
    active = tuple(int(i) for i in np.nonzero(np.abs(residual) <= tol * _rhs_scale(b))[0])
    return LpSolution(OPTIMAL, best_val, best_x, active)


def lad_minimize(a, B, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, float]:
    """Minimize ``||a - v @ B||_1`` over v, via linear programming.

    The LP introduces one auxiliary variable per residual coordinate,
    bounding its magnitude from both sides.  Always feasible and bounded
    below by zero.  A ``B`` without rows (or identically zero) leaves
    nothing to fit: v = 0 and the value is ``||a||_1``.
    """
    a = np.asarray(a, dtype=float).ravel()
    B = linalg.as_matrix(B) if np.ndim(B) == 2 else np.atleast_2d(np.asarray(B, dtype=float))
    p, q = B.shape
    if q != a.size:
        raise ValueError(f"shape mismatch: a has {a.size} entries, B has {q} columns")
    if p == 0 or not B.any():
        return np.zeros(p), float(np.abs(a).sum())
    eye = np.eye(q)
    A = np.vstack([
        np.hstack([-B.T, -eye]),
        np.hstack([B.T, -eye]),
    ])
    rhs = np.concatenate([-a, a])
    obj = np.concatenate([np.zeros(p), -np.ones(q)])
    sol = solve_lp(LpProblem(obj, A, rhs), tol)
    if sol.status != OPTIMAL:
        raise ArithmeticError(f"L1 fit LP reported {sol.status}; it must be solvable")
    v = sol.point[:p]
    return v, float(-sol.optimum)


def weighted_median_lad(a, b) -> tuple[float, float]:
    """Minimize ``||a - v * b||_1`` over the scalar v by a weighted median.

    The minimizer is a weighted median of the ratios ``a_j / b_j`` over
    the support of ``b``, weighted by ``|b_j|``: sort the ratios in
    ascending order and take the first one at which the cumulative
    weight reaches half the total.  When the half mass is hit exactly at
    a breakpoint the minimizer is an interval; this returns its smaller
    endpoint, fixing determinism.  The residual ``a - v * b`` always has
    a zero coordinate inside the support of ``b``.

    Raises:
        ZeroDirectionError: ``b`` has no nonzero entry.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.shape != b.shape:
        raise ValueError("a and b must have the same length")
    support = np.nonzero(b != 0.0)[0]
    if support.size == 0:
        raise ZeroDirectionError("direction vector is zero")
    ratios = a[support] / b[support]
    weights = np.abs(b[support])
    order = np.argsort(ratios, kind="stable")
    cum = np.cumsum(weights[order])
    half = 0.5 * weights.sum()
    h = int(np.nonzero(cum >= half)[0][0])
    v = float(ratios[order[h]])
    return v, float(np.abs(a - v * b).sum())
