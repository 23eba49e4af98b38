"""Height computations for linear codes over the reals.

The m-height of a nonzero vector is the ratio of its largest entry
magnitude to its (m+1)-st largest, infinite when the latter vanishes;
the m-height of a code is the supremum over its nonzero codewords, and
the list over m is the code's height profile.  The profile determines
the minimum distance: d is the first m whose height is infinite.

Four independent routes compute the same value for m below the minimum
distance:

* ``height_lp_primal``   -- one linear program per (m-subset, index) pair,
  maximizing a coordinate of a codeword whose remaining coordinates are
  confined to [-1, 1];
* ``height_lp_dual``     -- the dual route: per pair, the least L1 norm of a
  coset of the punctured code's dual, solved as an L1 regression;
* ``height_comb_primal`` -- finite enumeration over information sets and
  sign vectors (also available in parity-check form, preferable when
  k exceeds the redundancy);
* ``height_comb_dual``   -- a max-min over subsets and information sets
  using only L1 norms of solved linear systems.

Fast paths: at m = r - 1 the inner L1 fit reduces to a scalar weighted
median, and at m = r (MDS codes only) ``r_height`` evaluates two closed
enumerations and cross-checks them.

Candidate enumerations are deterministic and tie-breaks always keep the
lexicographically first maximizer, so certificates are reproducible.
The outer loops are embarrassingly parallel; ``workers`` > 1 evaluates
subset chunks on a thread pool and reduces in subset order, preserving
the deterministic result.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import linalg, lpcore
from .codes import RealCode

DEFAULT_TOL = 1e-9

# relative tolerance / absolute floor for "equal magnitude" tests
EQ_REL = 1e-9
EQ_ABS = 1e-12

INF = math.inf


class ZeroVectorError(ValueError):
    """Heights of the zero vector are undefined."""


class DistanceExceededError(ValueError):
    """Combinatorial primal enumeration requested at m >= minimum distance,
    where it does not compute the (infinite) height."""


class NotMdsError(ValueError):
    """Operation requires an MDS code."""


@dataclass(frozen=True, eq=False)
class ExtremalCertificate:
    """Witness that a height value is attained.

    ``codeword`` equals ``coefficients @ G`` for the code's generator G,
    its m-height equals ``height``, ``subset`` collects the m sorted
    positions of largest magnitude and ``index`` the position of the
    largest entry.
    """

    codeword: np.ndarray
    coefficients: np.ndarray
    subset: tuple[int, ...]
    index: int
    m: int
    height: float


@dataclass(frozen=True, eq=False)
class HeightProfile:
    """Per-m heights of a code with optional certificates.

    ``heights[m]`` is the m-height for m in [0, n); ``min_distance`` is
    the first m with an infinite height (n when all are finite).
    """

    heights: tuple[float, ...]
    certificates: tuple[ExtremalCertificate | None, ...]
    method: str
    min_distance: int


@dataclass(frozen=True, eq=False)
class CombDualResult:
    """Max-min witness: value attained at (subset, index) with the inner
    minimum at information set ``inner_set``; ``candidates`` counts the
    (subset, index, information set) triples that were evaluated."""

    value: float
    subset: tuple[int, ...] | None
    index: int | None
    inner_set: tuple[int, ...] | None
    candidates: int


def _as_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=float).ravel()
    if v.size == 0 or not np.any(v):
        raise ZeroVectorError("vector is zero")
    return v


def sorted_view(x) -> tuple[tuple[int, ...], np.ndarray]:
    """Permutation sorting the entries by descending magnitude, plus the
    sorted magnitudes themselves.  Ties keep the smaller index first, so
    the view is deterministic."""
    v = _as_vector(x)
    order = np.argsort(-np.abs(v), kind="stable")
    return tuple(int(j) for j in order), np.abs(v)[order]


def vector_m_height(x, m: int) -> float:
    """Ratio of the largest entry magnitude to the (m+1)-st largest.

    Infinite when the (m+1)-st largest magnitude is zero; equals 1 at
    m = 0 for any nonzero vector.
    """
    v = _as_vector(x)
    if not 0 <= m < v.size:
        raise ValueError(f"need 0 <= m < {v.size}, got {m}")
    mags = np.sort(np.abs(v))[::-1]
    if mags[m] == 0.0:
        return INF
    return float(mags[0] / mags[m])


def p_m_set(x, m: int) -> tuple[int, ...]:
    """Indices whose magnitude ties the (m+1)-st largest.

    Magnitude equality is tested with relative tolerance 1e-9 and an
    absolute floor of 1e-12, so entries that are exactly +-1 in theory
    but inexact in floats still group together.
    """
    v = _as_vector(x)
    if not 0 <= m < v.size:
        raise ValueError(f"need 0 <= m < {v.size}, got {m}")
    mags = np.abs(v)
    ref = np.sort(mags)[::-1][m]
    band = np.maximum(EQ_REL * np.maximum(mags, ref), EQ_ABS)
    return tuple(int(j) for j in np.nonzero(np.abs(mags - ref) <= band)[0])


def sign_vectors(k: int) -> np.ndarray:
    """All sign vectors in {+-1}^k with first entry +1, binary-counting
    order (row 0 is all ones; the last coordinate flips fastest)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    count = 1 << (k - 1)
    rows = np.arange(count)[:, None]
    shifts = np.arange(k - 2, -1, -1)[None, :]
    bits = (rows >> shifts) & 1 if k > 1 else np.zeros((1, 0), dtype=int)
    return np.hstack([np.ones((count, 1)), 1.0 - 2.0 * bits])


def min_distance_by_rank(code: RealCode, tol: float = DEFAULT_TOL) -> int:
    """Minimum distance as the smallest number of linearly dependent
    parity-check columns; r + 1 when every r columns are independent.

    Results at the default tolerance are memoized on the (immutable)
    code object, since several height routines consult the distance.
    """
    if tol == DEFAULT_TOL:
        cached = getattr(code, "_min_distance_cache", None)
        if cached is not None:
            return cached
    H = code.parity_check
    r = code.r
    d = r + 1
    if r == 0:
        d = 1
    else:
        done = False
        for w in range(1, r + 1):
            for cols in linalg.enumerate_subsets(code.n, w):
                if linalg.rank(H[:, cols], tol) < w:
                    d = w
                    done = True
                    break
            if done:
                break
    if tol == DEFAULT_TOL:
        object.__setattr__(code, "_min_distance_cache", d)
    return d


def is_mds(code: RealCode, tol: float = DEFAULT_TOL) -> bool:
    """True when the minimum distance attains the Singleton bound r + 1,
    equivalently every k coordinates form an information set."""
    return min_distance_by_rank(code, tol) == code.r + 1


def _certificate(code: RealCode, u: np.ndarray, m: int, height: float) -> ExtremalCertificate:
    c = u @ code.generator
    order, _ = sorted_view(c)
    return ExtremalCertificate(
        codeword=c,
        coefficients=np.asarray(u, dtype=float),
        subset=tuple(sorted(order[:m])),
        index=order[0],
        m=m,
        height=height,
    )


def _lp_for_pair(G: np.ndarray, cols: tuple[int, ...], i: int) -> lpcore.LpProblem:
    """The per-(subset, index) program: maximize the i-th codeword entry
    over coefficient vectors whose codeword is within [-1, 1] outside
    the subset."""
    Gs_t = G[:, cols].T
    A = np.vstack([Gs_t, -Gs_t])
    b = np.ones(2 * len(cols))
    return lpcore.LpProblem(G[:, i], A, b)


def _map_subsets(fn, subsets, workers: int):
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(fn, subsets)
    else:
        yield from map(fn, subsets)


def height_lp_primal(
    code: RealCode,
    m: int,
    tol: float = DEFAULT_TOL,
    workers: int = 1,
    precondition: bool = False,
) -> tuple[float, ExtremalCertificate | None]:
    """Code m-height by one LP per (m-subset, index in subset) pair.

    Scans subsets lexicographically and indices in ascending order; the
    certificate comes from the first maximizer.  An unbounded program
    signals m >= minimum distance, and the height is infinite (no
    certificate).  ``precondition`` rebases each subset's program on an
    information-set inverse, which tightens conditioning but leaves the
    value unchanged.
    """
    G = code.generator
    n, k = code.n, code.k
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < {n}, got {m}")

    def eval_subset(S):
        cols = linalg.complement(S, n)
        Gwork = G
        back = None
        if precondition:
            picked: list[int] = []
            for j in cols:
                if len(picked) == k:
                    break
                if linalg.rank(G[:, picked + [j]], tol) == len(picked) + 1:
                    picked.append(j)
            if len(picked) == k:
                back = linalg.invert(G[:, picked], tol)
                Gwork = back @ G
        results = []
        for i in S:
            sol = lpcore.solve_lp(_lp_for_pair(Gwork, cols, i), tol)
            if sol.status == lpcore.UNBOUNDED:
                return None  # infinite height
            u = sol.point if back is None else sol.point @ back
            results.append((i, sol.optimum, u))
        return results

    subsets = list(linalg.enumerate_subsets(n, m))
    best = 0.0
    best_u = None
    for S, res in zip(subsets, _map_subsets(eval_subset, subsets, workers)):
        if res is None:
            return INF, None
        for _, value, u in res:
            if value > best:
                best = value
                best_u = u
    return best, _certificate(code, best_u, m, best)


def height_lp_dual(
    code: RealCode,
    m: int,
    tol: float = DEFAULT_TOL,
    inner: str = "lp",
    workers: int = 1,
) -> float:
    """Code m-height as a max over (subset, index) of the least L1 norm
    of a solution to ``(G restricted outside the subset) e = g_i``.

    The inner minimization is an L1 regression against a parity check of
    the punctured code; ``inner`` picks its solver: "lp" (default),
    "median" (scalar weighted median; valid only when one fit variable
    remains, i.e. m = r - 1), or "auto" (median when applicable).  An
    inconsistent system or a rank-deficient punctured generator signals
    m >= minimum distance and yields an infinite height.
    """
    if inner not in ("lp", "median", "auto"):
        raise ValueError(f"unknown inner solver {inner!r}")
    G = code.generator
    n, k = code.n, code.k
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < {n}, got {m}")

    def eval_subset(S):
        cols = linalg.complement(S, n)
        Gs = G[:, cols]
        if linalg.rank(Gs, tol) < k:
            return None  # some target column leaves the span: infinite
        basis = linalg.null_space_basis(Gs, tol)
        use_median = inner == "median" or (inner == "auto" and basis.shape[0] == 1)
        if use_median and basis.shape[0] != 1:
            raise ValueError("median inner solver needs exactly one fit variable (m = r - 1)")
        values = []
        for i in S:
            a, *_ = np.linalg.lstsq(Gs, G[:, i], rcond=None)
            if use_median:
                _, value = lpcore.weighted_median_lad(a, basis[0])
            elif basis.shape[0] == 0:
                value = float(np.abs(a).sum())
            else:
                _, value = lpcore.lad_minimize(a, basis, tol)
            values.append(value)
        return values

    subsets = list(linalg.enumerate_subsets(n, m))
    best = 0.0
    for values in _map_subsets(eval_subset, subsets, workers):
        if values is None:
            return INF
        best = max(best, max(values))
    return best


def height_comb_primal(
    code: RealCode, m: int, tol: float = DEFAULT_TOL
) -> tuple[float, ExtremalCertificate]:
    """Code m-height as a finite maximum over information sets I and sign
    vectors u of the m-height of the codeword u (G_I)^{-1} G.

    Valid only below the minimum distance; raises DistanceExceededError
    otherwise (detected by the rank-based distance).  Enumerates
    |information sets| * 2^(k-1) candidates (the first sign is pinned to
    +1); the certificate is the first maximizer in (information set,
    sign vector) order.
    """
    G = code.generator
    n, k = code.n, code.k
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < {n}, got {m}")
    d = min_distance_by_rank(code, tol)
    if m >= d:
        raise DistanceExceededError(f"m={m} is not below the minimum distance {d}")
    signs = sign_vectors(k)
    best = 0.0
    best_u = None
    for I in linalg.upsilon(G, tol):
        inv = linalg.invert(G[:, I], tol)
        cands = signs @ (inv @ G)  # candidate codewords, one per row
        mags = np.sort(np.abs(cands), axis=1)[:, ::-1]
        values = mags[:, 0] / mags[:, m]  # m < d keeps the denominator nonzero
        t = int(np.argmax(values))
        if values[t] > best:
            best = float(values[t])
            best_u = signs[t] @ inv
    return best, _certificate(code, best_u, m, best)


def height_comb_primal_pc(code: RealCode, m: int, tol: float = DEFAULT_TOL) -> float:
    """Parity-check form of the finite primal maximum.

    For each information set J of the dual and sign vector u, the vector
    (H_J)^{-1} H_outside u holds the non-unit entries of a candidate
    codeword whose entries on the complement of J are +-1; candidates
    are kept only if at most m entries exceed magnitude 1 and at most
    n - m - 1 fall below it, and the height is the largest surviving
    max-magnitude (never below 1).  Inverts r x r rather than k x k
    matrices, which is preferable when k > r.
    """
    H = code.parity_check
    n, k, r = code.n, code.k, code.r
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < {n}, got {m}")
    d = min_distance_by_rank(code, tol)
    if m >= d:
        raise DistanceExceededError(f"m={m} is not below the minimum distance {d}")
    signs = sign_vectors(k)
    band = max(EQ_REL, EQ_ABS)
    best = 0.0
    any_admissible = False
    for J in linalg.upsilon(H, tol):
        inv = linalg.invert(H[:, J], tol)
        W = inv @ H[:, linalg.complement(J, n)]  # r x k
        V = np.abs(W @ signs.T)  # r x 2^(k-1), candidate magnitudes
        over = (V > 1.0 + band).sum(axis=0)
        under = (V < 1.0 - band).sum(axis=0)
        ok = (over <= m) & (under <= n - m - 1)
        if ok.any():
            any_admissible = True
            best = max(best, float(V[:, ok].max()))
    if not any_admissible:
        raise ArithmeticError("no admissible sign pattern found; numerical failure")
    return max(best, 1.0)


def comb_dual_maximizer(
    code: RealCode, m: int, tol: float = DEFAULT_TOL, form: str = "auto"
) -> CombDualResult:
    """Max-min witness for the dual combinatorial characterization.

    For every m-subset S and index i in S, takes the minimum over
    information sets I disjoint from S of the L1 norm of (G_I)^{-1} g_i,
    then maximizes.  ``form`` chooses the linear algebra: "generator"
    inverts k x k blocks, "parity" the equivalent r x r row form, and
    "auto" picks the smaller.  An empty inner set (only possible at
    m >= minimum distance) makes the value infinite.
    """
    if form not in ("auto", "generator", "parity"):
        raise ValueError(f"unknown form {form!r}")
    n, k, r = code.n, code.k, code.r
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < {n}, got {m}")
    if form == "auto":
        form = "parity" if r < k else "generator"

    if form == "generator":
        sets = linalg.upsilon(code.generator, tol)
        norms = np.empty((len(sets), n))
        for t, I in enumerate(sets):
            inv = linalg.invert(code.generator[:, I], tol)
            norms[t] = np.abs(inv @ code.generator).sum(axis=0)
        inner_sets = sets
    else:
        setsJ = linalg.upsilon(code.parity_check, tol)
        norms = np.full((len(setsJ), n), INF)
        for t, J in enumerate(setsJ):
            inv = linalg.invert(code.parity_check[:, J], tol)
            R = np.abs(inv @ code.parity_check[:, linalg.complement(J, n)]).sum(axis=1)
            norms[t, list(J)] = R  # row of the inverse indexed by its column in J
        sets = setsJ
        inner_sets = [linalg.complement(J, n) for J in setsJ]

    masks = np.array([sum(1 << j for j in S) for S in sets], dtype=np.int64)
    candidates = 0
    best = 0.0
    best_S = best_i = best_I = None
    for S in linalg.enumerate_subsets(n, m):
        smask = sum(1 << j for j in S)
        if form == "generator":
            rows = np.nonzero(masks & smask == 0)[0]
        else:
            rows = np.nonzero(smask & ~masks == 0)[0]
        candidates += rows.size * m
        if rows.size == 0:
            return CombDualResult(INF, S, int(S[0]), None, candidates)
        sub = norms[np.ix_(rows, list(S))]
        argmins = np.argmin(sub, axis=0)
        mins = sub[argmins, np.arange(m)]
        t = int(np.argmax(mins))
        if mins[t] > best:
            best = float(mins[t])
            best_S = S
            best_i = int(S[t])
            best_I = inner_sets[rows[argmins[t]]]
    return CombDualResult(best, best_S, best_i, best_I, candidates)


def height_comb_dual(
    code: RealCode, m: int, tol: float = DEFAULT_TOL, form: str = "auto"
) -> float:
    """Code m-height by the dual max-min enumeration; infinite when some
    m-subset admits no disjoint information set (m >= minimum distance)."""
    return comb_dual_maximizer(code, m, tol, form).value


def r_height(code: RealCode, tol: float = DEFAULT_TOL) -> float:
    """Height at m = r for an MDS code, by two cross-checked enumerations.

    Route one maximizes the L1 norm of (G outside S)^{-1} g_i over all
    r-subsets S and i in S.  Route two enumerates all (k+1)-subsets X,
    solves for the one-dimensional dual-codeword direction supported on
    X, normalizes each entry in turn to 1 and takes the largest L1 norm,
    minus 1.  The two must agree to roundoff.
    """
    if not is_mds(code, tol):
        raise NotMdsError("height at m = r is finite only for MDS codes")
    G, H = code.generator, code.parity_check
    n, k, r = code.n, code.k, code.r
    if r == 0:
        raise NotMdsError("the full space has no redundancy")

    by_subsets = 0.0
    for S in linalg.enumerate_subsets(n, r):
        cols = linalg.complement(S, n)
        inv = linalg.invert(G[:, cols], tol)
        by_subsets = max(by_subsets, float(np.abs(inv @ G[:, S]).sum(axis=0).max()))

    by_dual_words = 0.0
    for X in linalg.enumerate_subsets(n, k + 1):
        outside = linalg.complement(X, n)
        direction = linalg.null_space_basis(H[:, outside].T, tol)  # 1 x r
        word = (direction @ H).ravel()
        support = np.abs(word[list(X)])
        by_dual_words = max(by_dual_words, float(np.abs(word).sum() / support.min()))
    by_dual_words -= 1.0

    scale = max(1.0, by_subsets)
    if abs(by_subsets - by_dual_words) > 1e-7 * scale:
        raise ArithmeticError(
            f"r-height routes disagree: {by_subsets!r} vs {by_dual_words!r}"
        )
    return by_subsets


def mds_extremal_codeword(
    code: RealCode, m: int, S, i: int, I, tol: float = DEFAULT_TOL
) -> np.ndarray:
    """Extremal codeword of an MDS code from a max-min witness (S, i, I):
    the unique codeword matching the sign pattern of (G_I)^{-1} g_i on
    the information set I.  Its m-height equals the code's."""
    if not is_mds(code, tol):
        raise NotMdsError("extremal construction requires an MDS code")
    G = code.generator
    I = tuple(int(j) for j in I)
    inv = linalg.invert(G[:, I], tol)
    e = inv @ G[:, int(i)]
    if np.abs(e).min() <= tol * max(1.0, np.abs(e).max()):
        raise ArithmeticError("witness solution has a zero entry; not an MDS witness")
    return np.sign(e) @ (inv @ G)


_METHODS = ("lp", "lp-dual", "comb", "comb-pc", "comb-dual", "auto")


def height_once(
    code: RealCode, m: int, method: str, tol: float, workers: int
) -> tuple[float, ExtremalCertificate | None]:
    """One (height, certificate) evaluation; combinatorial primal methods
    defer to the LP route at and beyond the minimum distance, where only
    it certifies the infinite value."""
    if method == "auto":
        if code.r <= code.k and m <= code.r:
            method = "comb-dual"
        elif code.k > code.r:
            method = "comb-pc"
        else:
            method = "lp"
    if method == "lp":
        return height_lp_primal(code, m, tol, workers=workers)
    if method == "lp-dual":
        return height_lp_dual(code, m, tol, workers=workers), None
    if method == "comb":
        try:
            return height_comb_primal(code, m, tol)
        except DistanceExceededError:
            return height_lp_primal(code, m, tol, workers=workers)
    if method == "comb-pc":
        try:
            return height_comb_primal_pc(code, m, tol), None
        except DistanceExceededError:
            return height_lp_primal(code, m, tol, workers=workers)[0], None
    if method == "comb-dual":
        return height_comb_dual(code, m, tol), None
    raise ValueError(f"unknown method {method!r}; expected one of {_METHODS}")


def full_profile(
    code: RealCode,
    method: str = "auto",
    tol: float = DEFAULT_TOL,
    workers: int = 1,
) -> HeightProfile:
    """Heights for every m in [0, n) plus the derived minimum distance.

    The 0-height is 1 for any nonzero code.  Heights are computed in
    ascending m by the chosen method; once an infinite value appears the
    remaining entries are filled as infinite (heights are non-decreasing
    in m), and the minimum distance is that first m (n if none).
    """
    if method not in _METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {_METHODS}")
    n = code.n
    heights: list[float] = [1.0] + [0.0] * (n - 1)
    certs: list[ExtremalCertificate | None] = [None] * n
    first_infinite: int | None = None
    for m in range(1, n):
        if first_infinite is not None:
            heights[m] = INF
            continue
        value, cert = height_once(code, m, method, tol, workers)
        heights[m] = value
        certs[m] = cert
        if value == INF:
            first_infinite = m
    return HeightProfile(
        heights=tuple(heights),
        certificates=tuple(certs),
        method=method,
        min_distance=first_infinite if first_infinite is not None else n,
    )
