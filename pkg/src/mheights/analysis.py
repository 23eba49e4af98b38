"""Geometric and application-level verifiers.

For codes with a spherical generator (all columns on the unit sphere),
an attained-height witness must sit equidistant from several of the
2n signed generator columns; ``equidistance_witness`` locates such a
point set.  Closed forms cover the circular (negacyclic) family and its
dual, and ``vmm_min_ratio`` turns a height into the smallest admissible
outlier threshold for error handling in analog vector-matrix multiplies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .codes import RealCode, dual, is_spherical
from .heights import (
    INF,
    ExtremalCertificate,
    full_profile,
    min_distance_by_rank,
    p_m_set,
)

EQUIDISTANCE_TOL = 1e-7  # heights and witnesses are only LP-accurate


class BadArgsError(ValueError):
    """Closed-form arguments outside the family's range."""


class NoWitnessError(ValueError):
    """No equidistant independent point set exists; flags a violated
    necessary condition on an attained-height certificate."""


class UncorrectableRegimeError(ValueError):
    """Requested error counts exceed what the code can ever handle."""


@dataclass(frozen=True)
class ToleranceQuery:
    """Error-handling request: locate ``tau`` outliers, detect ``sigma``
    further ones, with tolerable error magnitude ``delta``."""

    tau: int
    sigma: int
    delta: float

    def __post_init__(self):
        if self.tau < 0 or self.sigma < 0:
            raise BadArgsError("tau and sigma must be nonnegative")
        if not self.delta > 0:
            raise BadArgsError("delta must be positive")


def point_multiset(generator) -> np.ndarray:
    """The 2n signed generator columns as points: rows 0..n-1 hold the
    columns g_j, rows n..2n-1 hold their negatives."""
    G = linalg.as_matrix(generator)
    pts = np.vstack([G.T, -G.T])
    return pts


def equidistance_witness(
    code: RealCode, cert: ExtremalCertificate, tol: float = EQUIDISTANCE_TOL
) -> tuple[int, ...]:
    """Indices of signed generator columns equidistant from the witness
    direction.

    The certificate codeword's entries are the dot products of its
    coefficient vector with the generator columns; the entries tying the
    (m+1)-st magnitude give, after sign-matching, points at a common dot
    product.  Returns the indices (into ``point_multiset``) of a linearly
    independent such family of size at least d_perp - 1, where d_perp is
    the dual minimum distance.

    Raises:
        NoWitnessError: fewer independent equidistant points exist,
            which would contradict a necessary condition on attained
            heights and indicates a solver bug.
    """
    G = code.generator
    if not is_spherical(G):
        raise ValueError("code generator columns must be unit vectors")
    c = np.asarray(cert.codeword, dtype=float)
    mags = np.abs(c)
    ref = np.sort(mags)[::-1][cert.m]
    selected = [int(j) for j in np.nonzero(np.abs(mags - ref) <= tol)[0]]
    points = point_multiset(G)
    indices = [j if c[j] > 0 else code.n + j for j in selected]
    chosen: list[int] = []
    for idx in indices:
        trial = chosen + [idx]
        if linalg.rank(points[trial]) == len(trial):
            chosen.append(idx)
    needed = min_distance_by_rank(dual(code)) - 1
    if len(chosen) < needed:
        raise NoWitnessError(
            f"only {len(chosen)} independent equidistant points, needed {needed}"
        )
    return tuple(chosen)


def closed_form_negacyclic(n: int, m: int) -> float:
    """Exact heights of the circular [n, n-2] family at m = 1 and m = 2.

    With alpha = pi/n: the 2-height is 1 / (2 sin^2(alpha/2)) - 1; the
    1-height is 1 / sin(alpha/2) - 1 for odd n and cot(alpha/2) - 1 for
    even n.
    """
    if n <= 2:
        raise BadArgsError(f"family needs n > 2, got {n}")
    if m not in (1, 2):
        raise BadArgsError(f"closed form covers m in {{1, 2}}, got {m}")
    half = math.pi / (2 * n)
    if m == 2:
        return 1.0 / (2.0 * math.sin(half) ** 2) - 1.0
    if n % 2 == 1:
        return 1.0 / math.sin(half) - 1.0
    return 1.0 / math.tan(half) - 1.0


def closed_form_negacyclic_dual(n: int, m: int) -> float:
    """Exact heights of the dual circular [n, 2] family.

    With beta = pi/(2n): 1 / cos((m+1) beta) for odd m and
    cos(beta) / cos((m+1) beta) for even m, valid for 1 <= m <= n - 2.
    """
    if n <= 2:
        raise BadArgsError(f"family needs n > 2, got {n}")
    if not 1 <= m <= n - 2:
        raise BadArgsError(f"need 1 <= m <= n - 2 = {n - 2}, got {m}")
    beta = math.pi / (2 * n)
    if m % 2 == 1:
        return 1.0 / math.cos((m + 1) * beta)
    return math.cos(beta) / math.cos((m + 1) * beta)


def vmm_min_ratio(code: RealCode, query: ToleranceQuery, method: str = "auto") -> float:
    """Smallest admissible outlier threshold for a vector-matrix-multiply
    channel: locating tau outliers and detecting sigma more with
    tolerable magnitude delta requires the threshold to be at least
    2 * delta * (h_{2 tau + sigma} + 1).

    Raises:
        UncorrectableRegimeError: 2 tau + sigma reaches the minimum
            distance, where the required height is infinite.
    """
    level = 2 * query.tau + query.sigma
    profile = full_profile(code, method=method)
    if level >= profile.min_distance or level >= code.n:
        raise UncorrectableRegimeError(
            f"2*tau + sigma = {level} is not below the minimum distance "
            f"{profile.min_distance}"
        )
    h = profile.heights[level]
    if h == INF:  # pragma: no cover - guarded by the distance check
        raise UncorrectableRegimeError("required height is infinite")
    return 2.0 * query.delta * (h + 1.0)
