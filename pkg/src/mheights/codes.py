"""Linear codes over the real field.

The code model stores a generator and/or parity-check matrix (the
missing one is materialized from a null-space basis at construction),
plus duality, puncturing, the worked code families, spherical /
unit-norm-tight-frame predicates, and a JSON file format.

Codes are immutable after construction and freely shareable across
threads; all functions here are pure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import linalg

DEFAULT_TOL = 1e-9

GOLDEN_RATIO = (1.0 + math.sqrt(5.0)) / 2.0


class InvalidCodeError(ValueError):
    """Code invariants are violated (shapes, ranks, orthogonality, k >= 1)."""


class BadLengthError(ValueError):
    """Constructor length parameter outside the family's range."""


class BadBinaryCodeError(ValueError):
    """Binary seed code fails the construction's preconditions."""


class NotOrthoSphericalError(ValueError):
    """Matrix is not an ortho-spherical (unit-norm tight frame) matrix."""


@dataclass(frozen=True, eq=False)
class RealCode:
    """A linear [n, k] code over the reals.

    At least one of ``generator`` (k x n) / ``parity_check`` ((n-k) x n)
    must be supplied; the other is derived from a null-space basis.  Both
    matrices are validated for rank and mutual orthogonality and frozen
    read-only.
    """

    n: int
    k: int
    generator: np.ndarray | None = None
    parity_check: np.ndarray | None = None
    name: str = ""

    def __post_init__(self):
        n, k = self.n, self.k
        if not (isinstance(n, int) and isinstance(k, int)):
            raise InvalidCodeError("n and k must be integers")
        if n < 1 or k < 1 or k > n:
            raise InvalidCodeError(f"need 1 <= k <= n, got n={n}, k={k}")
        r = n - k
        G = self.generator
        H = self.parity_check
        if G is None and H is None:
            raise InvalidCodeError("need a generator or a parity-check matrix")
        if G is not None:
            G = linalg.as_matrix(G)
            if G.shape != (k, n):
                raise InvalidCodeError(f"generator shape {G.shape} != ({k}, {n})")
            if linalg.rank(G) != k:
                raise InvalidCodeError("generator rows are linearly dependent")
        if H is not None:
            H = linalg.as_matrix(H)
            if H.shape != (r, n):
                raise InvalidCodeError(f"parity-check shape {H.shape} != ({r}, {n})")
            if r > 0 and linalg.rank(H) != r:
                raise InvalidCodeError("parity-check rows are linearly dependent")
        if G is not None and H is not None and r > 0:
            scale = max(1.0, float(np.abs(G).max() * np.abs(H).max()) * n)
            if np.abs(G @ H.T).max() > DEFAULT_TOL * scale:
                raise InvalidCodeError("generator and parity-check are not orthogonal")
        if G is None:
            G = linalg.null_space_basis(H)
        if H is None:
            H = linalg.null_space_basis(G) if r > 0 else np.zeros((0, n))
        G = np.ascontiguousarray(G)
        H = np.ascontiguousarray(H)
        G.setflags(write=False)
        H.setflags(write=False)
        object.__setattr__(self, "generator", G)
        object.__setattr__(self, "parity_check", H)

    @property
    def r(self) -> int:
        """Redundancy n - k."""
        return self.n - self.k


def dual(code: RealCode) -> RealCode:
    """The [n, n-k] dual code; generator and parity-check swap roles."""
    if code.k == code.n:
        raise InvalidCodeError("the dual of the full space is the trivial code")
    return RealCode(
        code.n,
        code.r,
        generator=code.parity_check,
        parity_check=code.generator,
        name=f"{code.name}-dual" if code.name else "dual",
    )


def puncture(code: RealCode, keep) -> RealCode:
    """Restrict the code to the coordinates in ``keep`` (sorted, nonempty).

    If the restricted generator loses rank, its rows are reduced to a
    basis by greedy selection in row order.
    """
    keep = tuple(sorted(set(int(j) for j in keep)))
    if not keep:
        raise ValueError("keep must be a nonempty set of coordinates")
    if keep[0] < 0 or keep[-1] >= code.n:
        raise ValueError(f"coordinates out of range [0, {code.n})")
    Gp = code.generator[:, keep]
    rho = linalg.rank(Gp)
    rows: list[int] = []
    for i in range(code.k):
        if len(rows) == rho:
            break
        if linalg.rank(Gp[rows + [i]]) == len(rows) + 1:
            rows.append(i)
    return RealCode(
        len(keep),
        rho,
        generator=Gp[rows],
        name=f"{code.name}-punctured" if code.name else "punctured",
    )


def make_negacyclic(n: int) -> RealCode:
    """The [n, n-2] negacyclic MDS code.

    Its 2 x n parity-check column j is (cos(j*pi/n), sin(j*pi/n)); all
    columns are unit vectors on the circle.
    """
    if n <= 2:
        raise BadLengthError(f"negacyclic family needs n > 2, got {n}")
    alpha = math.pi / n
    j = np.arange(n)
    H = np.vstack([np.cos(j * alpha), np.sin(j * alpha)])
    return RealCode(n, n - 2, parity_check=H, name=f"neg:{n}")


def make_icosahedral() -> RealCode:
    """The [6, 3] MDS code whose parity-check columns are six icosahedron
    vertices (one per antipodal pair), scaled to the unit sphere."""
    phi = GOLDEN_RATIO
    H = np.array(
        [
            [0.0, phi, 1.0, 0.0, 1.0, -phi],
            [1.0, 0.0, phi, 1.0, -phi, 0.0],
            [phi, 1.0, 0.0, -phi, 0.0, 1.0],
        ]
    ) / math.sqrt(phi + 2.0)
    return RealCode(6, 3, parity_check=H, name="ico")


def make_dodecahedral() -> RealCode:
    """The [10, 7] MDS code whose parity-check columns are ten dodecahedron
    vertices (one per antipodal pair), scaled to the unit sphere."""
    phi = GOLDEN_RATIO
    psi = (1.0 - math.sqrt(5.0)) / 2.0  # equals -1/phi
    H = np.array(
        [
            [1.0, 1.0, 1.0, 1.0, 0.0, psi, phi, 0.0, -psi, phi],
            [1.0, 1.0, -1.0, -1.0, psi, phi, 0.0, -psi, phi, 0.0],
            [1.0, -1.0, 1.0, -1.0, phi, 0.0, psi, phi, 0.0, -psi],
        ]
    ) / math.sqrt(3.0)
    return RealCode(10, 7, parity_check=H, name="dod")


def make_axis_replicated(n: int) -> RealCode:
    """The [n, n-2] code whose parity check repeats the two standard axes:
    floor(n/2) columns (1, 0) followed by ceil(n/2) columns (0, 1)."""
    if n <= 2:
        raise BadLengthError(f"axis-replicated family needs n > 2 for k >= 1, got {n}")
    half = n // 2
    H = np.zeros((2, n))
    H[0, :half] = 1.0
    H[1, half:] = 1.0
    return RealCode(n, n - 2, parity_check=H, name=f"axis:{n}")


def _gf2_rref(M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    R = (np.asarray(M, dtype=np.int64) % 2).astype(np.uint8)
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hit = np.nonzero(R[r:, c])[0]
        if hit.size == 0:
            continue
        p = r + int(hit[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        for i in range(rows):
            if i != r and R[i, c]:
                R[i] ^= R[r]
        pivots.append(c)
        r += 1
    return R, pivots


def _gf2_in_rowspace(M: np.ndarray, v: np.ndarray) -> bool:
    _, piv = _gf2_rref(M)
    _, piv_aug = _gf2_rref(np.vstack([M, v]))
    return len(piv) == len(piv_aug)


def _gf2_null_space(M: np.ndarray) -> np.ndarray:
    R, pivots = _gf2_rref(M)
    cols = R.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for row, p in enumerate(pivots):
            basis[t, p] = R[row, f]
    return basis


def binary_induced_parity_check(B_generator) -> np.ndarray:
    """Sign-pattern parity-check matrix induced by a binary code B.

    B is given by a full-rank kappa x r binary generator matrix; it must
    contain the all-ones word and its dual code must have minimum
    distance greater than 2 (checked by exhaustive enumeration of the
    dual).  Column per codeword x of B starting with a 0, with entries
    ((-1)^x_j) / sqrt(r); there are 2^(kappa-1) such columns.
    """
    B = np.asarray(B_generator)
    if B.ndim != 2 or not np.isin(B, (0, 1)).all():
        raise BadBinaryCodeError("binary generator must be a 2-D 0/1 matrix")
    B = B.astype(np.uint8)
    kappa, r = B.shape
    if kappa > 12:
        raise BadBinaryCodeError(f"kappa={kappa} exceeds the supported cap of 12")
    _, pivots = _gf2_rref(B)
    if len(pivots) != kappa:
        raise BadBinaryCodeError("binary generator rows are dependent over GF(2)")
    if not _gf2_in_rowspace(B, np.ones(r, dtype=np.uint8)):
        raise BadBinaryCodeError("binary code must contain the all-ones word")
    dual_basis = _gf2_null_space(B)
    best = r + 1
    for coeffs in product((0, 1), repeat=dual_basis.shape[0]):
        if not any(coeffs):
            continue
        word = np.zeros(r, dtype=np.uint8)
        for c, row in zip(coeffs, dual_basis):
            if c:
                word ^= row
        best = min(best, int(word.sum()))
    if best <= 2:
        raise BadBinaryCodeError(f"dual of the binary code has minimum distance {best} <= 2")
    words = sorted(
        tuple(int(x) for x in (msg @ B) % 2)
        for msg in product((0, 1), repeat=kappa)
    )
    starting_zero = [w for w in words if w[0] == 0]
    cols = np.array(starting_zero, dtype=float).T  # r x 2^(kappa-1)
    return ((-1.0) ** cols) / math.sqrt(r)


def make_binary_induced(B_generator) -> RealCode:
    """The [2^(kappa-1), 2^(kappa-1) - r] real code with the sign-pattern
    parity check of ``binary_induced_parity_check``; rejects seeds whose
    induced code would have dimension below 1."""
    H = binary_induced_parity_check(B_generator)
    r, n = H.shape
    if n - r < 1:
        raise BadBinaryCodeError(f"induced code would be [{n}, {n - r}]; needs dimension >= 1")
    code = RealCode(n, n - r, parity_check=H, name=f"bin:[{r},{int(math.log2(n)) + 1}]")
    if not is_ortho_spherical(code.parity_check):
        raise BadBinaryCodeError("induced parity check failed the tight-frame check")
    return code


def make_random(n: int, k: int, seed: int = 0) -> RealCode:
    """A random [n, k] code with a standard-normal generator matrix."""
    rng = np.random.default_rng(seed)
    for _ in range(64):
        G = rng.standard_normal((k, n))
        if linalg.rank(G) == k:
            return RealCode(n, k, generator=G, name=f"random:{n},{k}#{seed}")
    raise InvalidCodeError("failed to sample a full-rank generator")  # pragma: no cover


def is_spherical(M, tol: float = DEFAULT_TOL) -> bool:
    """True when every column of M is a unit vector (to within tol)."""
    A = linalg.as_matrix(M)
    norms_sq = (A * A).sum(axis=0)
    return bool(np.all(np.abs(norms_sq - 1.0) <= tol))


def is_ortho_spherical(M, tol: float = DEFAULT_TOL) -> bool:
    """True when M is spherical and M @ M.T == (n/r) * I (to within tol).

    Such an r x n matrix is a unit-norm tight frame: its rows are
    orthogonal with common squared norm n/r.
    """
    A = linalg.as_matrix(M)
    r, n = A.shape
    if not is_spherical(A, tol):
        return False
    gram = A @ A.T - (n / r) * np.eye(r)
    return bool(np.abs(gram).max() <= tol * max(1.0, n / r))


def ospc_dual_generator(H, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Ortho-spherical generator of the dual of an ortho-spherical code.

    Extends the orthonormal rows of sqrt(r/n) * H to an orthonormal
    basis of R^n and scales the k = n - r new vectors by sqrt(n/k).  The
    result G satisfies G @ G.T = (n/k) I, diag(G.T @ G) = 1, G @ H.T = 0.
    """
    A = linalg.as_matrix(H)
    if not is_ortho_spherical(A, tol):
        raise NotOrthoSphericalError("input is not an ortho-spherical matrix")
    r, n = A.shape
    k = n - r
    if k == 0:
        raise ValueError("square ortho-spherical matrix has no dual code")
    basis = linalg.null_space_basis(A, tol)  # orthonormal rows
    return math.sqrt(n / k) * basis


def code_to_dict(code: RealCode) -> dict:
    """JSON-serializable representation of a code."""
    return {
        "name": code.name,
        "n": code.n,
        "k": code.k,
        "generator": code.generator.tolist(),
        "parity_check": code.parity_check.tolist() if code.r > 0 else None,
    }


def code_from_dict(data: dict) -> RealCode:
    """Build a code from the JSON dict form, enforcing all invariants."""
    if not isinstance(data, dict):
        raise InvalidCodeError("code file must hold a JSON object")
    try:
        n = data["n"]
        k = data["k"]
    except KeyError as exc:
        raise InvalidCodeError(f"missing required field {exc}") from None
    name = data.get("name") or ""
    if not isinstance(name, str):
        raise InvalidCodeError("name must be a string")
    G = data.get("generator")
    H = data.get("parity_check")
    try:
        G = None if G is None else linalg.as_matrix(G)
        H = None if H is None else linalg.as_matrix(H)
    except (ValueError, TypeError) as exc:
        raise InvalidCodeError(f"bad matrix entry: {exc}") from None
    return RealCode(n, k, generator=G, parity_check=H, name=name)


def load_code(path) -> RealCode:
    """Load a code from a JSON file, rejecting invariant violations."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidCodeError(f"not valid JSON: {exc}") from None
    return code_from_dict(data)


def save_code(code: RealCode, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(code_to_dict(code), fh, indent=2, sort_keys=True)
        fh.write("\n")
