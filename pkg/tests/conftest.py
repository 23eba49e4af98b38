import numpy as np
import pytest

from mheights import codes


@pytest.fixture(scope="session")
def ico():
    return codes.make_icosahedral()


@pytest.fixture(scope="session")
def dod():
    return codes.make_dodecahedral()


@pytest.fixture(scope="session")
def ico_dual(ico):
    return codes.dual(ico)


@pytest.fixture(scope="session")
def dod_dual(dod):
    return codes.dual(dod)


def l1_fit_breakpoint_oracle(a, b):
    """Independent oracle for the scalar L1 fit: scan every ratio a_j/b_j
    as a candidate minimizer and evaluate the objective directly."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    support = np.nonzero(b != 0.0)[0]
    assert support.size > 0
    best = None
    for j in support:
        v = a[j] / b[j]
        val = np.abs(a - v * b).sum()
        if best is None or val < best:
            best = val
    return float(best)
