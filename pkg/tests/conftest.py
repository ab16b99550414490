import numpy as np
import pytest

from entdecay.linalg import PAULI

SIGMA_YY = np.kron(PAULI.sigma_y, PAULI.sigma_y)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_factor(rng, rank=4):
    """Random 4 x rank factor G normalized so that G G^H has unit trace."""
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    return g / np.linalg.norm(g)


def tau_concurrence(g):
    """Concurrence from singular values of G^T (sy sy) G, where rho = G G^H.

    Independent of the eigen/sqrt route: no matrix square roots, numpy SVD.
    """
    lam = np.linalg.svd(g.T @ SIGMA_YY @ g, compute_uv=False)
    lam = np.concatenate([lam, np.zeros(4 - lam.size)])
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def random_unit_ket(rng, dim=2):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {title}  ({detail})")
