"""Small dense complex linear algebra for 2x2 and 4x4 matrices.

Matrices are plain ``numpy`` complex128 arrays. The Kronecker convention is
``(A kron B)[2i+k, 2j+l] = A[i, j] * B[k, l]`` so subsystem A is always the
left tensor factor.
"""

import math
from typing import NamedTuple

import numpy as np

from .errors import DimensionError, ValidationError

SUPPORTED_DIMS = (2, 4)

HERMITIAN_TOL = 1e-10
NEGATIVE_EIGEN_TOL = 1e-10
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100

# Eigenvalues within this many ulps of the input scale are indistinguishable
# from zero; square roots of them would inject ~1e-8 noise.
ROUNDOFF_ULPS = 64


def _frozen(a):
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


class PauliSet(NamedTuple):
    identity: np.ndarray
    sigma_x: np.ndarray
    sigma_y: np.ndarray
    sigma_z: np.ndarray


PAULI = PauliSet(
    identity=_frozen([[1, 0], [0, 1]]),
    sigma_x=_frozen([[0, 1], [1, 0]]),
    sigma_y=_frozen([[0, -1j], [1j, 0]]),
    sigma_z=_frozen([[1, 0], [0, -1]]),
)


def as_matrix(a, dims=SUPPORTED_DIMS) -> np.ndarray:
    """Coerce ``a`` to a complex square matrix of a supported size."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in dims:
        raise DimensionError(f"expected a square matrix of size {dims}, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix has non-finite entries")
    return m


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b


def kron(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 matrices, A as the left factor."""
    a, b = as_matrix(a, dims=(2,)), as_matrix(b, dims=(2,))
    out = np.empty((4, 4), dtype=np.complex128)
    for i in range(2):
        for j in range(2):
            out[2 * i:2 * i + 2, 2 * j:2 * j + 2] = a[i, j] * b
    return out


def hermiticity_error(m) -> float:
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T)))


_UPPER = {n: [(i, j) for i in range(n) for j in range(i + 1, n)] for n in SUPPORTED_DIMS}


def _off_norm(a):
    total = 0.0
    for i, j in _UPPER[len(a)]:
        z = a[i][j]
        total += z.real * z.real + z.imag * z.imag
    return math.sqrt(2.0 * total)


def hermitian_eigen(m, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns ``(values, vectors)``: real eigenvalues sorted in descending order
    and the matching orthonormal eigenvectors as the columns of ``vectors``.
    Raises ``ValidationError`` if ``m`` deviates from Hermitian by more than
    ``HERMITIAN_TOL`` (max absolute entry of ``m - m^H``).
    """
    m = as_matrix(m)
    if hermiticity_error(m) > HERMITIAN_TOL:
        raise ValidationError(
            f"matrix is not Hermitian (max |m - m^H| = {hermiticity_error(m):.3e})"
        )
    # Plain Python lists: for 4x4 the per-call overhead of numpy dominates.
    a = (0.5 * (m + m.conj().T)).tolist()
    n = len(a)
    v = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]
    threshold = tol * max(1.0, float(np.linalg.norm(m)))

    for _ in range(max_sweeps):
        if _off_norm(a) <= threshold:
            break
        for p, q in _UPPER[n]:
            z = a[p][q]
            mag = abs(z)
            if mag == 0.0:
                continue
            # Phase-rotate q so that a[p][q] is real, then a real Givens
            # rotation annihilates it. The rotation U acts on columns p, q:
            # U = [[c, s], [-s*w, c*w]] with w = conj(z)/|z|.
            w = z.conjugate() / mag
            theta = 0.5 * math.atan2(2.0 * mag, (a[q][q] - a[p][p]).real)
            c, s = math.cos(theta), math.sin(theta)
            sw, cw = s * w, c * w
            for row in a:
                xp, xq = row[p], row[q]
                row[p] = c * xp - sw * xq
                row[q] = s * xp + cw * xq
            rp, rq = a[p], a[q]
            swc, cwc = sw.conjugate(), cw.conjugate()
            for j in range(n):
                xp, xq = rp[j], rq[j]
                rp[j] = c * xp - swc * xq
                rq[j] = s * xp + cwc * xq
            rp[q] = rq[p] = 0j
            rp[p] = complex(rp[p].real, 0.0)
            rq[q] = complex(rq[q].real, 0.0)
            for row in v:
                xp, xq = row[p], row[q]
                row[p] = c * xp - sw * xq
                row[q] = s * xp + cw * xq
    else:
        if _off_norm(a) > threshold:
            raise ValidationError("Jacobi iteration did not converge")

    values = np.array([a[i][i].real for i in range(n)])
    order = np.argsort(-values, kind="stable")
    return values[order], np.array(v, dtype=np.complex128)[:, order]


def roundoff_floor(scale: float) -> float:
    return ROUNDOFF_ULPS * np.finfo(float).eps * scale


def clamp_eigenvalues(values, scale: float, neg_tol: float = NEGATIVE_EIGEN_TOL) -> np.ndarray:
    """Zero out eigenvalues that are roundoff noise around zero.

    Values in ``[-neg_tol, roundoff_floor(scale)]`` become exactly 0; anything
    more negative than ``-neg_tol`` raises ``ValidationError``.
    """
    values = np.asarray(values, dtype=float)
    if values.size and values.min() < -neg_tol:
        raise ValidationError(f"matrix is not positive semidefinite (eigenvalue {values.min():.3e})")
    out = values.copy()
    out[out <= roundoff_floor(scale)] = 0.0
    return out


def matrix_sqrt_psd(m) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix."""
    m = as_matrix(m)
    values, vectors = hermitian_eigen(m)
    values = clamp_eigenvalues(values, scale=float(np.linalg.norm(m)))
    s = (vectors * np.sqrt(values)) @ vectors.conj().T
    return 0.5 * (s + s.conj().T)
