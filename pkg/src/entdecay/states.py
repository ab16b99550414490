"""Two-qubit states and the single-sided Pauli noise channel.

The noise acts on subsystem B only:

    rho -> p * rho + (1 - p) * (I kron n.sigma) rho (I kron n.sigma)

Repeated application from the maximally entangled state stays inside the
two-dimensional family ``P * rho_plus + (1 - P) * N(rho_plus)``, so the
n-fold iterate is fixed by a single weight ``P_n`` (see ``p_closed_form``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import StructureError, ValidationError
from .linalg import (
    HERMITIAN_TOL,
    NEGATIVE_EIGEN_TOL,
    PAULI,
    as_matrix,
    hermitian_eigen,
    hermiticity_error,
    kron,
)

TRACE_TOL = 1e-10
BELL_OFFDIAG_TOL = 1e-9
BELL_WEIGHT_TOL = 1e-9
ALIGNED_TOL = 1e-9

BELL_LABELS = ("phi+", "phi-", "psi+", "psi-")

# Columns: Phi+, Phi-, Psi+, Psi- in the |00>,|01>,|10>,|11> basis, scaled
# by sqrt(2) so B^H rho B = (H^T rho H) / 2 is evaluated without 1/sqrt(2)
# rounding (weights of exact Bell states come out exactly 1).
_BELL_SIGNS = np.array(
    [
        [1, 1, 0, 0],
        [0, 0, 1, 1],
        [0, 0, 1, -1],
        [1, -1, 0, 0],
    ],
    dtype=np.complex128,
)
_BELL_SIGNS.setflags(write=False)
BELL_BASIS = _BELL_SIGNS / math.sqrt(2.0)
BELL_BASIS.setflags(write=False)


class DensityMatrix:
    """Immutable 4x4 two-qubit density matrix.

    Construction checks Hermiticity, unit trace and positivity (all at 1e-10).
    """

    __slots__ = ("_mat",)

    def __init__(self, mat):
        m = as_matrix(mat, dims=(4,))
        validate_density(m)
        self._mat = _readonly(0.5 * (m + m.conj().T))

    @classmethod
    def _trusted(cls, mat) -> "DensityMatrix":
        # For outputs of maps already known to preserve the invariants.
        obj = cls.__new__(cls)
        m = np.asarray(mat, dtype=np.complex128)
        obj._mat = _readonly(0.5 * (m + m.conj().T))
        return obj

    @property
    def mat(self) -> np.ndarray:
        return self._mat

    def __array__(self, dtype=None, copy=None):
        return self._mat.astype(dtype) if dtype is not None else self._mat.copy()

    def __repr__(self):
        return f"DensityMatrix({np.array2string(self._mat, precision=4)})"


def _readonly(a):
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


def validate_density(m) -> None:
    """Raise ``ValidationError`` unless ``m`` is a valid density matrix."""
    m = np.asarray(m)
    herm = hermiticity_error(m)
    if herm > HERMITIAN_TOL:
        raise ValidationError(f"density matrix is not Hermitian (error {herm:.3e})")
    tr = np.trace(m)
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValidationError(f"density matrix trace is {tr.real:.12g}, expected 1")
    lowest = hermitian_eigen(m)[0][-1]
    if lowest < -NEGATIVE_EIGEN_TOL:
        raise ValidationError(f"density matrix has negative eigenvalue {lowest:.3e}")


def as_density(rho) -> DensityMatrix:
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)


@dataclass(frozen=True)
class NoiseAxis:
    """Unit vector selecting the Pauli combination n.sigma.

    Any nonzero input vector is normalized; the zero vector is rejected.
    """

    nx: float
    ny: float
    nz: float

    def __post_init__(self):
        v = np.array([self.nx, self.ny, self.nz], dtype=float)
        if not np.all(np.isfinite(v)):
            raise ValidationError("noise axis components must be finite")
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            raise ValidationError("noise axis must be nonzero")
        v = v / norm
        object.__setattr__(self, "nx", float(v[0]))
        object.__setattr__(self, "ny", float(v[1]))
        object.__setattr__(self, "nz", float(v[2]))

    @classmethod
    def x(cls) -> "NoiseAxis":
        return cls(1.0, 0.0, 0.0)

    @classmethod
    def y(cls) -> "NoiseAxis":
        return cls(0.0, 1.0, 0.0)

    @classmethod
    def z(cls) -> "NoiseAxis":
        return cls(0.0, 0.0, 1.0)

    @classmethod
    def random(cls, rng: np.random.Generator) -> "NoiseAxis":
        """Uniformly distributed direction on the sphere."""
        while True:
            v = rng.normal(size=3)
            if np.linalg.norm(v) > 1e-8:
                return cls(*v)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.nx, self.ny, self.nz)

    def mirrored(self) -> "NoiseAxis":
        """The axis (nx, -ny, nz), which appears under complex conjugation."""
        return NoiseAxis(self.nx, -self.ny, self.nz)

    def pauli(self) -> np.ndarray:
        """The 2x2 operator n.sigma."""
        return self.nx * PAULI.sigma_x + self.ny * PAULI.sigma_y + self.nz * PAULI.sigma_z

    def bell_coherence(self) -> float:
        """Largest Bell-basis off-diagonal magnitude of N(rho_plus).

        N(rho_plus) is the pure state n_x Psi+ + i n_y Psi- + n_z Phi-, so its
        coherences are the pairwise products |n_a n_b|.
        """
        x, y, z = (abs(c) for c in self.as_tuple())
        return max(x * y, y * z, x * z)

    def is_aligned(self, tol: float = ALIGNED_TOL) -> bool:
        """True if the axis is +/- one of x, y, z within ``tol``."""
        comps = sorted(abs(c) for c in self.as_tuple())
        return comps[0] <= tol and comps[1] <= tol


@dataclass(frozen=True)
class ChannelSpec:
    p: float
    axis: NoiseAxis = field(default_factory=NoiseAxis.x)

    def __post_init__(self):
        if not (0.0 <= self.p <= 1.0):
            raise ValidationError(f"channel probability p={self.p} outside [0, 1]")
        object.__setattr__(self, "p", float(self.p))

    def kraus_b(self) -> np.ndarray:
        """The 4x4 operator I kron n.sigma applied on the noise branch."""
        return kron(PAULI.identity, self.axis.pauli())


@dataclass(frozen=True)
class BellDecomposition:
    """Weights over (Phi+, Phi-, Psi+, Psi-)."""

    weights: tuple[float, float, float, float]

    def significant(self, tol: float = BELL_WEIGHT_TOL) -> int:
        return sum(1 for w in self.weights if w > tol)

    def as_dict(self) -> dict[str, float]:
        return dict(zip(BELL_LABELS, self.weights))


def singlet() -> DensityMatrix:
    """The projector onto (|00> + |11>)/sqrt(2)."""
    m = np.zeros((4, 4), dtype=np.complex128)
    for i in range(2):
        for j in range(2):
            m[3 * i, 3 * j] = 0.5
    return DensityMatrix._trusted(m)


def noise_branch(rho, axis: NoiseAxis) -> DensityMatrix:
    """N(rho) = (I kron n.sigma) rho (I kron n.sigma)."""
    rho = as_density(rho)
    k = kron(PAULI.identity, axis.pauli())
    return DensityMatrix._trusted(k @ rho.mat @ k)


def apply_channel(rho, spec: ChannelSpec) -> DensityMatrix:
    rho = as_density(rho)
    k = spec.kraus_b()
    out = spec.p * rho.mat + (1.0 - spec.p) * (k @ rho.mat @ k)
    return DensityMatrix._trusted(out)


def iterate_channel(rho, spec: ChannelSpec, n: int) -> DensityMatrix:
    """Apply the channel ``n`` times by explicit composition."""
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ValidationError(f"iteration count must be a non-negative integer, got {n!r}")
    rho = as_density(rho)
    for _ in range(int(n)):
        rho = apply_channel(rho, spec)
    return rho


def p_closed_form(p: float, n: float) -> float:
    """Weight of rho_plus after ``n`` applications: 1/2 + 2^(n-1) (p - 1/2)^n.

    Non-integer ``n`` uses ``|p - 1/2|`` so the result stays real; every
    entanglement quantity depends only on ``|P_n - 1/2|``, so nothing
    downstream can tell the difference.
    """
    if not (0.0 <= p <= 1.0):
        raise ValidationError(f"p={p} outside [0, 1]")
    if not (n >= 0) or math.isinf(n):
        raise ValidationError(f"n={n} must be a finite non-negative number")
    # 2^(n-1) d^n written as (2d)^n / 2, which cannot overflow for |2d| <= 1.
    bias = 2.0 * p - 1.0
    if not float(n).is_integer():
        bias = abs(bias)
    return 0.5 + 0.5 * bias**n


def mix_state(P: float, axis: NoiseAxis) -> DensityMatrix:
    """P * rho_plus + (1 - P) * N(rho_plus)."""
    if not (0.0 <= P <= 1.0):
        raise ValidationError(f"mixing weight P={P} outside [0, 1]")
    plus = singlet()
    flipped = noise_branch(plus, axis)
    return DensityMatrix._trusted(P * plus.mat + (1.0 - P) * flipped.mat)


def bell_decompose(rho) -> BellDecomposition:
    """Diagonal weights of a Bell-diagonal state.

    Raises ``StructureError`` if any Bell-basis off-diagonal element exceeds
    1e-9 in magnitude.
    """
    rho = as_density(rho)
    b = 0.5 * (_BELL_SIGNS.T @ rho.mat @ _BELL_SIGNS)
    off = np.abs(b - np.diag(np.diag(b))).max()
    if off > BELL_OFFDIAG_TOL:
        raise StructureError(f"state is not Bell-diagonal (off-diagonal magnitude {off:.3e})")
    w = np.diag(b).real
    if w.min() < -NEGATIVE_EIGEN_TOL:
        raise ValidationError(f"negative Bell weight {w.min():.3e}")
    w = np.clip(w, 0.0, None)
    return BellDecomposition(tuple(float(x) for x in w))
