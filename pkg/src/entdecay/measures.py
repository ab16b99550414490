"""Concurrence, entanglement of formation and distillable entanglement.

``concurrence_oracle`` runs the full spectral procedure on an arbitrary
two-qubit state. The ``*_closed_form`` helpers evaluate the formulas that
hold for the rho_plus / N(rho_plus) family and serve as the fast path.
All logarithms are base 2, so results are in ebits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import StructureError, UnsupportedStateError, ValidationError
from .linalg import PAULI, clamp_eigenvalues, hermitian_eigen, kron, matrix_sqrt_psd
from .states import BellDecomposition, DensityMatrix, as_density, bell_decompose

RANGE_TOL = 1e-12

SIGMA_YY = kron(PAULI.sigma_y, PAULI.sigma_y)
SIGMA_YY.setflags(write=False)


@dataclass(frozen=True)
class EntanglementValues:
    concurrence: float
    eof: float
    ed: Optional[float] = None


def _unit_interval(x: float, name: str) -> float:
    # Accept tiny overshoot from roundoff, reject anything else.
    if not (-RANGE_TOL <= x <= 1.0 + RANGE_TOL):
        raise ValidationError(f"{name}={x} outside [0, 1]")
    return min(max(float(x), 0.0), 1.0)


def spin_flip(rho) -> DensityMatrix:
    """rho~ = (sy kron sy) rho* (sy kron sy)."""
    rho = as_density(rho)
    return DensityMatrix._trusted(SIGMA_YY @ rho.mat.conj() @ SIGMA_YY)


def wootters_lambdas(rho) -> np.ndarray:
    """Eigenvalues of sqrt(sqrt(rho) rho~ sqrt(rho)), descending.

    Diagonalizes the Hermitian PSD matrix s rho~ s (s = sqrt(rho)) and takes
    square roots, which avoids the non-Hermitian product rho rho~.
    """
    rho = as_density(rho)
    s = matrix_sqrt_psd(rho.mat)
    flipped = spin_flip(rho).mat
    h = s @ flipped @ s
    values, _ = hermitian_eigen(0.5 * (h + h.conj().T))
    scale = float(np.linalg.norm(s)) ** 2 * float(np.linalg.norm(flipped))
    return np.sqrt(clamp_eigenvalues(values, scale=scale))


def concurrence_oracle(rho) -> float:
    """max(0, l1 - l2 - l3 - l4) over the descending ``wootters_lambdas``."""
    lam = wootters_lambdas(rho)
    return float(min(1.0, max(0.0, lam[0] - lam[1] - lam[2] - lam[3])))


def concurrence_closed_form(P: float) -> float:
    """|2P - 1| for the mixture P rho_plus + (1 - P) N(rho_plus)."""
    P = _unit_interval(P, "P")
    return abs(2.0 * P - 1.0)


def _xlog2x(x: float) -> float:
    return 0.0 if x == 0.0 else x * math.log2(x)


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1 - x) log2 (1 - x), with 0 log 0 = 0."""
    if not (0.0 <= x <= 1.0):
        raise ValidationError(f"binary entropy argument {x} outside [0, 1]")
    if x > 0.5:
        x = 1.0 - x
    # Small branch via log1p keeps relative accuracy for x near 0.
    if x == 0.0:
        return 0.0
    return -_xlog2x(x) - (1.0 - x) * math.log1p(-x) / math.log(2.0)


def one_minus_binary_entropy(bias: float) -> float:
    """1 - h((1 + bias) / 2) for ``bias`` in [0, 1], stable as bias -> 0.

    Uses 1 - h = [2 b atanh(b) + log1p(-b^2)] / (2 ln 2), whose two terms
    only partially cancel (naive 1 - h loses ~all digits below b ~ 1e-8).
    """
    b = _unit_interval(abs(bias), "bias")
    if b == 1.0:
        return 1.0
    if b == 0.0:
        return 0.0
    # log(1 - b^2): forming b*b loses digits near b = 1, splitting cancels near b = 0.
    log_1mb2 = math.log1p(-b * b) if b < 0.5 else math.log1p(-b) + math.log1p(b)
    return (2.0 * b * math.atanh(b) + log_1mb2) / (2.0 * math.log(2.0))


def eof_from_concurrence(c: float) -> float:
    """E_F = h((1 + sqrt(1 - C^2)) / 2)."""
    c = _unit_interval(c, "concurrence")
    # h is symmetric, so evaluate at the small root (1 - sqrt(1 - c^2))/2,
    # written without the cancelling subtraction.
    small = c * c / (2.0 * (1.0 + math.sqrt(1.0 - c * c)))
    return binary_entropy(small)


def distillable_bell_diagonal(weights: BellDecomposition) -> float:
    """E_D = 1 - h(w_max) for a Bell-diagonal state with at most two terms."""
    if weights.significant() > 2:
        raise UnsupportedStateError(
            "distillable entanglement is only available for rank <= 2 Bell-diagonal states"
        )
    w_max = max(weights.weights)
    return one_minus_binary_entropy(2.0 * w_max - 1.0)


def measure_all(rho) -> EntanglementValues:
    rho = as_density(rho)
    c = concurrence_oracle(rho)
    try:
        ed = distillable_bell_diagonal(bell_decompose(rho))
    except (StructureError, UnsupportedStateError):
        ed = None
    return EntanglementValues(concurrence=c, eof=eof_from_concurrence(c), ed=ed)
