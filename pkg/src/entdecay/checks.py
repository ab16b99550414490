"""Invariant checks run by ``entdecay verify``.

Each check returns the worst absolute error it saw; a check passes when that
error is within its tolerance. ``run_checks(tol=...)`` overrides every
tolerance at once, which is how the negative test forces failures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .linalg import PAULI, hermitian_eigen, kron
from .measures import (
    binary_entropy,
    concurrence_oracle,
    eof_from_concurrence,
    measure_all,
    spin_flip,
)
from .states import ChannelSpec, NoiseAxis, apply_channel, iterate_channel, mix_state, p_closed_form, singlet

DEFAULT_SEED = 0
N_RANDOM_AXES = 20
N_JOZSA_SAMPLES = 100
P_GRID = tuple(i / 20 for i in range(21))


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_error: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tol


def sample_axes(rng: np.random.Generator, count: int = N_RANDOM_AXES) -> list[NoiseAxis]:
    return [NoiseAxis.x(), NoiseAxis.y(), NoiseAxis.z()] + [NoiseAxis.random(rng) for _ in range(count)]


def random_complex_2x2(rng: np.random.Generator) -> np.ndarray:
    return rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))


def _distinct_weights() -> list[float]:
    # Many (p, n) pairs give the same P_n (e.g. p = 1/2); identical states
    # give identical results, so each weight is evaluated once.
    return sorted({p_closed_form(p, n) for p in P_GRID for n in range(21)})


def check_concurrence_oracle(axes) -> float:
    worst = 0.0
    weights = _distinct_weights()
    for axis in axes:
        for P in weights:
            worst = max(worst, abs(concurrence_oracle(mix_state(P, axis)) - abs(2 * P - 1)))
    return worst


def check_iterate_closed_form(axes) -> float:
    plus = singlet()
    worst = 0.0
    for axis in axes:
        for p in (0.1, 0.4, 0.6, 0.9):
            spec = ChannelSpec(p, axis)
            rho = plus
            for n in range(21):
                if n:
                    rho = apply_channel(rho, spec)
                ref = mix_state(p_closed_form(p, n), axis)
                worst = max(worst, float(np.abs(rho.mat - ref.mat).max()))
    # iterate_channel itself, spot-checked against the stepwise loop above
    rho = iterate_channel(plus, ChannelSpec(0.6, NoiseAxis.z()), 20)
    ref = mix_state(p_closed_form(0.6, 20), NoiseAxis.z())
    return max(worst, float(np.abs(rho.mat - ref.mat).max()))


def check_jozsa(rng: np.random.Generator, samples: int = N_JOZSA_SAMPLES) -> float:
    plus = singlet().mat
    eye = PAULI.identity
    worst = 0.0
    for _ in range(samples):
        m = random_complex_2x2(rng)
        lhs = kron(eye, m) @ plus @ kron(eye, m.conj().T)
        rhs = kron(m.T, eye) @ plus @ kron(m.conj(), eye)
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def check_spectrum(axes) -> float:
    worst = 0.0
    for axis in axes:
        for p in P_GRID:
            values, _ = hermitian_eigen(apply_channel(singlet(), ChannelSpec(p, axis)).mat)
            expected = np.sort([p, 1 - p, 0.0, 0.0])[::-1]
            worst = max(worst, float(np.abs(values - expected).max()))
    return worst


def check_spin_flip_invariance(axes) -> float:
    worst = 0.0
    for axis in axes:
        for p in P_GRID:
            rho = apply_channel(singlet(), ChannelSpec(p, axis))
            worst = max(worst, float(np.abs(spin_flip(rho).mat - rho.mat).max()))
    return worst


def check_eof_closed_form() -> float:
    worst = 0.0
    for p in P_GRID:
        c = concurrence_oracle(apply_channel(singlet(), ChannelSpec(p)))
        expected = binary_entropy(0.5 + np.sqrt(p * (1 - p)))
        worst = max(worst, abs(eof_from_concurrence(c) - expected))
    return worst


def check_bell_diagonal_ed() -> float:
    worst = 0.0
    for axis in (NoiseAxis.x(), NoiseAxis.y(), NoiseAxis.z()):
        for P in _distinct_weights():
            ed = measure_all(mix_state(P, axis)).ed
            if ed is None:
                return float("inf")
            worst = max(worst, abs(ed - (1 - binary_entropy(P))))
    return worst


CHECKS: list[tuple[str, float, Callable[[np.random.Generator, list], float]]] = [
    ("concurrence_oracle_vs_closed_form", 1e-8, lambda rng, axes: check_concurrence_oracle(axes)),
    ("iterate_vs_closed_form_P_n", 1e-12, lambda rng, axes: check_iterate_closed_form(axes)),
    ("jozsa_identity", 1e-12, lambda rng, axes: check_jozsa(rng)),
    ("spectrum_p_1mp_0_0", 1e-9, lambda rng, axes: check_spectrum(axes)),
    ("spin_flip_invariance", 1e-12, lambda rng, axes: check_spin_flip_invariance(axes)),
    ("eof_closed_form", 1e-9, lambda rng, axes: check_eof_closed_form()),
    ("bell_diagonal_ed", 1e-9, lambda rng, axes: check_bell_diagonal_ed()),
]


def run_checks(seed: int = DEFAULT_SEED, tol: Optional[float] = None) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    axes = sample_axes(rng)
    results = []
    for name, default_tol, fn in CHECKS:
        results.append(CheckResult(name, float(fn(rng, axes)), default_tol if tol is None else tol))
    return results
