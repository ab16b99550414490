"""Entanglement decay under repeated noise, and fractional-loss metrics.

Everything here runs on the closed-form weight ``P_n``; the numeric
pipeline in ``states``/``measures`` is the cross-check.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import DegenerateDenominatorError, ValidationError
from .measures import concurrence_closed_form, eof_from_concurrence, one_minus_binary_entropy
from .states import BELL_OFFDIAG_TOL, NoiseAxis, p_closed_form

DENOMINATOR_TOL = 1e-12


class Measure(str, enum.Enum):
    EOF = "eof"
    ED = "ed"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class DecayReport:
    p: float
    axis: NoiseAxis
    n: float
    P_n: float
    concurrence: float
    eof: float
    ed: Optional[float]


@dataclass(frozen=True)
class LossMetrics:
    """One sweep row. ``F``/``R`` are NaN where the metric is undefined."""

    p: float
    k: float
    r: float
    measure: Measure
    F: float
    R: float

    @property
    def defined(self) -> bool:
        return not (math.isnan(self.F) or math.isnan(self.R))


@dataclass(frozen=True)
class LossGrid:
    p_values: Sequence[float]
    k_values: Sequence[float]
    r_values: Sequence[float]
    measure: Measure = Measure.ED
    axis: NoiseAxis = field(default_factory=NoiseAxis.x)


def entanglement_at(p: float, n: float, measure: Measure) -> float:
    """E(rho_(n)) for the chosen measure, from the closed-form weight."""
    P = p_closed_form(p, n)
    if Measure(measure) is Measure.EOF:
        return eof_from_concurrence(concurrence_closed_form(P))
    return one_minus_binary_entropy(2.0 * P - 1.0)


def decay_curve(p: float, axis: NoiseAxis, n_values: Iterable[float]) -> list[DecayReport]:
    """Closed-form entanglement of rho_(n) for each ``n``.

    ``ed`` is reported only while rho_(n) is Bell-diagonal (two terms): always
    for axis-aligned noise, otherwise only when P_n is close enough to 1 that
    the Bell coherences (1 - P_n) |n_a n_b| fall within tolerance.
    """
    coherence = axis.bell_coherence()
    out = []
    for n in n_values:
        P = p_closed_form(p, n)
        c = concurrence_closed_form(P)
        out.append(
            DecayReport(
                p=p,
                axis=axis,
                n=n,
                P_n=P,
                concurrence=c,
                eof=eof_from_concurrence(c),
                ed=(
                    one_minus_binary_entropy(2.0 * P - 1.0)
                    if (1.0 - P) * coherence <= BELL_OFFDIAG_TOL
                    else None
                ),
            )
        )
    return out


def fractional_loss(p: float, k: float, r: float, measure: Measure) -> float:
    """F(p, k, r) = (E_k - E_{k+r}) / E_k, the fraction lost over ``r`` more steps."""
    if r < 0 or k < 0:
        raise ValidationError(f"k and r must be non-negative (k={k}, r={r})")
    e_k = entanglement_at(p, k, measure)
    if e_k <= DENOMINATOR_TOL:
        raise DegenerateDenominatorError(
            f"E(rho_({k}))={e_k:.3e}: state is already disentangled at p={p}"
        )
    return (e_k - entanglement_at(p, k + r, measure)) / e_k


def loss_ratio(p: float, k: float, r: float, measure: Measure) -> float:
    """R(p, k, r) = F(p, k, r) / F(p, 0, r).

    R < 1 means rho_(k) loses its entanglement more slowly than rho_plus.
    """
    baseline = fractional_loss(p, 0, r, measure)
    if baseline <= DENOMINATOR_TOL:
        raise DegenerateDenominatorError(
            f"F(p={p}, 0, r={r})={baseline:.3e}: the singlet loses nothing"
        )
    return fractional_loss(p, k, r, measure) / baseline


def _point(p, k, r, measure, axis) -> LossMetrics:
    measure = Measure(measure)
    F = R = math.nan
    if measure is Measure.EOF or axis.is_aligned():
        try:
            F = fractional_loss(p, k, r, measure)
            R = loss_ratio(p, k, r, measure)
        except DegenerateDenominatorError:
            pass
    return LossMetrics(p=p, k=k, r=r, measure=measure, F=F, R=R)


def sweep(grid: LossGrid) -> list[LossMetrics]:
    """Evaluate F and R over the cartesian grid (p outer, k middle, r inner).

    Points where a metric is undefined (zero denominator, or E_D requested
    for a non-aligned axis) are kept with NaN values.
    """
    return [
        _point(p, k, r, grid.measure, grid.axis)
        for p in grid.p_values
        for k in grid.k_values
        for r in grid.r_values
    ]
