"""Entanglement decay of two-qubit states under single-sided Pauli noise."""

__version__ = "0.1.0"

from .decay import (
    DecayReport,
    LossGrid,
    LossMetrics,
    Measure,
    decay_curve,
    entanglement_at,
    fractional_loss,
    loss_ratio,
    sweep,
)
from .errors import (
    DegenerateDenominatorError,
    DimensionError,
    EntDecayError,
    StructureError,
    UnsupportedStateError,
    ValidationError,
)
from .linalg import PAULI, PauliSet, hermitian_eigen, kron, matmul, matrix_sqrt_psd
from .measures import (
    EntanglementValues,
    binary_entropy,
    concurrence_closed_form,
    concurrence_oracle,
    distillable_bell_diagonal,
    eof_from_concurrence,
    measure_all,
    one_minus_binary_entropy,
    spin_flip,
)
from .states import (
    BellDecomposition,
    ChannelSpec,
    DensityMatrix,
    NoiseAxis,
    apply_channel,
    bell_decompose,
    iterate_channel,
    mix_state,
    noise_branch,
    p_closed_form,
    singlet,
)
