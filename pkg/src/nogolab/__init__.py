"""Numerical checks that perfect deleting and cloning machines break
entropy, relative-entropy and entanglement monotonicity, while legal
quantum evolutions respect them."""
from .channels import (
    Dilation,
    QuantumChannel,
    apply_channel,
    cnot,
    demon_channel,
    random_channel,
    stinespring,
    validate_cptp,
)
from .linalg import EigenDecomposition, fit_linear_operator, hermitian_eig, kronecker
from .measures import (
    INFINITE,
    Ensemble,
    binary_entropy,
    entanglement_entropy,
    holevo_quantity,
    overlap,
    relative_entropy,
    von_neumann_entropy,
)
from .states import (
    DensityMatrix,
    PureState,
    maximally_mixed_on,
    partial_trace,
    qubit,
    random_pure_state,
    random_unitary,
    symmetric_projector_two_qubits,
)

__version__ = "0.1.0"
