"""Entanglement of sections: few-qubit SLOCC classes, symmetric-state
geometry, charted bundles with their characteristic numbers, a section
optimizer, and the Borromean-rings TQFT state."""
from .errors import (
    ClassificationError,
    ContractViolation,
    DomainError,
    EntsecError,
    InputError,
    InvariantViolation,
    NumericalInconsistencyError,
    ResolutionError,
)
from .slocc import SloccClass, classify3, ghz_normal_form
from .states import DensityMatrix, PureState, entropy, partial_trace, schmidt

__version__ = "0.1.0"
