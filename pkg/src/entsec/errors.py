"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: input-type errors exit 2, numerical
consistency failures exit 3 and resolution failures exit 4.
"""


class EntsecError(Exception):
    """Base class for all package errors."""


class InputError(EntsecError, ValueError):
    """Malformed or out-of-range input."""


class ContractViolation(InputError):
    """A documented precondition was not met by the caller."""


class InvariantViolation(InputError):
    """An object failed one of its structural invariants."""


class DomainError(InputError):
    """The operation is undefined at this point of its domain."""


class ClassificationError(InputError):
    """The state does not belong to the class the operation requires."""


class NumericalInconsistencyError(EntsecError, ArithmeticError):
    """Two routes that must agree did not, or a tolerance was breached."""


class ResolutionError(EntsecError, ArithmeticError):
    """The discretization is too coarse for a reliable integer answer."""
