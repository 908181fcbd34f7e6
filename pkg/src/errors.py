"""
Exception hierarchy for the thermal lab.

Two families matter to callers: ``ValidationError`` for bad input or a
violated precondition (CLI exit code 1) and ``InvariantError`` for a
postcondition that failed inside the library (CLI exit code 2).
"""


class LabError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(LabError, ValueError):
    """Input rejected before any work was done."""


class InvariantError(LabError, RuntimeError):
    """An internal check failed; indicates a bug, not bad input."""


class PauliError(ValidationError):
    """Operands over different qubit sets, or a non-Hermitian operand."""


class GeometryError(ValidationError):
    """Unsupported dimension, size or block layout."""


class SurfaceError(ValidationError):
    """Open surface, or a step that would leave the allowed range."""


class DisentanglerError(InvariantError):
    """A gate was requested on a surface that is not free."""


class DecompositionError(InvariantError):
    """Block structure of an algebra could not be resolved."""


class RegionPartitionError(InvariantError):
    """A term touches more than two regions or two non-adjacent ones."""


class ToyModelError(InvariantError):
    """Incremental and full energies drifted apart."""


def require(check, error_cls=ValidationError):
    """
    Raise from a validator result.

    Args:
        check: ``(is_valid, error_message)`` tuple as returned by
            the functions in ``src.validators``
        error_cls: Exception class to raise on failure

    Returns:
        None
    """
    is_valid, message = check
    if not is_valid:
        raise error_cls(message)
