"""Exception hierarchy shared by every module in the package."""


class EntDecayError(Exception):
    """Base class for domain errors raised by entdecay."""


class DimensionError(EntDecayError, ValueError):
    """Operand shapes are not supported or do not agree."""


class ValidationError(EntDecayError, ValueError):
    """Input fails a numerical precondition (Hermiticity, PSD, trace, range)."""


class StructureError(EntDecayError):
    """State lacks the structure a closed form needs (e.g. not Bell-diagonal)."""


class UnsupportedStateError(EntDecayError):
    """State is valid but outside the regime where a formula is proven."""


class DegenerateDenominatorError(EntDecayError, ZeroDivisionError):
    """A loss metric would divide by an (effectively) zero entanglement."""
