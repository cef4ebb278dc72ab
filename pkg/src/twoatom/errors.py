"""Exception types shared across the package."""


class TwoAtomError(ValueError):
    """Base class for domain errors raised by this package."""


class DomainError(TwoAtomError):
    """Argument outside the mathematical domain of a special function."""


class PoleError(TwoAtomError):
    """Evaluation requested exactly on a pole (x = 1 light-cone singularity)."""


class GuardWindowError(TwoAtomError):
    """Parameter point falls inside a guard window around a singularity."""

    def __init__(self, message, quantity=None):
        super().__init__(message)
        self.quantity = quantity


class DegenerateInputError(TwoAtomError):
    """State construction from an identically-zero norm."""


class InconsistentAmplitudesError(TwoAtomError):
    """Amplitude combination violates a positivity/Cauchy-Schwarz constraint."""


class InvariantViolationError(TwoAtomError):
    """A computed object breaks one of its declared invariants."""


class NonConvergenceError(TwoAtomError):
    """A numerical oracle failed to reach the requested tolerance."""


class SchemaError(TwoAtomError):
    """File content does not match the expected sweep schema."""
