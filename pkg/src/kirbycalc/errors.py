class KirbyCalcError(ValueError):
    """Bad input to one of the library operations."""


class DiagramError(KirbyCalcError):
    """A PD code or front word that does not describe a valid diagram."""


class FormError(KirbyCalcError):
    """A matrix or move that violates a bilinear-form precondition."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; indicates an encoding bug."""
