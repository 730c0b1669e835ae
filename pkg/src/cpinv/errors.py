"""Exception hierarchy.

The CLI maps these onto exit codes, so every error raised by the library
belongs to exactly one of the families below.
"""


class CpinvError(Exception):
    """Base class for all library errors."""


class InputError(CpinvError):
    """Malformed or inconsistent input data (CLI exit code 2)."""


class ParameterError(InputError):
    """A caller-supplied parameter is out of range."""


class StructuralError(CpinvError):
    """Objects that do not fit together, e.g. elements of different fields."""


class FieldMismatchError(StructuralError):
    pass


class ClosureViolation(StructuralError):
    """A composition left the declared automorphism set."""


class DomainError(CpinvError):
    """An operation was applied outside its mathematical domain."""


class NotInvertibleError(DomainError, ZeroDivisionError):
    pass


class PrecisionExhausted(CpinvError):
    """Interval refinement hit the precision cap without a decision (exit code 3)."""


class InternalConsistencyError(CpinvError):
    """A computed quantity violated an invariant that must hold (exit code 4)."""
