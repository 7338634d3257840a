"""Exception hierarchy shared by every subpackage.

The CLI maps these onto exit codes: ``InputError`` -> 2, ``BudgetExceeded``
and ``PrecisionError`` -> 3, ``SoundnessAlarm`` -> 1.
"""


class PurityLabError(Exception):
    pass


class InputError(PurityLabError, ValueError):
    """Malformed or inconsistent input (dimension, ambient, arity, syntax)."""


class DimensionError(InputError):
    pass


class AmbientMismatch(InputError):
    pass


class ContainmentError(InputError):
    pass


class RingMismatch(InputError):
    pass


class PrecisionError(PurityLabError):
    """A result did not stabilise when recomputed at higher precision."""


class BudgetExceeded(PurityLabError):
    """An enumeration would exceed the configured element budget."""


class LiftFailure(PurityLabError):
    pass


class SoundnessAlarm(PurityLabError):
    """A check that should hold by theorem failed on concrete data."""


class ValidationFailure(PurityLabError):
    pass


DEFAULT_BUDGET = 1 << 20
