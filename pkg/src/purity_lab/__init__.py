"""purity_lab: exact tools for pp-definability, lattices over orders and Ziegler spectra."""

from .errors import (
    BudgetExceeded,
    InputError,
    PrecisionError,
    PurityLabError,
    SoundnessAlarm,
    ValidationFailure,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "InputError",
    "PrecisionError",
    "PurityLabError",
    "SoundnessAlarm",
    "ValidationFailure",
    "__version__",
]
