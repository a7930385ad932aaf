from .enums import Emit
from .misc import abort, binom, divisors, intern_keys, is_type
from .printer import printer

__all__ = [
    "Emit",
    "abort",
    "binom",
    "divisors",
    "intern_keys",
    "is_type",
    "printer",
]
