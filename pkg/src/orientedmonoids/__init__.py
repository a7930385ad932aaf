from .args import arg
from .command import command
from .semigroup import SemigroupKind, build
from .util import abort, printer

__version__ = "1.0a1.dev0"

__all__ = [
    "__version__",
    "SemigroupKind",
    "abort",
    "arg",
    "build",
    "command",
    "printer",
]
