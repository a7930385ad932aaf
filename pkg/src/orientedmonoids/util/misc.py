import builtins
from math import comb

from ..exc import RunAborted


def abort(return_code=0, message="Aborted"):
    """Stop the running command.

    The console script prints ``message`` (as an error when
    ``return_code`` is nonzero, as a warning otherwise) and exits with
    ``return_code``.

    """
    raise RunAborted(return_code, message)


def binom(a, b):
    """Binomial coefficient that is 0 outside the usual range.

    Examples::

        >>> binom(4, 2)
        6
        >>> binom(1, 1)
        1
        >>> binom(2, 3)
        0
        >>> binom(3, -1)
        0
        >>> binom(-1, 0)
        0

    """
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


def divisors(n):
    """Positive divisors of ``n`` in increasing order.

    Examples::

        >>> divisors(1)
        [1]
        >>> divisors(12)
        [1, 2, 3, 4, 6, 12]

    """
    return [d for d in range(1, n + 1) if n % d == 0]


def intern_keys(keys):
    """Map hashable keys to small ints in order of first appearance.

    Examples::

        >>> intern_keys(["b", "a", "b", "c"])
        [0, 1, 0, 2]

    """
    ids = {}
    return [ids.setdefault(key, len(ids)) for key in keys]


def is_type(obj, type):
    """Is the object a subclass of the specified type?

    This is similar to the builtin ``issubclass`` but also ensures the
    object is a type first.

    """
    if not isinstance(obj, builtins.type):
        return False
    return issubclass(obj, type)
