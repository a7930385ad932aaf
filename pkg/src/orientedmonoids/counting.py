"""Closed-form endomorphism counts.

Everything here is exact integer arithmetic. Powers of the golden
ratio and its conjugate only appear as tau^2k + theta^2k, which is the
Lucas number L_2k; formulas with halves and quarters are evaluated with
:class:`fractions.Fraction` and checked to be whole.

"""
from fractions import Fraction
from math import gcd

from sympy import fibonacci, lucas

from .exc import DomainError, TheoremViolation
from .groups import totient
from .semigroup import SemigroupKind
from .util import binom

__all__ = [
    "CountReport",
    "TABLE_COLUMNS",
    "TYPE_KEYS",
    "brute_force_counts",
    "count_idem_op",
    "count_idem_op_rank",
    "count_idem_pop",
    "count_idem_pop_rank",
    "delta",
    "e_count",
    "eps",
    "fib",
    "group_counts",
    "h0_aggregate",
    "h0_count",
    "idempotents_per_rank",
    "lucas_even",
    "theorem_total",
    "total_endomorphisms",
    "type_counts",
]

K = SemigroupKind
TYPE_KEYS = ("T1", "T2", "T3+7", "T4", "T5", "T6")
TABLE_COLUMNS = ("kind", "n") + TYPE_KEYS + ("total", "enumerated")

FULL_KINDS = (K.OP, K.OR)
INJECTIVE_KINDS = (K.POPI, K.PORI)


def _whole(value):
    value = Fraction(value)
    if value.denominator != 1:
        raise TheoremViolation(f"Expected a whole number; got {value}")
    return value.numerator


def _check_target(kind, n=None):
    kind = SemigroupKind.coerce(kind)
    if not kind.is_classification_target:
        raise DomainError(f"No endomorphism count for {kind}")
    if n is not None and n < 3:
        raise DomainError(f"Endomorphism counts require n >= 3; got {n}")
    return kind


def _check_rank(n, k, low=1):
    if not low <= k <= n:
        raise DomainError(f"Rank must be in {low}..{n}; got {k}")


# Sequences ---------------------------------------------------------------


def fib(i):
    """Fibonacci numbers with F_0 = 0 and F_1 = F_2 = 1.

    Examples::

        >>> [fib(i) for i in range(8)]
        [0, 1, 1, 2, 3, 5, 8, 13]

    """
    if i < 0:
        raise DomainError(f"Fibonacci index must be >= 0; got {i}")
    return int(fibonacci(i))


def lucas_even(k):
    """tau^2k + theta^2k, i.e. the Lucas number L_2k.

    Examples::

        >>> [lucas_even(k) for k in range(5)]
        [2, 3, 7, 18, 47]

    """
    if k < 0:
        raise DomainError(f"Lucas index must be >= 0; got {k}")
    return int(lucas(2 * k))


# Idempotents ---------------------------------------------------------------


def count_idem_op_rank(n, k):
    """Number of rank ``k`` idempotents of OP_n."""
    _check_rank(n, k)
    if k == 1:
        return n
    return sum(
        i * i * binom(n - i + k - 2, 2 * k - 3) for i in range(1, n - k + 2)
    )


def count_idem_op(n):
    """|E(OP_n)| = F_(2n-1) + F_(2n+1) - n² + n - 2"""
    if n < 1:
        raise DomainError(f"n must be >= 1; got {n}")
    return fib(2 * n - 1) + fib(2 * n + 1) - n * n + n - 2


def count_idem_pop_rank(n, k):
    """Number of rank ``k`` idempotents of POP_n (k = 0 is the empty map)."""
    _check_rank(n, k, low=0)
    if k == 0:
        return 1
    if k == 1:
        return n * 2 ** (n - 1)
    return sum(binom(n, i) * count_idem_op_rank(i, k) for i in range(k, n + 1))


def count_idem_pop(n):
    """|E(POP_n)| = 1 + sum over k of C(n, k)(L_2k - k² + k - 2)"""
    if n < 1:
        raise DomainError(f"n must be >= 1; got {n}")
    return 1 + sum(
        binom(n, k) * (lucas_even(k) - k * k + k - 2) for k in range(1, n + 1)
    )


def idempotents_per_rank(kind, n):
    """Rank => number of idempotents of that rank."""
    kind = _check_target(kind)
    if kind in FULL_KINDS:
        return {k: count_idem_op_rank(n, k) for k in range(1, n + 1)}
    if kind in INJECTIVE_KINDS:
        return {k: binom(n, k) for k in range(n + 1)}
    return {k: count_idem_pop_rank(n, k) for k in range(n + 1)}


def e_count(kind, k):
    """|E_S(e)| for an idempotent e of rank ``k``.

    This only depends on the kind and on k.

    Examples::

        >>> e_count("popi", 2), e_count("op", 1), e_count("pop", 2)
        (4, 1, 6)

    """
    kind = _check_target(kind)
    if k < 0 or (k == 0 and kind in FULL_KINDS):
        raise DomainError(f"No rank {k} idempotents in {kind}")
    if kind in FULL_KINDS:
        return count_idem_op(k)
    if kind in INJECTIVE_KINDS:
        return 2 ** k
    return 1 if k == 0 else count_idem_pop(k)


# Group parameters ------------------------------------------------------------


def eps(n, k):
    """Number of elements of C_k whose order divides n and exceeds 1.

    Examples::

        >>> eps(6, 3), eps(3, 2), eps(4, 4)
        (2, 0, 3)

    """
    if k < 1:
        raise DomainError(f"k must be >= 1; got {k}")
    return sum(1 for t in range(1, k) if n % (k // gcd(t, k)) == 0)


def delta(n, k):
    """1 if n and k are both even, else 0."""
    return _whole(Fraction((-1) ** (n + k) + (-1) ** n + (-1) ** k + 1, 4))


def h0_count(kind, k, fixcount):
    """|E_S(h0)| for an order-2 group element h0 of rank ``k``.

    ``fixcount`` is the number of fixed points of h0: 1 for odd k, 0 or
    2 for even k, and 2 only from k = 4 on.

    """
    kind = _check_target(kind)
    if kind not in (K.OR, K.PORI, K.POR):
        raise DomainError(f"{kind} has no type 6 endomorphisms")
    if k < 2:
        raise DomainError(f"Order-2 group elements have rank >= 2; got {k}")
    consistent = {0: k % 2 == 0, 1: k % 2 == 1, 2: k % 2 == 0 and k >= 4}
    if not consistent.get(fixcount, False):
        raise DomainError(f"{fixcount} fixed points is impossible at rank {k}")
    if kind is K.PORI:
        return {0: 1, 1: 2, 2: 4}[fixcount]
    if kind is K.OR:
        return {0: 0, 1: 1, 2: k // 2 + 2}[fixcount]
    if fixcount == 0:
        return 1
    if fixcount == 1:
        return 1 + 2 ** ((k - 1) // 2)
    return _whole(1 + Fraction(k // 2 + 9) * Fraction(2) ** (k // 2 - 2))


def h0_aggregate(kind, k):
    """Sum of |E_S(h0)| over the order-2 elements of a group H-class of rank k."""
    kind = _check_target(kind)
    if kind not in (K.OR, K.PORI, K.POR):
        raise DomainError(f"{kind} has no type 6 endomorphisms")
    if k < 2:
        raise DomainError(f"Rank must be >= 2; got {k}")
    even = Fraction((-1) ** k + 1, 2)
    if kind is K.PORI:
        return 1 if k == 2 else _whole(2 * k + even * (1 + Fraction(k, 2)))
    if kind is K.OR:
        return 0 if k == 2 else _whole(k + even * Fraction(k * k, 4))
    if k == 2:
        return 1
    power = 2 ** (k // 2)
    return _whole(k + k * power + even * (1 + Fraction(k * k + 2 * k, 16) * power))


def group_counts(tag, n):
    """(endomorphisms, automorphisms) of C_n or D_2n."""
    kind = SemigroupKind.coerce(tag)
    if kind is K.C:
        return n, totient(n)
    if kind is K.D2:
        if n < 3:
            raise DomainError(f"D_2n is defined here for n >= 3; got {n}")
        endos = n * n + 1 if n % 2 else n * n + 4 * n + 4
        return endos, n * totient(n)
    raise DomainError(f"Group tag must be C or D2; got {tag}")


# Totals ------------------------------------------------------------------


def type_counts(kind, n):
    """Per-type endomorphism counts keyed by :data:`TYPE_KEYS`."""
    kind = _check_target(kind, n)
    per_rank = idempotents_per_rank(kind, n)
    counts = dict.fromkeys(TYPE_KEYS, 0)
    counts["T1"] = 2 * n
    if kind.is_partial:
        counts["T2"] = n * totient(n)
    counts["T3+7"] = sum(
        count * e_count(kind, k) for k, count in per_rank.items()
    )
    if kind in (K.POPI, K.POP):
        counts["T4"] = sum(per_rank[k] * eps(n, k) for k in range(2, n + 1))
    if kind in (K.PORI, K.POR):
        counts["T5"] = sum(
            per_rank[k] * k * (eps(n, k) + 2 * delta(n, k)) for k in range(3, n + 1)
        )
    if kind in (K.OR, K.PORI, K.POR):
        counts["T6"] = ((-1) ** n + 2) * sum(
            per_rank[k] * h0_aggregate(kind, k) for k in range(2, n + 1)
        )
    return counts


def _op_type37(n):
    return 3 * n + sum(
        count_idem_op_rank(n, k) * count_idem_op(k) for k in range(2, n + 1)
    )


def _pop_common(n):
    return (
        1
        + 2 * n
        + n * totient(n)
        + n * 2 ** (n - 1)
        + sum(binom(n, k) * (lucas_even(k) - k * k + k - 2) for k in range(1, n + 1))
    )


def _pop_inner(k):
    return sum(
        binom(k, i) * (lucas_even(i) - i * i + i - 2) for i in range(1, k + 1)
    )


def theorem_total(kind, n):
    """The total number of endomorphisms, from the kind's closed form.

    These are evaluated as stated, independently of :func:`type_counts`,
    so that comparing the two checks how the subtotals were assembled.

    """
    kind = _check_target(kind, n)
    sign = (-1) ** n + 2
    if kind is K.OP:
        return _op_type37(n)
    if kind is K.OR:
        return _whole(
            _op_type37(n)
            + sign
            * sum(
                count_idem_op_rank(n, k) * (k + Fraction((-1) ** k + 1, 8) * k * k)
                for k in range(3, n + 1)
            )
        )
    if kind is K.POPI:
        return (
            2 * n
            + n * totient(n)
            + 3 ** n
            + sum(binom(n, k) * eps(n, k) for k in range(2, n + 1))
        )
    if kind is K.PORI:
        total = (
            n * totient(n)
            + 3 ** n
            + sum(
                binom(n, k) * k * (eps(n, k) + 2 * delta(n, k))
                for k in range(3, n + 1)
            )
            + sign
            * (
                (9 * n + 4) * Fraction(2) ** (n - 3)
                - Fraction(5, 2) * n * (n - 1)
                - 1
            )
            - 2 * ((-1) ** n + 1) * n
        )
        return _whole(total)
    if kind is K.POP:
        return _pop_common(n) + sum(
            count_idem_pop_rank(n, k) * (eps(n, k) + _pop_inner(k))
            for k in range(2, n + 1)
        )
    # POR
    total = (
        _pop_common(n)
        + Fraction((-1) ** n + 7, 12)
        * sum(binom(n, i) * i * i * (i * i - 1) for i in range(2, n + 1))
        + sum(
            count_idem_pop_rank(n, k)
            * (
                k * (eps(n, k) + 2 * delta(n, k))
                + _pop_inner(k)
                + sign * h0_aggregate(kind, k)
            )
            for k in range(3, n + 1)
        )
    )
    return _whole(total)


class CountReport:

    """Formula counts for one monoid, optionally with an enumerated total.

    The report is consistent when the per-type counts add up to the
    closed-form total and, if present, the enumerated total agrees.

    """

    def __init__(self, kind, n, per_type, formula_total, enumerated_total=None):
        self.kind = kind
        self.n = n
        self.per_type = per_type
        self.formula_total = formula_total
        self.enumerated_total = enumerated_total

    @property
    def idempotents_per_rank(self):
        return idempotents_per_rank(self.kind, self.n)

    @property
    def type_total(self):
        return sum(self.per_type.values())

    @property
    def consistent(self):
        if self.type_total != self.formula_total:
            return False
        if self.enumerated_total is not None:
            return self.enumerated_total == self.formula_total
        return True

    def to_json(self):
        return {
            "kind": str(self.kind),
            "n": self.n,
            "per_type": dict(self.per_type),
            "formula_total": self.formula_total,
            "enumerated_total": self.enumerated_total,
            "idempotents_per_rank": {
                str(k): count for k, count in self.idempotents_per_rank.items()
            },
            "consistent": self.consistent,
        }

    def to_row(self):
        """Values for :data:`TABLE_COLUMNS`; no enumerated total is blank."""
        enumerated = "" if self.enumerated_total is None else self.enumerated_total
        per_type = [self.per_type[key] for key in TYPE_KEYS]
        return [str(self.kind), self.n, *per_type, self.formula_total, enumerated]

    def __repr__(self):
        return f"CountReport({self.kind}_{self.n}, total={self.formula_total})"


def total_endomorphisms(kind, n, enumerated_total=None):
    kind = _check_target(kind, n)
    return CountReport(
        kind, n, type_counts(kind, n), theorem_total(kind, n), enumerated_total
    )


def brute_force_counts(S, endomorphisms=None, budget=None):
    """Per-type counts obtained by classifying every endomorphism of ``S``."""
    from .endomorphisms import classify
    from .search import enumerate_endomorphisms

    if endomorphisms is None:
        endomorphisms = enumerate_endomorphisms(S, budget=budget)
    counts = dict.fromkeys(TYPE_KEYS, 0)
    for endo in endomorphisms:
        tag = classify(S, endo).tag.name
        counts["T3+7" if tag in ("T3", "T7") else tag] += 1
    return counts
