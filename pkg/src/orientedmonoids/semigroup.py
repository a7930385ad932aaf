"""Transformation monoids as enumerated elements plus a Cayley table."""
import enum
import struct
from collections import deque
from itertools import combinations, combinations_with_replacement, permutations
from itertools import product as cartesian_product
from math import comb, perm
from pathlib import Path

import numpy as np
from cached_property import cached_property

from .chain import (
    PartialTransformation,
    compose,
    empty,
    identity,
    partial_identity,
)
from .config import settings
from .exc import CapacityError, DomainError

__all__ = [
    "CLASSIFICATION_TARGETS",
    "FiniteSemigroup",
    "SemigroupKind",
    "build",
    "closure",
    "e_set",
    "elements_by_predicate",
    "expand_kinds",
    "export_cayley",
    "generator_set",
    "import_cayley",
    "is_regular",
    "subsemigroup",
]

CAYLEY_MAGIC = b"OMCT"


class SemigroupKind(enum.Enum):

    OP = "OP"
    POPI = "POPI"
    POP = "POP"
    OR = "OR"
    PORI = "PORI"
    POR = "POR"
    O = "O"  # noqa: E741
    POI = "POI"
    PO = "PO"
    C = "C"
    D2 = "D2"
    T = "T"
    I = "I"  # noqa: E741
    PT = "PT"

    def __str__(self):
        return self.value

    @classmethod
    def coerce(cls, kind):
        """Get a kind from a kind or a (case-insensitive) tag.

        Examples::

            >>> SemigroupKind.coerce("pori")
            <SemigroupKind.PORI: 'PORI'>
            >>> SemigroupKind.coerce(SemigroupKind.D2)
            <SemigroupKind.D2: 'D2'>

        """
        if isinstance(kind, cls):
            return kind
        try:
            return cls(str(kind).upper())
        except ValueError:
            raise DomainError(f"Unknown semigroup kind: {kind}") from None

    @property
    def domain_type(self):
        return _KIND_TRAITS[self][0]

    @property
    def orientation(self):
        return _KIND_TRAITS[self][1]

    @property
    def is_partial(self):
        """Does the kind contain the empty transformation?"""
        return self.domain_type in ("partial", "injective")

    @property
    def is_injective(self):
        return self.domain_type in ("injective", "permutation")

    @property
    def has_reflections(self):
        return self.orientation == "oriented"

    @property
    def is_classification_target(self):
        return self in CLASSIFICATION_TARGETS

    def contains(self, t):
        """Membership predicate."""
        domain_type = self.domain_type
        if domain_type == "full" and not t.is_full:
            return False
        if domain_type == "injective" and not t.is_injective:
            return False
        if domain_type == "permutation" and not t.is_permutation:
            return False
        orientation = self.orientation
        if orientation == "any":
            return True
        o = t.orientation
        if orientation == "order":
            return o.order_preserving
        if orientation == "preserving":
            return o.orientation_preserving
        return o.oriented


# kind => (domain type, orientation constraint)
_KIND_TRAITS = {
    SemigroupKind.OP: ("full", "preserving"),
    SemigroupKind.POPI: ("injective", "preserving"),
    SemigroupKind.POP: ("partial", "preserving"),
    SemigroupKind.OR: ("full", "oriented"),
    SemigroupKind.PORI: ("injective", "oriented"),
    SemigroupKind.POR: ("partial", "oriented"),
    SemigroupKind.O: ("full", "order"),
    SemigroupKind.POI: ("injective", "order"),
    SemigroupKind.PO: ("partial", "order"),
    SemigroupKind.C: ("permutation", "preserving"),
    SemigroupKind.D2: ("permutation", "oriented"),
    SemigroupKind.T: ("full", "any"),
    SemigroupKind.I: ("injective", "any"),
    SemigroupKind.PT: ("partial", "any"),
}

CLASSIFICATION_TARGETS = (
    SemigroupKind.OP,
    SemigroupKind.POPI,
    SemigroupKind.POP,
    SemigroupKind.OR,
    SemigroupKind.PORI,
    SemigroupKind.POR,
)


def expand_kinds(kinds):
    """Coerce kinds or tags, expanding "all" to the six oriented monoids.

    Examples::

        >>> expand_kinds(["or", "all"])[:2]
        (<SemigroupKind.OR: 'OR'>, <SemigroupKind.OP: 'OP'>)
        >>> len(expand_kinds("all"))
        6

    """
    if isinstance(kinds, (str, SemigroupKind)):
        kinds = [kinds]
    expanded = []
    for kind in kinds:
        if str(kind).lower() == "all":
            expanded.extend(CLASSIFICATION_TARGETS)
            continue
        kind = SemigroupKind.coerce(kind)
        if not kind.is_classification_target:
            raise DomainError(f"{kind} is not one of the oriented monoids")
        expanded.append(kind)
    return tuple(dict.fromkeys(expanded))


def _check_n(n):
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"Chain size must be a positive integer; got {n!r}")


# Predicate enumeration ------------------------------------------------


def _rotations(seq):
    return (seq[i:] + seq[:i] for i in range(max(len(seq), 1)))


def _image_sequences(kind, n, d):
    points = range(1, n + 1)
    injective = kind.is_injective
    orientation = kind.orientation
    if orientation == "any":
        if injective:
            yield from permutations(points, d)
        else:
            yield from cartesian_product(points, repeat=d)
        return
    monotone = combinations(points, d) if injective else None
    if monotone is None:
        monotone = combinations_with_replacement(points, d)
    for seq in monotone:
        if orientation == "order":
            yield seq
            continue
        for rotated in _rotations(seq):
            yield rotated
            if orientation == "oriented":
                yield rotated[::-1]


def _sequence_bound(kind, n, d):
    orientation = kind.orientation
    if orientation == "any":
        return perm(n, d) if kind.is_injective else n ** d
    count = comb(n, d) if kind.is_injective else comb(n + d - 1, d)
    if orientation == "preserving":
        count *= max(d, 1)
    elif orientation == "oriented":
        count *= 2 * max(d, 1)
    return count


def _domains(kind, n):
    points = tuple(range(1, n + 1))
    if kind.is_partial:
        for d in range(n + 1):
            yield from combinations(points, d)
    else:
        yield points


def predicate_bound(kind, n):
    """Upper bound on the candidates :func:`elements_by_predicate` generates."""
    kind = SemigroupKind.coerce(kind)
    return sum(_sequence_bound(kind, n, len(domain)) for domain in _domains(kind, n))


def elements_by_predicate(kind, n, limit=None):
    """All members of ``kind`` on a chain of size ``n``, in canonical order.

    Domains are chosen first; image sequences are then generated from
    monotone sequences by rotation (and reversal for oriented kinds).

    """
    kind = SemigroupKind.coerce(kind)
    _check_n(n)
    limit = settings.max_predicate_elements if limit is None else limit
    bound = predicate_bound(kind, n)
    if bound > limit:
        raise CapacityError(
            f"Enumerating {kind}_{n} would generate up to {bound} candidates "
            f"(limit: {limit})"
        )
    elements = set()
    for domain in _domains(kind, n):
        for seq in _image_sequences(kind, n, len(domain)):
            images = [None] * n
            for point, value in zip(domain, seq):
                images[point - 1] = value
            elements.add(PartialTransformation.trusted(tuple(images), n))
    return sorted(elements)


# Generators -----------------------------------------------------------


def rotation(n):
    """g: i -> i + 1, n -> 1"""
    return PartialTransformation([i % n + 1 for i in range(1, n + 1)], n)


def reflection(n):
    """h: i -> n - i + 1"""
    return PartialTransformation([n - i + 1 for i in range(1, n + 1)], n)


def collapse(n, i, up):
    """Rank n-1 order-preserving idempotent collapsing i and i+1."""
    images = list(range(1, n + 1))
    if up:
        images[i - 1] = i + 1
    else:
        images[i] = i
    return PartialTransformation(images, n)


def s1(n):
    """Fixes 1..n-2, sends n-1 to n, undefined at n."""
    images = list(range(1, n - 1)) + [n, None]
    return PartialTransformation(images, n)


def shifted_rotation(n):
    """Cycles 1..n-1 and is undefined at n."""
    images = [i + 1 for i in range(1, n - 1)] + [1, None]
    return PartialTransformation(images, n)


def _order_idempotents(n):
    return [collapse(n, i, up) for i in range(1, n) for up in (True, False)]


def _partial_identities(n):
    points = set(range(1, n + 1))
    return [partial_identity(n, points - {i}) for i in range(1, n + 1)]


def _poi_rank_n_minus_1(n):
    points = list(range(1, n + 1))
    gens = []
    for i in points:
        domain = [p for p in points if p != i]
        for j in points:
            image = [p for p in points if p != j]
            images = [None] * n
            for x, y in zip(domain, image):
                images[x - 1] = y
            gens.append(PartialTransformation(images, n))
    return gens


def _transposition(n):
    images = list(range(1, n + 1))
    images[0], images[1] = 2, 1
    return PartialTransformation(images, n)


def generator_set(kind, n, variant=None):
    """A generating set for ``kind`` on a chain of size ``n``.

    ``variant="g_n-1"`` selects the POPI generating pair {g, g_(n-1)},
    where g_(n-1) cycles 1..n-1; the default POPI pair is {g, s1}.

    """
    kind = SemigroupKind.coerce(kind)
    _check_n(n)
    K = SemigroupKind
    if variant not in (None, "s1", "g_n-1"):
        raise DomainError(f"Unknown generator variant: {variant}")
    if variant is not None and kind is not K.POPI:
        raise DomainError(f"Generator variants apply to POPI only, not {kind}")
    if (kind.is_classification_target or kind is K.D2) and n < 3:
        raise DomainError(f"{kind} generators require n >= 3; got {n}")
    if n == 1:
        gens = [identity(1)]
        if kind.is_partial:
            gens.append(empty(1))
        return gens

    g = rotation(n)
    h = reflection(n)
    if kind is K.C:
        gens = [g]
    elif kind is K.D2:
        gens = [g, h]
    elif kind is K.POPI:
        gens = [g, shifted_rotation(n) if variant == "g_n-1" else s1(n)]
    elif kind is K.PORI:
        gens = [g, h, s1(n)]
    elif kind is K.O:
        gens = [identity(n)] + _order_idempotents(n)
    elif kind is K.PO:
        gens = [identity(n)] + _order_idempotents(n) + _partial_identities(n)
    elif kind is K.POI:
        gens = [identity(n)] + _poi_rank_n_minus_1(n)
    elif kind is K.OP:
        gens = [g] + _order_idempotents(n)
    elif kind is K.POP:
        gens = [g] + _order_idempotents(n) + _partial_identities(n)
    elif kind is K.OR:
        gens = [g, h] + _order_idempotents(n)
    elif kind is K.POR:
        gens = [g, h] + _order_idempotents(n) + _partial_identities(n)
    else:
        t = _transposition(n)
        gens = [g, t]
        if kind in (K.T, K.PT):
            gens.append(collapse(n, 1, False))
        if kind in (K.I, K.PT):
            gens.append(partial_identity(n, range(1, n)))
    return list(dict.fromkeys(gens))


# Semigroups -----------------------------------------------------------


class FiniteSemigroup:

    """An enumerated semigroup of partial transformations.

    Elements are kept in canonical order; ``cayley[a, b]`` is the index
    of the product of elements ``a`` and ``b``. Instances are meant to
    be treated as frozen; derived data is computed lazily and cached.

    Args:
        kind (SemigroupKind|None): ``None`` for ad hoc monoids.
        n (int): Chain size.
        elements: Canonically ordered, pairwise distinct elements.
        cayley (numpy.ndarray): Square table of element indices.
        generators: Indices of the generating elements.

    """

    def __init__(self, kind, n, elements, cayley, generators=()):
        self.kind = kind
        self.n = n
        self.elements = tuple(elements)
        cayley.setflags(write=False)
        self.cayley = cayley
        self.generators = tuple(int(i) for i in generators)

    @classmethod
    def from_elements(cls, kind, n, elements, generators=(), limit=None):
        """Build the Cayley table for a set of elements closed under composition.

        Products are computed row by row with vectorized lookups; a
        product that is not among ``elements`` is an error.

        """
        elements = sorted(set(elements))
        size = len(elements)
        limit = settings.max_table_entries if limit is None else limit
        if size * size > limit:
            raise CapacityError(
                f"A Cayley table with {size}² entries exceeds the limit of {limit}"
            )
        entries = np.zeros((size, n + 1), dtype=np.int64)
        for i, t in enumerate(elements):
            entries[i, 1:] = [0 if v is None else v for v in t.images]
        weights = (n + 1) ** np.arange(n, dtype=np.int64)
        codes = entries[:, 1:] @ weights
        order = np.argsort(codes)
        sorted_codes = codes[order]
        cayley = np.empty((size, size), dtype=np.int32)
        for i in range(size):
            # row j of products is x -> entries[j, entries[i, x]], i.e. i·j
            products = entries[:, entries[i]][:, 1:] @ weights
            positions = np.searchsorted(sorted_codes, products)
            positions[positions == size] = 0
            found = order[positions]
            if not np.array_equal(codes[found], products):
                raise DomainError("Elements are not closed under composition")
            cayley[i] = found
        index = {t: i for i, t in enumerate(elements)}
        generator_indices = [index[t] for t in generators if t in index]
        if len(generator_indices) != len(generators):
            raise DomainError("Generators must be elements of the semigroup")
        semigroup = cls(kind, n, elements, cayley, generator_indices)
        semigroup.__dict__["index"] = index
        semigroup.__dict__["entries"] = entries
        return semigroup

    @cached_property
    def index(self):
        return {t: i for i, t in enumerate(self.elements)}

    @cached_property
    def entries(self):
        entries = np.zeros((len(self), self.n + 1), dtype=np.int64)
        for i, t in enumerate(self.elements):
            entries[i, 1:] = [0 if v is None else v for v in t.images]
        return entries

    @cached_property
    def label(self):
        name = "S" if self.kind is None else str(self.kind)
        return f"{name}_{self.n}"

    @cached_property
    def identity(self):
        """Index of the identity element or ``None``."""
        return self.index.get(identity(self.n))

    @cached_property
    def zero(self):
        """Index of the empty transformation or ``None``."""
        return self.index.get(empty(self.n))

    @cached_property
    def ranks(self):
        return np.array([t.rank for t in self.elements], dtype=np.int64)

    @cached_property
    def idempotents(self):
        diagonal = self.cayley[np.arange(len(self)), np.arange(len(self))]
        return np.flatnonzero(diagonal == np.arange(len(self)))

    @cached_property
    def units(self):
        """Indices of the rank-n elements (the group of units)."""
        return np.flatnonzero(self.ranks == self.n)

    @cached_property
    def unit_words(self):
        """Unit index => (r, i) where the unit is g^i (r = 0) or hg^i (r = 1)."""
        n = self.n
        g = self.index_of(rotation(n))
        words = {}
        x = self.identity
        for i in range(n):
            words[x] = (0, i)
            x = self.mul(x, g)
        reflections = self.kind is not None and self.kind.has_reflections
        if reflections:
            h = self.index_of(reflection(n))
            x = h
            for i in range(n):
                words[x] = (1, i)
                x = self.mul(x, g)
        if len(words) != len(self.units):
            raise DomainError(f"The units of {self.label} are not generated by g, h")
        return words

    @cached_property
    def green(self):
        from .green import green_data

        return green_data(self)

    def mul(self, a, b):
        return int(self.cayley[a, b])

    def power(self, a, m):
        if m < 1:
            raise DomainError(f"Power must be at least 1; got {m}")
        result = a
        for _ in range(m - 1):
            result = self.cayley[result, a]
        return int(result)

    def index_of(self, t):
        try:
            return self.index[t]
        except KeyError:
            raise DomainError(f"{t} is not an element of {self.label}") from None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __contains__(self, t):
        return t in self.index

    def is_associative(self):
        table = self.cayley
        for a in range(len(self)):
            # [b, c] => (ab)c and a(bc)
            if not np.array_equal(table[table[a]], table[a][table]):
                return False
        return True

    def to_json(self):
        return {
            "kind": None if self.kind is None else str(self.kind),
            "n": self.n,
            "elements": [list(t.images) for t in self.elements],
            "generators": list(self.generators),
        }

    def __repr__(self):
        return f"FiniteSemigroup({self.label}, size={len(self)})"


def closure(n, generators, kind=None, limit=None):
    """The semigroup generated by ``generators`` (breadth-first)."""
    _check_n(n)
    gens = list(dict.fromkeys(generators))
    if not gens:
        raise DomainError("At least one generator is required")
    for a in gens:
        if a.n != n:
            raise DomainError(f"Generator {a} is not on a chain of size {n}")
    limit = settings.max_table_entries if limit is None else limit
    seen = set(gens)
    queue = deque(gens)
    while queue:
        x = queue.popleft()
        for a in gens:
            y = compose(x, a)
            if y not in seen:
                seen.add(y)
                queue.append(y)
                if len(seen) ** 2 > limit:
                    raise CapacityError(
                        f"Closure grew past {len(seen)} elements; its Cayley "
                        f"table would exceed {limit} entries"
                    )
    return FiniteSemigroup.from_elements(kind, n, seen, gens, limit=limit)


def build(kind, n, method="closure", variant=None):
    """Build the monoid ``kind`` on a chain of size ``n``.

    Args:
        method: ``"closure"`` generates from :func:`generator_set`;
            ``"predicate"`` enumerates members directly.

    """
    kind = SemigroupKind.coerce(kind)
    gens = generator_set(kind, n, variant)
    if method == "closure":
        return closure(n, gens, kind)
    if method == "predicate":
        elements = elements_by_predicate(kind, n)
        return FiniteSemigroup.from_elements(kind, n, elements, gens)
    raise DomainError(f"Unknown build method: {method}")


def subsemigroup(S, generators):
    """Sorted indices of the subsemigroup of ``S`` generated by ``generators``."""
    gens = list(dict.fromkeys(int(a) for a in generators))
    seen = set(gens)
    queue = deque(gens)
    table = S.cayley
    while queue:
        x = queue.popleft()
        for a in gens:
            y = int(table[x, a])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return tuple(sorted(seen))


def e_set(S, e):
    """Idempotents f of ``S`` with ef = fe = f."""
    table = S.cayley
    return tuple(
        int(f) for f in S.idempotents if table[e, f] == f and table[f, e] == f
    )


def is_regular(S):
    """Does every element s have some x with sxs = s?"""
    table = S.cayley
    for s in range(len(S)):
        if not np.any(table[table[s], s] == s):
            return False
    return True


def export_cayley(S, path):
    """Write the Cayley table as a little-endian row-major index matrix.

    The 16-byte header is the magic ``b"OMCT"`` followed by n, size, and
    the index width in bytes, each an unsigned 32-bit int.

    """
    size = len(S)
    width = 1 if size <= 1 << 8 else 2 if size <= 1 << 16 else 4
    header = CAYLEY_MAGIC + struct.pack("<III", S.n, size, width)
    body = S.cayley.astype(f"<u{width}").tobytes(order="C")
    path = Path(path)
    path.write_bytes(header + body)
    return path


def import_cayley(path):
    """Read a table written by :func:`export_cayley`.

    Returns:
        tuple: ``(n, table)``

    """
    data = Path(path).read_bytes()
    if len(data) < 16 or data[:4] != CAYLEY_MAGIC:
        raise DomainError(f"Not a Cayley table file: {path}")
    n, size, width = struct.unpack("<III", data[4:16])
    if width not in (1, 2, 4) or len(data) != 16 + size * size * width:
        raise DomainError(f"Corrupt Cayley table file: {path}")
    table = np.frombuffer(data, dtype=f"<u{width}", offset=16).reshape(size, size)
    return n, table.astype(np.int32)
