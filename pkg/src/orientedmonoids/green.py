"""Green's relations, ideals, idempotents, and group H-classes."""
from collections import namedtuple

import numpy as np
from cached_property import cached_property

from .exc import DomainError
from .util import intern_keys

__all__ = [
    "GreenData",
    "HClassGroup",
    "element_order",
    "find_idempotent_family",
    "green_data",
    "green_from_table",
    "group_h_class",
    "idempotents_of_rank",
    "ideal",
    "identify_group",
    "partitions_agree",
]


class GreenData:

    """Per-element fingerprints and L/R/H/J class ids.

    The fingerprint ids (image, kernel, domain) are only set when the
    data was derived from the elements themselves; data derived from a
    Cayley table alone carries class ids only.

    """

    def __init__(self, ranks, l_ids, r_ids, j_ids, idempotents, **fingerprints):
        self.ranks = np.asarray(ranks)
        self.l_ids = np.asarray(l_ids)
        self.r_ids = np.asarray(r_ids)
        self.h_ids = np.asarray(intern_keys(zip(l_ids, r_ids)))
        self.j_ids = np.asarray(j_ids)
        self.idempotents = frozenset(int(e) for e in idempotents)
        self.image_ids = fingerprints.get("image_ids")
        self.kernel_ids = fingerprints.get("kernel_ids")
        self.domain_ids = fingerprints.get("domain_ids")

    @cached_property
    def h_classes(self):
        classes = {}
        for i, h in enumerate(self.h_ids):
            classes.setdefault(int(h), []).append(i)
        return {h: tuple(members) for h, members in classes.items()}

    @cached_property
    def group_h_ids(self):
        return frozenset(int(self.h_ids[e]) for e in self.idempotents)

    @cached_property
    def j_classes(self):
        """J-class id => H-class ids in the J-class."""
        classes = {}
        for h, members in self.h_classes.items():
            j = int(self.j_ids[members[0]])
            classes.setdefault(j, []).append(h)
        return {j: tuple(hs) for j, hs in sorted(classes.items())}

    def h_class(self, s):
        return self.h_classes[int(self.h_ids[s])]

    def is_group_element(self, s):
        return int(self.h_ids[s]) in self.group_h_ids

    def l_related(self, s, t):
        return self.l_ids[s] == self.l_ids[t]

    def r_related(self, s, t):
        return self.r_ids[s] == self.r_ids[t]

    def h_related(self, s, t):
        return self.h_ids[s] == self.h_ids[t]

    def j_related(self, s, t):
        return self.j_ids[s] == self.j_ids[t]


def green_data(S):
    """Green's relations of ``S`` from element fingerprints.

    L-classes group equal images, R-classes equal kernels (equal domains
    for injective kinds), J-classes equal ranks.

    """
    elements = S.elements
    image_ids = intern_keys(t.image for t in elements)
    kernel_ids = intern_keys(t.kernel for t in elements)
    domain_ids = intern_keys(t.domain for t in elements)
    injective = S.kind is not None and S.kind.is_injective
    return GreenData(
        S.ranks,
        l_ids=image_ids,
        r_ids=domain_ids if injective else kernel_ids,
        j_ids=S.ranks,
        idempotents=S.idempotents,
        image_ids=image_ids,
        kernel_ids=kernel_ids,
        domain_ids=domain_ids,
    )


def green_from_table(S):
    """Green's relations of ``S`` from principal ideals in the Cayley table.

    This uses only the table (s L t iff S¹s = S¹t, and so on), so it is
    an independent check on :func:`green_data`.

    """
    table = S.cayley
    lefts, rights, twos = [], [], []
    for s in range(len(S)):
        left = frozenset(table[:, s].tolist()) | {s}
        right = frozenset(table[s, :].tolist()) | {s}
        two = frozenset(table[table[:, s], :].ravel().tolist()) | left | right
        lefts.append(left)
        rights.append(right)
        twos.append(two)
    return GreenData(
        S.ranks,
        l_ids=intern_keys(lefts),
        r_ids=intern_keys(rights),
        j_ids=intern_keys(twos),
        idempotents=S.idempotents,
    )


def partitions_agree(a, b):
    """Do two class-id labelings define the same partition?

    Examples::

        >>> partitions_agree([0, 0, 1], [5, 5, 2])
        True
        >>> partitions_agree([0, 0, 1], [0, 1, 1])
        False

    """
    return intern_keys(a) == intern_keys(b)


def _check_rank(S, k):
    if not 0 <= k <= S.n:
        raise DomainError(f"Rank must be in 0..{S.n}; got {k}")


def ideal(S, k):
    """Indices of the elements of rank at most ``k``."""
    _check_rank(S, k)
    return np.flatnonzero(S.ranks <= k)


def idempotents_of_rank(S, k):
    _check_rank(S, k)
    return [int(e) for e in S.idempotents if S.ranks[e] == k]


def element_order(S, s):
    """Order of ``s`` in its group H-class, or ``None`` for non-group elements.

    The powers of ``s`` are eventually periodic; ``s`` is a group element
    exactly when the period starts at ``s`` itself.

    """
    table = S.cayley
    seen = {}
    x = int(s)
    m = 1
    while x not in seen:
        seen[x] = m
        x = int(table[x, s])
        m += 1
    start = seen[x]
    if start != 1:
        return None
    return m - start


HClassGroup = namedtuple("HClassGroup", "identity elements structure order")


def identify_group(S, members):
    """Name the isomorphism type of a group inside ``S`` by element orders.

    Returns:
        str: ``"cyclic"``, ``"dihedral"``, or ``"other"``

    """
    members = tuple(int(m) for m in members)
    size = len(members)
    orders = {m: element_order(S, m) for m in members}
    if None in orders.values():
        raise DomainError("Not a group: contains a non-group element")
    if any(order == size for order in orders.values()):
        return "cyclic"
    if size % 2 == 0:
        half = size // 2
        for x, order in orders.items():
            if order != half:
                continue
            powers = {x}
            y = x
            for _ in range(half - 1):
                y = S.mul(y, x)
                powers.add(y)
            if all(orders[m] == 2 for m in members if m not in powers):
                return "dihedral"
    return "other"


def group_h_class(S, e):
    """The maximal subgroup with identity ``e``."""
    if S.mul(e, e) != e:
        raise DomainError(f"{S[e]} is not an idempotent")
    members = S.green.h_class(e)
    return HClassGroup(int(e), members, identify_group(S, members), len(members))


def find_idempotent_family(S, k, size=None, strict=False):
    """Find idempotents e_1, ..., e_m of rank ``k`` with small pairwise products.

    For every i < j, e_i e_j or e_j e_i must have rank below ``k``; with
    ``strict`` set, e_i e_j itself must. ``size`` defaults to n - 1.

    Returns:
        list|None: The family, or ``None`` if there is none.

    """
    n = S.n
    if not (n + 2) // 2 <= k <= n - 1:
        raise DomainError(f"Rank must be in {(n + 2) // 2}..{n - 1}; got {k}")
    size = n - 1 if size is None else size
    table = S.cayley
    low = S.ranks < k
    candidates = idempotents_of_rank(S, k)

    def fits(family, b):
        for a in family:
            if strict:
                if not low[table[a, b]]:
                    return False
            elif not (low[table[a, b]] or low[table[b, a]]):
                return False
        return True

    def extend(family, start):
        if len(family) == size:
            return family
        for position in range(start, len(candidates)):
            b = candidates[position]
            if fits(family, b):
                found = extend(family + [b], position + 1)
                if found is not None:
                    return found
        return None

    return extend([], 0)
