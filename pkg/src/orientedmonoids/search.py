"""Find every endomorphism of a finite semigroup by backtracking.

This search knows nothing about the endomorphism families; it only
uses the Cayley table and a generating set, so its results can be used
to check the classification.

Generators are assigned images one at a time. Adding a generator
extends the subsemigroup generated so far by a "level" of new
elements, each written as ``parent · generator``. Once the generator
has a candidate image, the images of the new elements follow, and every
product involving a new element is checked against the table.

"""
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from cached_property import cached_property

from .config import settings
from .endomorphisms import Endomorphism
from .exc import DomainError, SearchBudgetExceeded
from .green import element_order
from .util import printer

__all__ = [
    "HomomorphismSearch",
    "enumerate_endomorphisms",
]


class Level:

    """Elements that become reachable when a generator is added.

    Args:
        generator (int): Index of the generator.
        new (list): ``(element, parent, via)`` triples in BFS order,
            meaning element = parent · via. The generator itself comes
            first with ``parent = None``.
        closure (numpy.ndarray): Every element reachable after this
            level, old elements first.

    """

    def __init__(self, generator, new, closure):
        self.generator = generator
        self.new = new
        self.closure = closure
        self.new_elements = np.array([x for x, _, _ in new], dtype=np.int64)
        self.old_elements = closure[: len(closure) - len(new)]


class HomomorphismSearch:
    def __init__(self, semigroup, debug=False):
        self.semigroup = semigroup
        self.debug = debug

    @cached_property
    def orders(self):
        S = self.semigroup
        return np.array(
            [
                element_order(S, s) if S.green.is_group_element(s) else 0
                for s in range(len(S))
            ],
            dtype=np.int64,
        )

    @cached_property
    def generators(self):
        """Generators ordered units first, then idempotents, then the rest."""
        S = self.semigroup
        if not S.generators:
            raise DomainError(f"{S.label} has no generating set")
        units = set(int(u) for u in S.units)
        idempotents = set(int(e) for e in S.idempotents)

        def strength(position):
            a = S.generators[position]
            if a in units:
                group = 0
            elif a in idempotents:
                group = 1
            else:
                group = 2
            return group, position

        ordered = sorted(range(len(S.generators)), key=strength)
        return [S.generators[position] for position in ordered]

    @cached_property
    def levels(self):
        S = self.semigroup
        table = S.cayley
        reached = np.zeros(len(S), dtype=bool)
        closure = []
        levels = []
        gens = []
        for a in self.generators:
            if reached[a]:
                # already generated, so its image is forced
                continue
            gens.append(a)
            reached[a] = True
            new = [(a, None, None)]
            pending = deque((x, a) for x in closure)
            pending.extend((a, b) for b in gens)
            while pending:
                parent, via = pending.popleft()
                y = int(table[parent, via])
                if not reached[y]:
                    reached[y] = True
                    new.append((y, parent, via))
                    pending.extend((y, b) for b in gens)
            closure = closure + [x for x, _, _ in new]
            levels.append(Level(a, new, np.array(closure, dtype=np.int64)))
        if len(closure) != len(S):
            raise DomainError(f"The generators of {S.label} do not generate it")
        if self.debug:
            sizes = ", ".join(str(len(level.new)) for level in levels)
            printer.debug(f"Search levels for {S.label}: {sizes}")
        return levels

    def candidates(self, a):
        """Possible images of the generator ``a``.

        A group element of order m can only go to a group element whose
        order divides m, and an idempotent only to an idempotent.

        """
        S = self.semigroup
        orders = self.orders
        m = orders[a]
        if S.mul(a, a) == a:
            return [int(e) for e in S.idempotents]
        if m:
            fits = (orders > 0) & (m % np.maximum(orders, 1) == 0)
            return [int(s) for s in np.flatnonzero(fits)]
        return list(range(len(S)))

    def _extend(self, level, images, candidate):
        """Fill in the level's images; return False on a conflict."""
        table = self.semigroup.cayley
        images[level.generator] = candidate
        for x, parent, via in level.new[1:]:
            images[x] = table[images[parent], images[via]]
        new = level.new_elements
        closure = level.closure
        old = level.old_elements
        if not np.array_equal(
            images[table[np.ix_(new, closure)]],
            table[np.ix_(images[new], images[closure])],
        ):
            return False
        if len(old) and not np.array_equal(
            images[table[np.ix_(old, new)]],
            table[np.ix_(images[old], images[new])],
        ):
            return False
        return True

    def run(self, budget=None, first=None):
        """Find all endomorphisms.

        Args:
            budget (float): Wall-clock budget in seconds.
            first (list): Restrict the first generator's images to these
                candidates (used to split the search across workers).

        Returns:
            list: Image arrays, in no particular order.

        Raises:
            SearchBudgetExceeded: The budget ran out.

        """
        S = self.semigroup
        budget = settings.resolve_budget(budget)
        start = time.monotonic()
        deadline = start + budget
        levels = self.levels
        images = np.full(len(S), -1, dtype=np.int64)
        found = []

        def descend(depth):
            if depth == len(levels):
                found.append(images.copy())
                return
            if time.monotonic() > deadline:
                raise SearchBudgetExceeded(
                    budget, time.monotonic() - start, len(found)
                )
            level = levels[depth]
            options = self.candidates(level.generator)
            if depth == 0 and first is not None:
                options = [c for c in options if c in first]
            for candidate in options:
                if self._extend(level, images, candidate):
                    descend(depth + 1)

        descend(0)
        if self.debug:
            elapsed = time.monotonic() - start
            printer.debug(
                f"Found {len(found)} endomorphisms of {S.label} in {elapsed:.2f}s"
            )
        return found


def _search_branch(semigroup, first, budget):
    return HomomorphismSearch(semigroup).run(budget, first=first)


def enumerate_endomorphisms(S, budget=None, workers=None, debug=False):
    """All endomorphisms of ``S`` in canonical order (by image array).

    With ``workers > 1`` the first generator's candidate images are
    split across a process pool; the merged result does not depend on
    the number of workers.

    """
    budget = settings.resolve_budget(budget)
    workers = settings.workers if workers is None else workers
    search = HomomorphismSearch(S, debug=debug)
    if workers > 1:
        first = search.candidates(search.levels[0].generator)
        chunks = [first[i::workers] for i in range(workers)]
        chunks = [chunk for chunk in chunks if chunk]
        if debug:
            printer.debug(f"Splitting {len(first)} candidates over {workers} workers")
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [
                executor.submit(_search_branch, S, chunk, budget) for chunk in chunks
            ]
            found = [images for future in futures for images in future.result()]
    else:
        found = search.run(budget)
    found.sort(key=lambda images: images.tolist())
    return [Endomorphism(S, images) for images in found]
