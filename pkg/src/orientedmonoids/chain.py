"""Partial transformations of the chain 1 < 2 < ... < n.

Maps act on the right: ``compose(a, b)`` sends ``x`` to ``(x a) b``.
Points and images are always 1-based; ``None`` marks a point outside
the domain.

"""
from dataclasses import dataclass

from cached_property import cached_property

from .exc import DomainError

__all__ = [
    "OrientationClass",
    "PartialTransformation",
    "classify_orientation",
    "compose",
    "constant",
    "empty",
    "fixed_point_profile",
    "from_images",
    "from_json",
    "identity",
    "is_anticyclic",
    "is_cyclic",
    "partial_identity",
    "power",
    "restrict",
    "structure",
    "to_json",
]


def _check_values(seq, n):
    for value in seq:
        if isinstance(value, bool) or not isinstance(value, int):
            raise DomainError(f"Expected a point of the chain; got {value!r}")
        if value < 1 or (n is not None and value > n):
            bound = "n" if n is None else n
            raise DomainError(f"Point {value} is outside the chain 1..{bound}")


def _count_wrapped(seq, predicate):
    t = len(seq)
    return sum(1 for i in range(t) if predicate(seq[i], seq[(i + 1) % t]))


def is_cyclic(seq, n=None):
    """Is the sequence cyclic?

    A sequence is cyclic when, read around the circle (the last value
    followed by the first), it goes down at most once.

    Examples::

        >>> is_cyclic([])
        True
        >>> is_cyclic([2, 3, 4, 1])
        True
        >>> is_cyclic([1, 3, 2])
        False
        >>> is_cyclic([1, 1, 1])
        True

    """
    _check_values(seq, n)
    return _count_wrapped(seq, lambda a, b: a > b) <= 1


def is_anticyclic(seq, n=None):
    """Is the sequence anti-cyclic (goes up at most once around the circle)?

    Examples::

        >>> is_anticyclic([1, 3, 2])
        True
        >>> is_anticyclic([1, 1, 1])
        True
        >>> is_anticyclic([2, 3, 4, 1])
        False

    """
    _check_values(seq, n)
    return _count_wrapped(seq, lambda a, b: a < b) <= 1


@dataclass(frozen=True)
class OrientationClass:

    order_preserving: bool
    order_reversing: bool
    orientation_preserving: bool
    orientation_reversing: bool

    @property
    def oriented(self):
        return self.orientation_preserving or self.orientation_reversing

    @property
    def monotone(self):
        return self.order_preserving or self.order_reversing


class PartialTransformation:

    """A partial self-map of the chain {1, ..., n}.

    Args:
        images: ``images[i - 1]`` is the image of ``i`` or ``None`` when
            ``i`` is not in the domain.
        n (int): Size of the chain; defaults to ``len(images)``.

    Instances are immutable and hashable; ordering is the canonical
    element order (lexicographic on the images with undefined points
    sorting after every defined value).

    """

    def __init__(self, images, n=None):
        images = tuple(images)
        n = len(images) if n is None else n
        if n < 1:
            raise DomainError("A chain must have at least one point")
        if len(images) != n:
            raise DomainError(f"Expected {n} images; got {len(images)}")
        _check_values([v for v in images if v is not None], n)
        self.n = n
        self.images = images

    @classmethod
    def trusted(cls, images, n):
        """Skip validation (for images produced by composition)."""
        obj = cls.__new__(cls)
        obj.n = n
        obj.images = images
        return obj

    def __call__(self, x):
        return self.images[x - 1]

    def __mul__(self, other):
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, PartialTransformation):
            return NotImplemented
        return self.n == other.n and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    @cached_property
    def sort_key(self):
        undefined = self.n + 1
        return tuple(undefined if v is None else v for v in self.images)

    @cached_property
    def domain(self):
        return frozenset(i for i, v in enumerate(self.images, 1) if v is not None)

    @cached_property
    def image(self):
        return frozenset(v for v in self.images if v is not None)

    @cached_property
    def rank(self):
        return len(self.image)

    @cached_property
    def kernel(self):
        """Partition of the domain by equal images, ordered by least point."""
        classes = {}
        for i, v in enumerate(self.images, 1):
            if v is not None:
                classes.setdefault(v, []).append(i)
        return tuple(sorted((frozenset(c) for c in classes.values()), key=min))

    @cached_property
    def fixed_points(self):
        return frozenset(i for i, v in enumerate(self.images, 1) if v == i)

    @property
    def is_full(self):
        return None not in self.images

    @property
    def is_injective(self):
        return len(self.domain) == self.rank

    @property
    def is_permutation(self):
        return self.is_full and self.rank == self.n

    @cached_property
    def is_idempotent(self):
        return self.fixed_points == self.image

    @cached_property
    def image_sequence(self):
        """Images read along the sorted domain."""
        return tuple(v for v in self.images if v is not None)

    @cached_property
    def orientation(self):
        return classify_orientation(self)

    def to_json(self):
        return to_json(self)

    def __repr__(self):
        return f"{self.__class__.__name__}({list(self.images)!r})"

    def __str__(self):
        return "[" + " ".join("-" if v is None else str(v) for v in self.images) + "]"


def from_images(images, n=None):
    return PartialTransformation(images, n)


def identity(n):
    return PartialTransformation(range(1, n + 1), n)


def empty(n):
    return PartialTransformation((None,) * n, n)


def partial_identity(n, points):
    """Identity restricted to ``points``.

    Examples::

        >>> str(partial_identity(4, {2, 3}))
        '[- 2 3 -]'

    """
    return restrict(identity(n), points)


def constant(n, value, points=None):
    points = range(1, n + 1) if points is None else points
    points = set(points)
    _check_values(points, n)
    return PartialTransformation(
        (value if i in points else None for i in range(1, n + 1)), n
    )


def compose(a, b):
    """Right action product: ``x (a b) = (x a) b``.

    Examples::

        >>> g = PartialTransformation([2, 3, 1])
        >>> h = PartialTransformation([3, 2, 1])
        >>> str(compose(g, h))
        '[2 1 3]'
        >>> compose(empty(3), g) == empty(3)
        True

    """
    if a.n != b.n:
        raise DomainError(f"Cannot compose maps on chains of size {a.n} and {b.n}")
    b_images = b.images
    images = tuple(None if x is None else b_images[x - 1] for x in a.images)
    return PartialTransformation.trusted(images, a.n)


def power(t, m):
    if m < 1:
        raise DomainError(f"Power must be at least 1; got {m}")
    result = t
    for _ in range(m - 1):
        result = compose(result, t)
    return result


def restrict(t, points):
    """Restrict ``t`` to the points of ``points`` in its domain."""
    points = set(points)
    return PartialTransformation.trusted(
        tuple(v if i in points else None for i, v in enumerate(t.images, 1)), t.n
    )


def classify_orientation(t):
    seq = t.image_sequence
    pairs = list(zip(seq, seq[1:]))
    return OrientationClass(
        order_preserving=all(a <= b for a, b in pairs),
        order_reversing=all(a >= b for a, b in pairs),
        orientation_preserving=is_cyclic(seq),
        orientation_reversing=is_anticyclic(seq),
    )


class Structure:

    __slots__ = ("domain", "image", "rank", "kernel", "fixed_points", "is_idempotent")

    def __init__(self, t):
        self.domain = t.domain
        self.image = t.image
        self.rank = t.rank
        self.kernel = t.kernel
        self.fixed_points = t.fixed_points
        self.is_idempotent = t.is_idempotent

    def __iter__(self):
        return iter(getattr(self, name) for name in self.__slots__)

    def __repr__(self):
        fields = ", ".join(f"{name}={getattr(self, name)!r}" for name in self.__slots__)
        return f"Structure({fields})"


def structure(t):
    """Domain, image, rank, kernel, fixed points, and idempotency of ``t``.

    Examples::

        >>> s = structure(PartialTransformation([3, 3, 3, None]))
        >>> s.rank, s.is_idempotent
        (1, True)
        >>> [sorted(c) for c in s.kernel]
        [[1, 2, 3]]

    """
    return Structure(t)


def fixed_point_profile(h0):
    """Describe an order-2 group element that reverses orientation.

    Writing Im(h0) = {i_1 < ... < i_k}, ``h0`` reverses both the block
    i_1..i_l and the block i_(l+1)..i_k.

    Returns:
        tuple: ``(k, l, number of fixed points)``

    Examples::

        >>> fixed_point_profile(PartialTransformation([3, 2, 1]))
        (3, 3, 1)
        >>> fixed_point_profile(PartialTransformation([2, 1, 4, 3]))
        (4, 2, 0)

    """
    image = sorted(h0.image)
    k = len(image)
    on_image = [h0(i) for i in image]
    if None in on_image or sorted(on_image) != image:
        raise DomainError(f"{h0} is not a group element")
    if any(h0(h0(i)) != i for i in image) or all(h0(i) == i for i in image):
        raise DomainError(f"{h0} does not have order 2")
    if k > 2 and is_cyclic(on_image):
        raise DomainError(f"{h0} preserves orientation")
    ell = image.index(on_image[0]) + 1
    fixed = sum(1 for i in image if h0(i) == i)
    return k, ell, fixed


def to_json(t):
    return {"n": t.n, "map": list(t.images)}


def from_json(obj):
    """Inverse of :func:`to_json`.

    Examples::

        >>> t = from_json({"n": 4, "map": [2, None, 1, 4]})
        >>> t(1), t(2), t(3)
        (2, None, 1)
        >>> to_json(t)
        {'n': 4, 'map': [2, None, 1, 4]}

    """
    try:
        n = obj["n"]
        images = obj["map"]
    except (KeyError, TypeError):
        raise DomainError(f"Expected an object with n and map; got {obj!r}") from None
    return PartialTransformation(images, n)
