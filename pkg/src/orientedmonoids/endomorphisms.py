"""Endomorphisms of the oriented transformation monoids.

There are seven families. Every endomorphism of OP_n, POPI_n, POP_n,
OR_n, PORI_n, or POR_n (n >= 3) belongs to exactly one of them:

T1  t -> sigma⁻¹ t sigma for sigma in D_2n (the automorphisms)
T2  phi_0 followed by conjugation by some sigma_(x,k) (partial kinds)
T3  units -> e, everything else -> f, for idempotents f < e
T4  g^i -> g0^i, everything else -> the empty map (POPI, POP)
T5  g^i -> g0^i, hg^i -> h0 g0^i, everything else -> empty (PORI, POR)
T6  units onto {h0², h0} in one of three ways, everything else -> f
T7  constant maps with idempotent value

"""
import enum
from collections import namedtuple

import numpy as np

from .chain import PartialTransformation, empty
from .exc import DomainError, PreconditionError, TheoremViolation
from .green import element_order
from .groups import Permutation, conjugate, dihedral_elements, normalizer_family
from .semigroup import SemigroupKind, build, e_set, reflection, rotation

__all__ = [
    "EndoTag",
    "EndoType",
    "Endomorphism",
    "KernelShape",
    "all_constructed",
    "automorphisms",
    "classify",
    "constructed_endomorphisms",
    "inner_auto",
    "is_endomorphism",
    "kernel_shape",
    "phi0",
    "phi0_image",
    "phi0_restricted",
    "phi_sigma",
    "type3",
    "type4",
    "type5",
    "type6",
    "type7",
    "type_census",
]

K = SemigroupKind
CYCLIC_IMAGE_KINDS = (K.POPI, K.POP)
DIHEDRAL_IMAGE_KINDS = (K.PORI, K.POR)
ORDER_TWO_IMAGE_KINDS = (K.OR, K.PORI, K.POR)
PARTIAL_KINDS = (K.POPI, K.POP, K.PORI, K.POR)
VARIANTS = ("a", "b", "c")


class EndoTag(enum.IntEnum):

    T1 = 1
    T2 = 2
    T3 = 3
    T4 = 4
    T5 = 5
    T6 = 6
    T7 = 7

    def __str__(self):
        return self.name


class EndoType:

    """A family tag plus the parameters that pick the member.

    Element parameters (e, f, g0, h0) are element indices; sigma is a
    :class:`Permutation`.

    """

    def __init__(self, tag, **params):
        self.tag = EndoTag(tag)
        self.params = params

    def _key(self):
        return self.tag, tuple(sorted(self.params.items()))

    def __eq__(self, other):
        if not isinstance(other, EndoType):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def to_json(self, S):
        params = {}
        for name, value in self.params.items():
            if isinstance(value, Permutation):
                value = list(value.images)
            elif name in ("e", "f", "g0", "h0"):
                value = list(S[value].images)
            params[name] = value
        return {"type": str(self.tag), "params": params}

    def __str__(self):
        params = ", ".join(f"{name}={value}" for name, value in self.params.items())
        return f"{self.tag}({params})"

    def __repr__(self):
        return f"EndoType({self})"


class Endomorphism:

    """A self-map of a semigroup given by an array of element indices.

    ``images[i]`` is the index of the image of element ``i``.

    """

    def __init__(self, semigroup, images, type=None):
        images = np.array(images, dtype=np.int32)
        if images.shape != (len(semigroup),):
            raise DomainError(
                f"Expected {len(semigroup)} images for {semigroup.label}; "
                f"got {images.shape[0]}"
            )
        images.setflags(write=False)
        self.semigroup = semigroup
        self.images = images
        self.type = type

    @property
    def tag(self):
        return None if self.type is None else self.type.tag

    @property
    def key(self):
        return self.images.tobytes()

    def __call__(self, i):
        return int(self.images[i])

    def apply(self, t):
        """Image of the transformation ``t``."""
        S = self.semigroup
        return S[self.images[S.index_of(t)]]

    def then(self, other):
        """Apply this endomorphism and then ``other``."""
        if other.semigroup is not self.semigroup:
            raise DomainError("Endomorphisms belong to different semigroups")
        return Endomorphism(self.semigroup, other.images[self.images])

    @property
    def is_bijective(self):
        return len(np.unique(self.images)) == len(self.images)

    def is_valid(self):
        return is_endomorphism(self.semigroup, self.images)

    def with_type(self, type):
        return Endomorphism(self.semigroup, self.images, type)

    def to_json(self):
        if self.type is None:
            obj = {"type": None, "params": {}}
        else:
            obj = self.type.to_json(self.semigroup)
        obj["images"] = self.images.tolist()
        return obj

    def __eq__(self, other):
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.semigroup is other.semigroup and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        type = "unclassified" if self.type is None else str(self.type)
        return f"Endomorphism({self.semigroup.label}, {type})"


def is_endomorphism(S, images):
    """Does images[ab] = images[a] images[b] hold for every pair?"""
    images = np.asarray(images)
    if images.shape != (len(S),):
        return False
    table = S.cayley
    return bool(np.array_equal(images[table], table[np.ix_(images, images)]))


def _require(condition, reason, message):
    if not condition:
        raise PreconditionError(reason, message)


def _require_kind(S, kinds, what):
    _require(
        S.kind in kinds,
        "kind",
        f"{what} endomorphisms exist only for {', '.join(map(str, kinds))}; "
        f"got {S.label}",
    )


def _require_idempotent(S, e):
    _require(S.mul(e, e) == e, "not-idempotent", f"{S[e]} is not an idempotent")


def _powers(S, x, p):
    """[x^0, x, ..., x^(p-1)] where x^0 is the identity of x's group."""
    e0 = S.power(x, p)
    powers = [e0]
    for _ in range(p - 1):
        powers.append(S.mul(powers[-1], x))
    return powers


def _from_units(S, unit_image, rest):
    """Images from a function of unit words and a single image for the rest."""
    images = np.full(len(S), rest, dtype=np.int32)
    for unit, word in S.unit_words.items():
        images[unit] = unit_image(*word)
    return images


# phi_0 -----------------------------------------------------------------


def phi0_image(t):
    """phi_0 on a single partial transformation.

    Rank n maps are fixed. A rank n-1 injective map with domain missing
    i and image missing j goes to the one-point map i -> j. A rank n-1
    full map collapsing {i, j} with image missing k goes to {i, j} -> k.
    Everything else goes to the empty map.

    Examples::

        >>> str(phi0_image(PartialTransformation([1, 3, 4, None])))
        '[- - - 2]'
        >>> str(phi0_image(PartialTransformation([1, 1, 2, 4])))
        '[3 3 - -]'

    """
    n = t.n
    points = set(range(1, n + 1))
    if t.rank == n:
        return t
    if t.rank == n - 1:
        (missing_image,) = points - t.image
        images = [None] * n
        if t.is_injective:
            (missing_point,) = points - t.domain
            images[missing_point - 1] = missing_image
        else:
            (pair,) = [c for c in t.kernel if len(c) == 2]
            for point in pair:
                images[point - 1] = missing_image
        return PartialTransformation(images, n)
    return empty(n)


def phi0_restricted(S):
    """phi_0 restricted to ``S``; ``S`` must be closed under phi_0."""
    images = [S.index_of(phi0_image(t)) for t in S]
    return Endomorphism(S, images)


def phi0(n):
    """phi_0 as an endomorphism of PT_n."""
    if n < 3:
        raise DomainError(f"phi_0 is defined here for n >= 3; got {n}")
    return phi0_restricted(build(K.PT, n))


# Constructors ----------------------------------------------------------


def inner_auto(S, sigma):
    """T1: t -> sigma⁻¹ t sigma."""
    sigma = Permutation.of(sigma)
    images = []
    for t in S:
        conjugated = conjugate(t, sigma)
        if conjugated not in S:
            raise DomainError(f"Conjugating by {sigma} leaves {S.label}")
        images.append(S.index[conjugated])
    return Endomorphism(S, images, EndoType(EndoTag.T1, sigma=sigma))


def phi_sigma(S, sigma):
    """T2: phi_0 restricted to ``S`` followed by conjugation by ``sigma``."""
    _require_kind(S, PARTIAL_KINDS, "Type 2")
    sigma = Permutation.of(sigma)
    _require(
        sigma in normalizer_family(S.n),
        "not-normalizing",
        f"{sigma} does not normalize C_{S.n}",
    )
    images = [S.index_of(conjugate(phi0_image(t), sigma)) for t in S]
    return Endomorphism(S, images, EndoType(EndoTag.T2, sigma=sigma))


def type3(S, e, f):
    """T3: units -> e, every other element -> f."""
    e, f = int(e), int(f)
    _require_idempotent(S, e)
    _require_idempotent(S, f)
    _require(e != f, "e-equals-f", "e and f must be distinct")
    _require(
        S.mul(e, f) == f and S.mul(f, e) == f,
        "not-below",
        f"{S[f]} is not below {S[e]}",
    )
    images = np.full(len(S), f, dtype=np.int32)
    images[S.units] = e
    return Endomorphism(S, images, EndoType(EndoTag.T3, e=e, f=f))


def _group_order(S, x, what):
    order = element_order(S, x)
    _require(order is not None, "not-group-element", f"{what} is not a group element")
    return order


def type4(S, g0):
    """T4: g^i -> g0^i, the ideal I_(n-1) -> empty map."""
    _require_kind(S, CYCLIC_IMAGE_KINDS, "Type 4")
    g0 = int(g0)
    p = _group_order(S, g0, "g0")
    _require(
        p > 1 and S.n % p == 0,
        "order-not-dividing",
        f"g0 has order {p}, which is not a divisor of {S.n} greater than 1",
    )
    powers = _powers(S, g0, p)
    images = _from_units(S, lambda r, i: powers[i % p], S.zero)
    return Endomorphism(S, images, EndoType(EndoTag.T4, g0=g0, p=p))


def type5(S, g0, h0):
    """T5: g^i -> g0^i, hg^i -> h0 g0^i, the ideal I_(n-1) -> empty map."""
    _require_kind(S, DIHEDRAL_IMAGE_KINDS, "Type 5")
    g0, h0 = int(g0), int(h0)
    p = _group_order(S, g0, "g0")
    _require(
        p > 1 and S.n % p == 0,
        "order-not-dividing",
        f"g0 has order {p}, which is not a divisor of {S.n} greater than 1",
    )
    _require(
        S.green.h_related(g0, h0), "not-same-h-class", "g0 and h0 are not H-related"
    )
    _require(
        _group_order(S, h0, "h0") == 2, "not-order-two", "h0 does not have order 2"
    )
    powers = _powers(S, g0, p)
    _require(
        h0 not in powers and S.mul(g0, h0) == S.mul(h0, powers[p - 1]),
        "not-dihedral",
        "g0 and h0 do not generate a dihedral group of order 2p",
    )
    images = _from_units(
        S,
        lambda r, i: S.mul(h0, powers[i % p]) if r else powers[i % p],
        S.zero,
    )
    return Endomorphism(S, images, EndoType(EndoTag.T5, g0=g0, h0=h0, p=p))


def type6(S, h0, f, variant):
    """T6: the units go onto {h0², h0}; every other element -> f.

    (a) g^i -> h0², hg^i -> h0
    (b) g^i -> h0^i, hg^i -> h0^i (n even)
    (c) g^i -> h0^i, hg^i -> h0^(i+1) (n even)

    """
    _require_kind(S, ORDER_TWO_IMAGE_KINDS, "Type 6")
    h0, f = int(h0), int(f)
    _require(variant in VARIANTS, "unknown-variant", f"Unknown variant: {variant}")
    _require(
        variant == "a" or S.n % 2 == 0,
        "variant-needs-even-n",
        f"Variant {variant} requires an even n",
    )
    _require(
        _group_order(S, h0, "h0") == 2, "not-order-two", "h0 does not have order 2"
    )
    _require_idempotent(S, f)
    _require(
        S.mul(h0, f) == f and S.mul(f, h0) == f,
        "not-below",
        f"{S[f]} is not absorbed by h0",
    )
    _require(S.ranks[f] <= 2, "rank-too-large", "f must have rank at most 2")
    powers = (S.mul(h0, h0), h0)
    if variant == "a":
        unit_image = lambda r, i: powers[r]  # noqa: E731
    elif variant == "b":
        unit_image = lambda r, i: powers[i % 2]  # noqa: E731
    else:
        unit_image = lambda r, i: powers[(i + r) % 2]  # noqa: E731
    images = _from_units(S, unit_image, f)
    return Endomorphism(S, images, EndoType(EndoTag.T6, h0=h0, f=f, variant=variant))


def type7(S, e):
    """T7: the constant map with idempotent value ``e``."""
    e = int(e)
    _require_idempotent(S, e)
    images = np.full(len(S), e, dtype=np.int32)
    return Endomorphism(S, images, EndoType(EndoTag.T7, e=e))


# Families ----------------------------------------------------------------


def _check_target(S):
    if S.kind is None or not S.kind.is_classification_target:
        raise DomainError(f"{S.label} is not one of the oriented monoids")
    if S.n < 3:
        raise DomainError(f"Classification requires n >= 3; got {S.n}")


def _group_elements_by_order(S):
    orders = {}
    for s in range(len(S)):
        if S.green.is_group_element(s):
            orders[s] = element_order(S, s)
    return orders


def constructed_endomorphisms(S):
    """Every T1-T7 map over all valid parameters (may repeat a map)."""
    _check_target(S)
    n = S.n
    kind = S.kind
    idempotents = [int(e) for e in S.idempotents]
    orders = _group_elements_by_order(S)

    for sigma in dihedral_elements(n):
        yield inner_auto(S, sigma)
    if kind in PARTIAL_KINDS:
        for sigma in normalizer_family(n):
            yield phi_sigma(S, sigma)
    for e in idempotents:
        for f in e_set(S, e):
            if f != e:
                yield type3(S, e, f)
    if kind in CYCLIC_IMAGE_KINDS:
        for g0, p in orders.items():
            if p > 1 and n % p == 0:
                yield type4(S, g0)
    if kind in DIHEDRAL_IMAGE_KINDS:
        for g0, p in orders.items():
            if not (p > 1 and n % p == 0):
                continue
            for h0 in S.green.h_class(g0):
                if orders[h0] != 2:
                    continue
                try:
                    yield type5(S, g0, h0)
                except PreconditionError:
                    continue
    if kind in ORDER_TWO_IMAGE_KINDS:
        variants = VARIANTS if n % 2 == 0 else ("a",)
        for h0, p in orders.items():
            if p != 2:
                continue
            for f in idempotents:
                below = S.mul(h0, f) == f and S.mul(f, h0) == f
                if below and S.ranks[f] <= 2:
                    for variant in variants:
                        yield type6(S, h0, f, variant)
    for e in idempotents:
        yield type7(S, e)


def all_constructed(S):
    """Distinct T1-T7 maps, in canonical order (by image array)."""
    unique = {}
    for endo in constructed_endomorphisms(S):
        unique.setdefault(endo.key, endo)
    return sorted(unique.values(), key=lambda endo: endo.images.tolist())


def automorphisms(S, endomorphisms):
    """The bijective members of ``endomorphisms``."""
    return [endo for endo in endomorphisms if endo.is_bijective]


# Classification ----------------------------------------------------------


def _images_of(S, phi):
    if isinstance(phi, Endomorphism):
        return phi.images
    return np.asarray(phi, dtype=np.int32)


def _confirm(S, images, build_candidate):
    try:
        candidate = build_candidate()
    except PreconditionError as exc:
        raise TheoremViolation(
            f"Endomorphism of {S.label} fits no family ({exc})", images, S
        ) from None
    if not np.array_equal(candidate.images, images):
        raise TheoremViolation(
            f"Endomorphism of {S.label} differs from {candidate.type}", images, S
        )
    return candidate.type


def classify(S, phi):
    """Find the family and parameters of the endomorphism ``phi``.

    The family is read off the image structure; the parameters are
    then confirmed by rebuilding the map and comparing.

    Raises:
        TheoremViolation: ``phi`` matches no family.

    """
    _check_target(S)
    images = _images_of(S, phi)
    n = S.n
    kind = S.kind
    distinct = np.unique(images)

    if len(distinct) == 1:
        return _confirm(S, images, lambda: type7(S, distinct[0]))

    if len(distinct) == len(S):
        for sigma in dihedral_elements(n):
            candidate = inner_auto(S, sigma)
            if np.array_equal(candidate.images, images):
                return candidate.type
        raise TheoremViolation(f"Automorphism of {S.label} is not inner", images, S)

    rest = np.flatnonzero(S.ranks < n)
    rest_images = np.unique(images[rest])
    if len(rest_images) > 1:
        if kind in PARTIAL_KINDS:
            for sigma in normalizer_family(n):
                candidate = phi_sigma(S, sigma)
                if np.array_equal(candidate.images, images):
                    return candidate.type
        raise TheoremViolation(
            f"Endomorphism of {S.label} separates the proper ideal", images, S
        )

    f = int(rest_images[0])
    unit_images = np.unique(images[S.units])
    if len(unit_images) == 1:
        return _confirm(S, images, lambda: type3(S, unit_images[0], f))

    g_image = int(images[S.index_of(rotation(n))])
    if kind in CYCLIC_IMAGE_KINDS:
        return _confirm(S, images, lambda: type4(S, g_image))

    h_image = int(images[S.index_of(reflection(n))])
    if len(unit_images) == 2:
        e0, h0 = sorted(unit_images, key=lambda u: S.mul(u, u) != u)
        e0, h0 = int(e0), int(h0)
        variant = {(e0, h0): "a", (h0, e0): "b", (h0, h0): "c"}.get(
            (g_image, h_image)
        )
        return _confirm(S, images, lambda: type6(S, h0, f, variant))
    return _confirm(S, images, lambda: type5(S, g_image, h_image))


def type_census(S, endomorphisms):
    """Count endomorphisms per family: {"T1": ..., ..., "T7": ...}."""
    census = {str(tag): 0 for tag in EndoTag}
    for endo in endomorphisms:
        endo_type = endo.type if endo.type is not None else classify(S, endo)
        census[str(endo_type.tag)] += 1
    return census


# Kernels -----------------------------------------------------------------


KernelShape = namedtuple("KernelShape", "k collapses_ideal within_h_only")
KernelShape.__doc__ = """Shape of the kernel of an endomorphism.

``k is None`` stands for the universal congruence. Otherwise the
elements of rank below ``k`` form one class, elements of rank above
``k`` are alone in their classes, and classes meeting J_k stay inside
J_k and inside a single H-class.

"""
KernelShape.universal = property(lambda self: self.k is None)

UNIVERSAL = KernelShape(None, True, False)


def kernel_shape(S, phi):
    """The kernel of ``phi`` as a :class:`KernelShape`, using the least k.

    Raises:
        TheoremViolation: The kernel has none of the allowed shapes.

    """
    images = _images_of(S, phi)
    if len(np.unique(images)) == 1:
        return UNIVERSAL
    ranks = S.ranks
    h_ids = S.green.h_ids
    class_sizes = np.bincount(images, minlength=len(S))[images]
    for k in range(1, S.n + 1):
        below = ranks < k
        at = ranks == k
        above = ranks > k
        if np.any(class_sizes[above] != 1):
            continue
        below_count = int(below.sum())
        if below_count:
            below_images = np.unique(images[below])
            if len(below_images) != 1 or class_sizes[below][0] != below_count:
                continue
        within_h = True
        for value in np.unique(images[at]):
            members = np.flatnonzero(images == value)
            if not (np.all(at[members]) and len(np.unique(h_ids[members])) == 1):
                within_h = False
                break
        if within_h:
            return KernelShape(k, below_count > 1, True)
    raise TheoremViolation(
        f"Kernel of endomorphism of {S.label} has no allowed shape", images, S
    )
