"""The rotation group C_n and the dihedral group D_2n as permutations.

Also: the permutations sigma_(x,k), normalizers in S_n, and the
endomorphisms of C_n and D_2n.

"""
from itertools import permutations
from math import gcd

from cached_property import cached_property
from sympy import totient as euler_phi

from .chain import PartialTransformation, compose, identity
from .exc import CapacityError, DomainError, TheoremViolation
from .semigroup import FiniteSemigroup, SemigroupKind, reflection, rotation
from .util import divisors

__all__ = [
    "GroupEndoReport",
    "NamedSubgroup",
    "Permutation",
    "conjugate",
    "cyclic_elements",
    "dihedral_elements",
    "dihedral_subgroup_order",
    "generate_group",
    "group_endomorphisms",
    "i1_extension",
    "inner_automorphism_group",
    "make_g",
    "make_h",
    "named_group_endomorphisms",
    "normalizer_family",
    "normalizer_in_sn",
    "permutation_order",
    "proper_normal_subgroups_d2n",
    "sigma_xk",
    "symmetric_group",
    "totient",
]

MAX_NORMALIZER_N = 8
MAX_INNER_AUTOMORPHISM_N = 6


class Permutation(PartialTransformation):

    """A bijection of the chain {1, ..., n}."""

    def __init__(self, images, n=None):
        super().__init__(images, n)
        if not self.is_permutation:
            raise DomainError(f"{self} is not a permutation")

    @classmethod
    def of(cls, t):
        return t if isinstance(t, cls) else cls(t.images, t.n)

    @cached_property
    def inverse(self):
        images = [0] * self.n
        for i, v in enumerate(self.images, 1):
            images[v - 1] = i
        return Permutation.trusted(tuple(images), self.n)

    def __mul__(self, other):
        product = compose(self, other)
        if isinstance(other, Permutation):
            return Permutation.trusted(product.images, self.n)
        return product

    def __pow__(self, m):
        result = identity_permutation(self.n)
        for _ in range(m % permutation_order(self)):
            result = result * self
        return result


def identity_permutation(n):
    return Permutation.of(identity(n))


def conjugate(t, sigma):
    """sigma⁻¹ t sigma"""
    product = compose(compose(sigma.inverse, t), sigma)
    if isinstance(t, Permutation):
        return Permutation.trusted(product.images, t.n)
    return product


def permutation_order(p):
    order = 1
    x = p
    one = identity(p.n)
    while x != one:
        x = compose(x, p)
        order += 1
    return order


def make_g(n):
    """The rotation g: i -> i + 1 (n -> 1)."""
    return Permutation.of(rotation(n))


def make_h(n):
    """The reflection h: i -> n - i + 1."""
    return Permutation.of(reflection(n))


def cyclic_elements(n):
    """[1, g, ..., g^(n-1)]"""
    g = make_g(n)
    elements = [identity_permutation(n)]
    for _ in range(n - 1):
        elements.append(elements[-1] * g)
    return elements


def dihedral_elements(n):
    """[1, g, ..., g^(n-1), h, hg, ..., hg^(n-1)]"""
    if n < 3:
        raise DomainError(f"D_2n is defined here for n >= 3; got {n}")
    h = make_h(n)
    rotations = cyclic_elements(n)
    return rotations + [h * r for r in rotations]


def symmetric_group(n):
    return [Permutation.trusted(p, n) for p in permutations(range(1, n + 1))]


def generate_group(generators):
    """Closure of a set of permutations under composition."""
    generators = list(generators)
    group = set(generators)
    frontier = list(generators)
    while frontier:
        new = []
        for x in frontier:
            for a in generators:
                y = x * a
                if y not in group:
                    group.add(y)
                    new.append(y)
        frontier = new
    return frozenset(group)


def totient(n):
    """Euler's totient.

    Examples::

        >>> totient(1), totient(6), totient(7)
        (1, 2, 6)

    """
    if n < 1:
        raise DomainError(f"Totient is defined for n >= 1; got {n}")
    return int(euler_phi(n))


class NamedSubgroup:
    def __init__(self, name, elements):
        self.name = name
        self.elements = frozenset(elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, p):
        return p in self.elements

    def __repr__(self):
        return f"NamedSubgroup({self.name}, order={len(self)})"


def proper_normal_subgroups_d2n(n):
    """<g^p> for each divisor p of n and, for even n, <g², h> and <g², hg>.

    Each subgroup is checked to be normal by conjugating it with every
    element of D_2n.

    """
    D = dihedral_elements(n)
    g = make_g(n)
    h = make_h(n)
    subgroups = [
        NamedSubgroup(f"<g^{p}>", generate_group([g ** p])) for p in divisors(n)
    ]
    if n % 2 == 0:
        subgroups.append(NamedSubgroup("<g^2,h>", generate_group([g ** 2, h])))
        subgroups.append(NamedSubgroup("<g^2,hg>", generate_group([g ** 2, h * g])))
    for subgroup in subgroups:
        for sigma in D:
            if {conjugate(x, sigma) for x in subgroup.elements} != subgroup.elements:
                raise TheoremViolation(f"{subgroup.name} is not normal in D_{2 * n}")
    return subgroups


def dihedral_subgroup_order(k, a, b):
    """Order of the subgroup of D_2k generated by ``a`` and ``b``.

    Elements are exponent pairs ``(r, i)`` standing for x^i (r = 0) or
    y x^i (r = 1), with x of order k and y of order 2.

    Examples::

        >>> dihedral_subgroup_order(6, (0, 2), (1, 0))
        6
        >>> dihedral_subgroup_order(6, (1, 1), (1, 4))
        4
        >>> dihedral_subgroup_order(4, (1, 3), (1, 3))
        2

    """
    (ra, i), (rb, j) = a, b
    if ra > rb:
        (ra, i), (rb, j) = (rb, j), (ra, i)
    if ra == 0 and rb == 0:
        return k // gcd(gcd(i, j), k)
    if ra == 0:
        return 2 * k // gcd(i, k)
    if i == j:
        return 2
    return 2 * k // gcd(abs(i - j), k)


def sigma_xk(n, x, k):
    """The permutation i -> x + (i - 1)k, reduced into 1..n.

    Examples::

        >>> str(sigma_xk(5, 2, 3))
        '[2 5 3 1 4]'

    """
    if not 1 <= x <= n:
        raise DomainError(f"x must be in 1..{n}; got {x}")
    if gcd(k, n) != 1:
        raise DomainError(f"k must be coprime to {n}; got {k}")
    return Permutation.trusted(
        tuple((x + (i - 1) * k - 1) % n + 1 for i in range(1, n + 1)), n
    )


def normalizer_family(n):
    """All sigma_(x,k) with x in 1..n and k in 1..n coprime to n."""
    return [
        sigma_xk(n, x, k)
        for x in range(1, n + 1)
        for k in range(1, n + 1)
        if gcd(k, n) == 1
    ]


def normalizer_in_sn(n, G):
    """{sigma in S_n : sigma⁻¹ G sigma = G}, by exhaustive search."""
    if n > MAX_NORMALIZER_N:
        raise CapacityError(
            f"Normalizer search is limited to n <= {MAX_NORMALIZER_N}; got {n}"
        )
    G = frozenset(G)
    return sorted(
        sigma
        for sigma in symmetric_group(n)
        if all(conjugate(x, sigma) in G for x in G)
    )


def inner_automorphism_group(S):
    """Permutations sigma with sigma⁻¹ s sigma in ``S`` for every s in ``S``."""
    if S.n > MAX_INNER_AUTOMORPHISM_N:
        raise CapacityError(
            f"Inner automorphism search is limited to n <= "
            f"{MAX_INNER_AUTOMORPHISM_N}; got {S.n}"
        )
    return sorted(
        sigma
        for sigma in symmetric_group(S.n)
        if all(conjugate(t, sigma) in S for t in S)
    )


def i1_extension(n, G, partial=True):
    """The monoid of rank <= 1 maps of PT_n (or I_n) together with ``G``."""
    points = range(1, n + 1)
    elements = set(G)
    if partial:
        elements.add(PartialTransformation((None,) * n, n))
        for value in points:
            for mask in range(1, 1 << n):
                domain = [p for p in points if mask & (1 << (p - 1))]
                images = [value if p in domain else None for p in points]
                elements.add(PartialTransformation(images, n))
    else:
        elements.add(PartialTransformation((None,) * n, n))
        for i in points:
            for j in points:
                images = [j if p == i else None for p in points]
                elements.add(PartialTransformation(images, n))
    return FiniteSemigroup.from_elements(None, n, elements)


# Endomorphisms of C_n and D_2n -----------------------------------------


def _group_tag(tag):
    kind = SemigroupKind.coerce(tag)
    if kind not in (SemigroupKind.C, SemigroupKind.D2):
        raise DomainError(f"Group tag must be C or D2; got {tag}")
    return kind


class GroupEndoReport:

    """Endomorphisms of C_n or D_2n as generator images.

    Each endomorphism is a tuple holding the image of g (and of h for
    D_2n).

    """

    def __init__(self, tag, n, endomorphisms, automorphisms):
        self.tag = tag
        self.n = n
        self.endomorphisms = tuple(endomorphisms)
        self.automorphisms = tuple(automorphisms)

    @property
    def total(self):
        return len(self.endomorphisms)

    @property
    def total_automorphisms(self):
        return len(self.automorphisms)

    def to_json(self):
        return {
            "tag": str(self.tag),
            "n": self.n,
            "endomorphisms": self.total,
            "automorphisms": self.total_automorphisms,
            "maps": [[list(p.images) for p in images] for images in self.endomorphisms],
        }


def group_endomorphisms(tag, n):
    """Brute force over generator images, checking the defining relations.

    C_n = <g | g^n = 1>; D_2n = <g, h | g^n = h² = 1, gh = hg^(n-1)>.

    """
    kind = _group_tag(tag)
    one = identity_permutation(n)
    endomorphisms = []
    automorphisms = []
    if kind is SemigroupKind.C:
        elements = cyclic_elements(n)
        for a in elements:
            if a ** n == one:
                endomorphisms.append((a,))
                if len(generate_group([a])) == n:
                    automorphisms.append((a,))
    else:
        elements = dihedral_elements(n)
        for a in elements:
            if a ** n != one:
                continue
            a_inverse = a ** (n - 1)
            for b in elements:
                if b * b == one and a * b == b * a_inverse:
                    endomorphisms.append((a, b))
                    if len(generate_group([a, b])) == 2 * n:
                        automorphisms.append((a, b))
    return GroupEndoReport(kind, n, sorted(endomorphisms), sorted(automorphisms))


def named_group_endomorphisms(tag, n):
    """Endomorphisms of C_n or D_2n by family name.

    C_n: phi_i (g -> g^i). D_2n: phi_0 and phi_i,j (g -> g^i, h -> hg^j);
    for even n also phi_n, xi_i,j, xi_i, mu_i, mu_n, nu_i, and nu_n.

    """
    kind = _group_tag(tag)
    rotations = cyclic_elements(n)
    if kind is SemigroupKind.C:
        return {f"phi_{i}": (rotations[i],) for i in range(n)}
    h = make_h(n)
    one = rotations[0]
    reflections = [h * r for r in rotations]
    named = {"phi_0": (one, one)}
    for i in range(n):
        for j in range(n):
            named[f"phi_{i},{j}"] = (rotations[i], reflections[j])
    if n % 2 == 0:
        half = rotations[n // 2]
        named["phi_n"] = (one, half)
        named["mu_n"] = (half, one)
        named["nu_n"] = (half, half)
        for i in range(n):
            j = (i + n // 2) % n
            named[f"xi_{i},{j}"] = (reflections[i], reflections[j])
            named[f"xi_{i}"] = (reflections[i], half)
            named[f"mu_{i}"] = (reflections[i], one)
            named[f"nu_{i}"] = (reflections[i], reflections[i])
    return named
