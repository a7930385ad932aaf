from doctest import DocTestSuite
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest import TestCase

import numpy as np

import orientedmonoids.semigroup
from orientedmonoids.chain import PartialTransformation, identity
from orientedmonoids.exc import CapacityError, DomainError
from orientedmonoids.semigroup import (
    CLASSIFICATION_TARGETS,
    FiniteSemigroup,
    SemigroupKind,
    build,
    closure,
    e_set,
    elements_by_predicate,
    expand_kinds,
    export_cayley,
    generator_set,
    import_cayley,
    is_regular,
    s1,
    subsemigroup,
)


def load_tests(loader, tests, ignore):
    tests.addTests(DocTestSuite(orientedmonoids.semigroup))
    return tests


SIZES_3 = {
    "OP": 24,
    "POPI": 31,
    "POP": 61,
    "OR": 27,
    "PORI": 34,
    "POR": 64,
    "O": 10,
    "POI": 20,
    "PO": 38,
    "C": 3,
    "D2": 6,
    "T": 27,
    "I": 34,
    "PT": 64,
}


class TestSemigroupKind(TestCase):
    def test_coerce(self):
        self.assertIs(SemigroupKind.coerce("Popi"), SemigroupKind.POPI)
        self.assertRaises(DomainError, SemigroupKind.coerce, "xyz")

    def test_traits(self):
        self.assertTrue(SemigroupKind.POP.is_partial)
        self.assertFalse(SemigroupKind.OR.is_partial)
        self.assertTrue(SemigroupKind.PORI.is_injective)
        self.assertTrue(SemigroupKind.OR.has_reflections)
        self.assertFalse(SemigroupKind.OP.has_reflections)
        self.assertFalse(SemigroupKind.T.is_classification_target)

    def test_contains(self):
        h = PartialTransformation([3, 2, 1])
        self.assertTrue(SemigroupKind.OR.contains(h))
        self.assertFalse(SemigroupKind.OP.contains(h))
        partial = PartialTransformation([2, None, 1])
        self.assertTrue(SemigroupKind.PORI.contains(partial))
        self.assertFalse(SemigroupKind.OR.contains(partial))

    def test_expand_kinds(self):
        self.assertEqual(expand_kinds(("all",)), CLASSIFICATION_TARGETS)
        self.assertEqual(expand_kinds(["pop", "POP"]), (SemigroupKind.POP,))
        self.assertRaises(DomainError, expand_kinds, ["t"])
        self.assertRaises(DomainError, expand_kinds, ["nope"])


class TestBuild(TestCase):
    def test_sizes(self):
        for tag, size in SIZES_3.items():
            with self.subTest(kind=tag):
                self.assertEqual(len(build(tag, 3)), size)

    def test_closure_agrees_with_predicate(self):
        for tag in SIZES_3:
            with self.subTest(kind=tag):
                S = build(tag, 3)
                T = build(tag, 3, method="predicate")
                self.assertEqual(S.elements, T.elements)
                self.assertTrue(np.array_equal(S.cayley, T.cayley))

    def test_larger_sizes(self):
        self.assertEqual(len(build("op", 4)), 128)
        self.assertEqual(len(build("popi", 4)), 141)
        self.assertEqual(len(elements_by_predicate("op", 5)), 610)

    def test_popi_generator_variant(self):
        S = build("popi", 4)
        T = build("popi", 4, variant="g_n-1")
        self.assertEqual(S.elements, T.elements)
        self.assertNotEqual(S.generators, T.generators)

    def test_elements_are_members(self):
        for kind in CLASSIFICATION_TARGETS:
            S = build(kind, 3)
            self.assertTrue(all(kind.contains(t) for t in S))

    def test_bad_input(self):
        self.assertRaises(DomainError, build, "op", 2)
        self.assertRaises(DomainError, build, "op", 3, method="magic")
        self.assertRaises(DomainError, generator_set, "popi", 3, variant="x")
        self.assertRaises(DomainError, generator_set, "op", 3, variant="g_n-1")
        self.assertRaises(DomainError, generator_set, "op", 0)
        self.assertRaises(DomainError, closure, 3, [])

    def test_capacity(self):
        gens = generator_set("op", 3)
        self.assertRaises(CapacityError, closure, 3, gens, limit=100)
        self.assertRaises(CapacityError, elements_by_predicate, "pt", 3, limit=10)

    def test_not_closed(self):
        g = PartialTransformation([2, 3, 1])
        self.assertRaises(
            DomainError, FiniteSemigroup.from_elements, None, 3, [identity(3), g]
        )


class TestFiniteSemigroup(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.op = build("op", 3)
        cls.pop = build("pop", 3)
        cls.orn = build("or", 3)

    def test_label_and_repr(self):
        self.assertEqual(self.op.label, "OP_3")
        self.assertEqual(repr(self.op), "FiniteSemigroup(OP_3, size=24)")

    def test_identity_and_zero(self):
        self.assertEqual(self.op[self.op.identity], identity(3))
        self.assertIsNone(self.op.zero)
        self.assertEqual(self.pop[self.pop.zero].rank, 0)

    def test_cayley_table(self):
        S = self.orn
        self.assertTrue(S.is_associative())
        for a in range(len(S)):
            for b in range(0, len(S), 5):
                self.assertEqual(S[S.mul(a, b)], S[a] * S[b])

    def test_idempotents(self):
        self.assertEqual(len(self.op.idempotents), 10)
        ranks = [int(self.pop.ranks[e]) for e in self.pop.idempotents]
        self.assertEqual([ranks.count(k) for k in range(4)], [1, 12, 9, 1])

    def test_units(self):
        self.assertEqual(len(self.op.units), 3)
        self.assertEqual(len(self.orn.units), 6)
        words = self.orn.unit_words
        expected = [(r, i) for r in (0, 1) for i in range(3)]
        self.assertEqual(sorted(words.values()), expected)
        self.assertEqual(words[self.orn.identity], (0, 0))

    def test_power(self):
        S = self.op
        g = S.index_of(PartialTransformation([2, 3, 1]))
        self.assertEqual(S.power(g, 3), S.identity)
        self.assertRaises(DomainError, S.power, g, 0)

    def test_index_of_missing(self):
        h = PartialTransformation([3, 2, 1])
        self.assertRaises(DomainError, self.op.index_of, h)
        self.assertNotIn(h, self.op)

    def test_subsemigroup(self):
        S = self.orn
        self.assertEqual(subsemigroup(S, S.units), tuple(int(u) for u in S.units))

    def test_e_set(self):
        S = self.pop
        self.assertEqual(e_set(S, S.identity), tuple(int(e) for e in S.idempotents))
        self.assertEqual(e_set(S, S.zero), (S.zero,))

    def test_regular(self):
        for S in (self.op, self.pop, self.orn):
            self.assertTrue(is_regular(S))
        self.assertFalse(is_regular(closure(3, [s1(3)])))

    def test_to_json(self):
        obj = self.op.to_json()
        self.assertEqual(obj["kind"], "OP")
        self.assertEqual(len(obj["elements"]), 24)
        self.assertEqual(obj["elements"][self.op.identity], [1, 2, 3])


class TestCayleyExport(TestCase):
    def test_export_and_import(self):
        S = build("pori", 3)
        with TemporaryDirectory() as directory:
            path = export_cayley(S, Path(directory) / "pori.bin")
            data = path.read_bytes()
            self.assertEqual(data[:4], b"OMCT")
            self.assertEqual(len(data), 16 + len(S) ** 2)
            n, table = import_cayley(path)
        self.assertEqual(n, 3)
        self.assertTrue(np.array_equal(table, S.cayley))

    def test_import_garbage(self):
        with TemporaryDirectory() as directory:
            path = Path(directory) / "garbage.bin"
            path.write_bytes(b"not a table")
            self.assertRaises(DomainError, import_cayley, path)
            path.write_bytes(b"OMCT" + bytes(12) + b"extra")
            self.assertRaises(DomainError, import_cayley, path)
