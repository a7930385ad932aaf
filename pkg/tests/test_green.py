from doctest import DocTestSuite
from unittest import TestCase

import orientedmonoids.green
from orientedmonoids.chain import PartialTransformation
from orientedmonoids.exc import DomainError
from orientedmonoids.green import (
    element_order,
    find_idempotent_family,
    green_data,
    green_from_table,
    group_h_class,
    ideal,
    idempotents_of_rank,
    identify_group,
    partitions_agree,
)
from orientedmonoids.semigroup import CLASSIFICATION_TARGETS, build


def load_tests(loader, tests, ignore):
    tests.addTests(DocTestSuite(orientedmonoids.green))
    return tests


class TestGreenRelations(TestCase):
    def test_fingerprints_agree_with_table(self):
        for kind in CLASSIFICATION_TARGETS:
            S = build(kind, 3)
            fingerprints = green_data(S)
            table = green_from_table(S)
            for name in ("l_ids", "r_ids", "h_ids", "j_ids"):
                with self.subTest(kind=str(kind), relation=name):
                    a = getattr(fingerprints, name)
                    b = getattr(table, name)
                    self.assertTrue(partitions_agree(a, b))

    def test_j_classes_are_ranks(self):
        S = build("pori", 3)
        self.assertEqual(len(S.green.j_classes), 4)
        for s in range(len(S)):
            self.assertTrue(S.green.j_related(s, S.identity) == (S[s].rank == 3))

    def test_h_classes_of_units(self):
        S = build("or", 3)
        self.assertEqual(S.green.h_class(S.identity), tuple(int(u) for u in S.units))
        self.assertTrue(S.green.is_group_element(S.identity))


class TestIdealsAndIdempotents(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.op = build("op", 3)

    def test_ideal(self):
        self.assertEqual(len(ideal(self.op, 1)), 3)
        self.assertEqual(len(ideal(self.op, 3)), 24)
        self.assertRaises(DomainError, ideal, self.op, 4)
        self.assertRaises(DomainError, ideal, self.op, -1)

    def test_idempotents_of_rank(self):
        counts = [len(idempotents_of_rank(self.op, k)) for k in (1, 2, 3)]
        self.assertEqual(counts, [3, 6, 1])

    def test_element_order(self):
        S = self.op
        g = S.index_of(PartialTransformation([2, 3, 1]))
        self.assertEqual(element_order(S, g), 3)
        self.assertEqual(element_order(S, S.identity), 1)
        not_group = S.index_of(PartialTransformation([1, 1, 2]))
        self.assertIsNone(element_order(S, not_group))


class TestGroupHClasses(TestCase):
    def test_units(self):
        op = build("op", 3)
        group = group_h_class(op, op.identity)
        self.assertEqual((group.structure, group.order), ("cyclic", 3))
        orn = build("or", 3)
        group = group_h_class(orn, orn.identity)
        self.assertEqual((group.structure, group.order), ("dihedral", 6))

    def test_rank_two(self):
        S = build("op", 3)
        e = S.index_of(PartialTransformation([1, 2, 2]))
        group = group_h_class(S, e)
        self.assertEqual(group.order, 2)
        self.assertEqual(group.structure, "cyclic")

    def test_not_idempotent(self):
        S = build("op", 3)
        g = S.index_of(PartialTransformation([2, 3, 1]))
        self.assertRaises(DomainError, group_h_class, S, g)

    def test_identify_rejects_non_groups(self):
        S = build("op", 3)
        members = [S.identity, S.index_of(PartialTransformation([1, 1, 2]))]
        self.assertRaises(DomainError, identify_group, S, members)


class TestIdempotentFamilies(TestCase):
    def check_family(self, S, k, family):
        self.assertIsNotNone(family)
        self.assertEqual(len(family), S.n - 1)
        low = S.ranks < k
        for i, a in enumerate(family):
            self.assertEqual(S.ranks[a], k)
            for b in family[i + 1 :]:
                self.assertTrue(low[S.mul(a, b)] or low[S.mul(b, a)])

    def test_families_exist(self):
        for tag in ("op", "popi"):
            S = build(tag, 4)
            with self.subTest(kind=tag):
                self.check_family(S, 3, find_idempotent_family(S, 3))

    def test_rank_range(self):
        S = build("op", 4)
        self.assertRaises(DomainError, find_idempotent_family, S, 2)
        self.assertRaises(DomainError, find_idempotent_family, S, 4)
