from doctest import DocTestSuite
from unittest import TestCase, skipUnless

import orientedmonoids.counting
from orientedmonoids.config import slow_tests_enabled
from orientedmonoids.counting import (
    TABLE_COLUMNS,
    TYPE_KEYS,
    CountReport,
    brute_force_counts,
    count_idem_op,
    count_idem_op_rank,
    count_idem_pop,
    count_idem_pop_rank,
    delta,
    e_count,
    eps,
    fib,
    group_counts,
    h0_aggregate,
    h0_count,
    idempotents_per_rank,
    theorem_total,
    total_endomorphisms,
    type_counts,
)
from orientedmonoids.exc import DomainError
from orientedmonoids.semigroup import (
    CLASSIFICATION_TARGETS,
    build,
    e_set,
    elements_by_predicate,
)


def load_tests(loader, tests, ignore):
    tests.addTests(DocTestSuite(orientedmonoids.counting))
    return tests


TOTALS = {
    3: {"OP": 37, "POPI": 41, "POP": 116, "OR": 40, "PORI": 54, "POR": 138},
    4: {"OP": 185, "POPI": 106, "OR": 281, "PORI": 240},
}

# kind => (T1, T2, T3+7, T4, T5, T6) at n = 3
PER_TYPE_3 = {
    "OP": (6, 0, 31, 0, 0, 0),
    "POPI": (6, 6, 27, 2, 0, 0),
    "POP": (6, 6, 102, 2, 0, 0),
    "OR": (6, 0, 31, 0, 0, 3),
    "PORI": (6, 6, 27, 0, 6, 9),
    "POR": (6, 6, 102, 0, 6, 18),
}

PER_TYPE_4 = {
    "OP": (8, 0, 177, 0, 0, 0),
    "POPI": (8, 8, 81, 9, 0, 0),
    "OR": (8, 0, 177, 0, 0, 96),
    "PORI": (8, 8, 81, 0, 20, 123),
}


def idempotent_ranks(kind, n):
    ranks = {}
    for t in elements_by_predicate(kind, n):
        if t.is_idempotent:
            ranks[t.rank] = ranks.get(t.rank, 0) + 1
    return ranks


class TestIdempotentCounts(TestCase):
    def test_op(self):
        for n in range(1, 7):
            with self.subTest(n=n):
                ranks = idempotent_ranks("op", n)
                expected = {k: count_idem_op_rank(n, k) for k in range(1, n + 1)}
                self.assertEqual(ranks, expected)
                self.assertEqual(sum(ranks.values()), count_idem_op(n))

    def test_op_4(self):
        counts = [count_idem_op_rank(4, k) for k in range(1, 5)]
        self.assertEqual(counts, [4, 20, 8, 1])
        self.assertEqual(count_idem_op(3), 10)

    def test_pop(self):
        for n in range(1, 6):
            with self.subTest(n=n):
                ranks = idempotent_ranks("pop", n)
                expected = {k: count_idem_pop_rank(n, k) for k in range(n + 1)}
                self.assertEqual(ranks, expected)
                self.assertEqual(sum(ranks.values()), count_idem_pop(n))

    def test_per_rank_by_kind(self):
        for kind in CLASSIFICATION_TARGETS:
            with self.subTest(kind=str(kind)):
                expected = idempotents_per_rank(kind, 4)
                self.assertEqual(idempotent_ranks(kind, 4), expected)

    def test_idempotents_below(self):
        for kind in CLASSIFICATION_TARGETS:
            n = 3 if kind.is_partial and not kind.is_injective else 4
            S = build(kind, n)
            for e in S.idempotents:
                k = int(S.ranks[e])
                with self.subTest(kind=str(kind), rank=k):
                    self.assertEqual(len(e_set(S, e)), e_count(kind, k))

    def test_bad_ranks(self):
        self.assertRaises(DomainError, count_idem_op_rank, 3, 0)
        self.assertRaises(DomainError, count_idem_op_rank, 3, 4)
        self.assertRaises(DomainError, count_idem_pop_rank, 3, -1)
        self.assertRaises(DomainError, count_idem_op, 0)
        self.assertRaises(DomainError, e_count, "op", 0)
        self.assertRaises(DomainError, e_count, "t", 1)


class TestSequences(TestCase):
    def test_fib(self):
        self.assertEqual(fib(10), 55)
        self.assertRaises(DomainError, fib, -1)

    def test_eps_and_delta(self):
        self.assertEqual([eps(4, k) for k in (1, 2, 3, 4)], [0, 1, 0, 3])
        self.assertEqual(eps(6, 6), 5)
        deltas = [delta(4, 2), delta(4, 3), delta(3, 2), delta(3, 3)]
        self.assertEqual(deltas, [1, 0, 0, 0])
        self.assertRaises(DomainError, eps, 3, 0)

    def test_h0_count(self):
        self.assertEqual(h0_count("pori", 3, 1), 2)
        self.assertEqual(h0_count("or", 4, 2), 4)
        self.assertEqual(h0_count("por", 3, 1), 3)
        self.assertRaises(DomainError, h0_count, "op", 3, 1)
        self.assertRaises(DomainError, h0_count, "or", 3, 0)
        self.assertRaises(DomainError, h0_count, "or", 2, 2)
        self.assertRaises(DomainError, h0_count, "or", 1, 1)

    def test_h0_aggregate(self):
        expected = {"or": [0, 3, 8], "pori": [1, 6, 11], "por": [1, 9, 27]}
        for tag, values in expected.items():
            with self.subTest(kind=tag):
                self.assertEqual([h0_aggregate(tag, k) for k in (2, 3, 4)], values)
        self.assertRaises(DomainError, h0_aggregate, "op", 3)
        self.assertRaises(DomainError, h0_aggregate, "or", 1)


class TestTotals(TestCase):
    def test_goldens(self):
        for n, totals in TOTALS.items():
            for tag, total in totals.items():
                with self.subTest(kind=tag, n=n):
                    self.assertEqual(theorem_total(tag, n), total)

    def test_per_type(self):
        for n, per_type in ((3, PER_TYPE_3), (4, PER_TYPE_4)):
            for tag, expected in per_type.items():
                with self.subTest(kind=tag, n=n):
                    counts = type_counts(tag, n)
                    actual = tuple(counts[key] for key in TYPE_KEYS)
                    self.assertEqual(actual, expected)
                    self.assertEqual(sum(actual), TOTALS[n][tag])

    def test_types_add_up(self):
        for kind in CLASSIFICATION_TARGETS:
            for n in range(3, 11):
                with self.subTest(kind=str(kind), n=n):
                    self.assertTrue(total_endomorphisms(kind, n).consistent)

    def test_bad_input(self):
        self.assertRaises(DomainError, theorem_total, "op", 2)
        self.assertRaises(DomainError, total_endomorphisms, "t", 3)
        self.assertRaises(DomainError, type_counts, "nope", 3)

    def test_group_counts(self):
        self.assertEqual(group_counts("d2", 4), (36, 8))
        self.assertEqual(group_counts("d2", 5), (26, 20))
        self.assertEqual(group_counts("c", 6), (6, 2))
        self.assertRaises(DomainError, group_counts, "d2", 2)
        self.assertRaises(DomainError, group_counts, "op", 3)


class TestCountReport(TestCase):
    def test_row(self):
        report = total_endomorphisms("op", 3)
        row = report.to_row()
        self.assertEqual(len(row), len(TABLE_COLUMNS))
        self.assertEqual(row, ["OP", 3, 6, 0, 31, 0, 0, 0, 37, ""])
        report.enumerated_total = 37
        self.assertEqual(report.to_row()[-1], 37)

    def test_consistency(self):
        report = total_endomorphisms("pori", 3, enumerated_total=54)
        self.assertTrue(report.consistent)
        report.enumerated_total = 53
        self.assertFalse(report.consistent)
        per_type = dict(report.per_type, T1=0)
        self.assertFalse(CountReport(report.kind, 3, per_type, 54).consistent)

    def test_to_json(self):
        obj = total_endomorphisms("pop", 3).to_json()
        self.assertEqual(obj["kind"], "POP")
        self.assertEqual(obj["formula_total"], 116)
        self.assertIsNone(obj["enumerated_total"])
        per_rank = obj["idempotents_per_rank"]
        self.assertEqual(per_rank, {"0": 1, "1": 12, "2": 9, "3": 1})
        self.assertTrue(obj["consistent"])


class TestBruteForceCounts(TestCase):
    def test_small(self):
        for tag in PER_TYPE_3:
            with self.subTest(kind=tag):
                S = build(tag, 3)
                self.assertEqual(brute_force_counts(S), type_counts(tag, 3))

    @skipUnless(slow_tests_enabled(), "Set ORIENTEDMONOIDS_SLOW=1 to run")
    def test_four_point_chains(self):
        for tag in TOTALS[4]:
            with self.subTest(kind=tag):
                S = build(tag, 4)
                self.assertEqual(brute_force_counts(S), type_counts(tag, 4))
