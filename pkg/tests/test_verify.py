import json
from unittest import TestCase
from unittest.mock import patch

from orientedmonoids.exc import DomainError
from orientedmonoids.verify import SUITES, CheckRecord, VerifySuite, records_to_json


class TestVerifySuite(TestCase):
    def test_counts(self):
        records = VerifySuite(("counts",), ("op",), (3,)).run()
        self.assertEqual(len(records), 2)
        self.assertTrue(all(record.passed for record in records))
        labels = [record.label for record in records]
        self.assertEqual(
            labels,
            ["counts: OP_3: formula-equals-enumerated", "counts: OP_3: per-type"],
        )

    def test_group_suites(self):
        records = VerifySuite(("groups", "normalizer"), ("op",), (3,)).run()
        self.assertTrue(records)
        for record in records:
            with self.subTest(check=record.check):
                self.assertTrue(record.passed)
                self.assertIsNone(record.kind)
                self.assertTrue(record.label.startswith(f"{record.suite}: n=3: "))

    def test_kind_suites(self):
        suites = ("orientation", "green", "idempotents", "kernels")
        records = VerifySuite(suites, ("pori",), (3,)).run()
        self.assertEqual({record.suite for record in records}, set(suites))
        self.assertTrue(all(record.passed for record in records))

    def test_endomorphism_suites(self):
        suites = ("structure", "autos", "endo-soundness", "endo-completeness")
        for tag in ("or", "popi"):
            with self.subTest(kind=tag):
                records = VerifySuite(suites, (tag,), (3,)).run()
                self.assertEqual({record.suite for record in records}, set(suites))
                for record in records:
                    self.assertTrue(record.passed, record.label)
                checks = {r.check for r in records if r.suite == "structure"}
                expected = {
                    "lr-reflection",
                    "middle-rank-kernels",
                    "unit-group-image",
                    "idempotent-family-rank-2",
                }
                self.assertEqual(checks, expected)

    def test_lr_reflection_failure_is_recorded(self):
        with patch("orientedmonoids.verify._lr_violation", return_value=True):
            records = VerifySuite(("structure",), ("op",), (3,)).run()
        failed = [record for record in records if not record.passed]
        self.assertEqual([record.check for record in failed], ["lr-reflection"])
        self.assertIsNotNone(failed[0].counterexample)

    def test_records_are_sorted(self):
        records = VerifySuite(("counts",), ("or", "op"), (3,)).run()
        keys = [record.sort_key for record in records]
        self.assertEqual(keys, sorted(keys))
        self.assertEqual(str(records[0].kind), "OP")

    def test_failure_is_recorded(self):
        with patch("orientedmonoids.verify.type_counts", return_value={"T1": 0}):
            records = VerifySuite(("counts",), ("op",), (3,)).run()
        failed = [record for record in records if not record.passed]
        self.assertEqual([record.check for record in failed], ["per-type"])

    def test_bad_input(self):
        self.assertRaises(DomainError, VerifySuite, ("counts",), ("op",), (2,))
        self.assertRaises(DomainError, VerifySuite, ("nope",), ("op",), (3,))

    def test_all(self):
        self.assertEqual(VerifySuite(("all",), ("op",), (3,)).suites, SUITES)
        self.assertEqual(VerifySuite("counts", ("op",), (3,)).suites, ("counts",))


class TestCheckRecord(TestCase):
    def test_to_json(self):
        record = CheckRecord("groups", None, 4, "C-counts", True, "4 endomorphisms")
        self.assertEqual(record.label, "groups: n=4: C-counts")
        self.assertEqual(repr(record), "CheckRecord(PASS groups: n=4: C-counts)")
        records = json.loads(records_to_json([record]))
        self.assertEqual(records[0]["kind"], None)
        self.assertEqual(records[0]["detail"], "4 endomorphisms")
        self.assertTrue(records[0]["passed"])
