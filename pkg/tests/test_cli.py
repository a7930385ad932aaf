import io
import json
import os
from contextlib import redirect_stderr, redirect_stdout
from tempfile import TemporaryDirectory
from unittest import TestCase

from orientedmonoids.commands import orientedmonoids
from orientedmonoids.semigroup import import_cayley

from .test_command import SysExitMixin


class TestConsoleScript(SysExitMixin, TestCase):
    def setUp(self):
        self.stderr = io.StringIO()
        self.stdout = io.StringIO()

    def tearDown(self):
        self.stderr = None
        self.stdout = None

    def _run(self, *argv):
        with redirect_stderr(self.stderr):
            with redirect_stdout(self.stdout):
                return_code = orientedmonoids.console_script(list(argv))
        return return_code

    @property
    def lines(self):
        return self.stdout.getvalue().splitlines()

    def test_subcommands(self):
        arg = orientedmonoids.args["subcommand"]
        expected = ["build", "groups", "endos", "count", "table", "verify"]
        self.assertEqual(arg.choices, expected)

    def test_build(self):
        self.assertEqual(self._run("build", "--kind", "or", "--n", "3"), 0)
        self.assertEqual(self.lines, ["OR_3: 27 elements"])

    def test_build_json(self):
        self.assertEqual(self._run("build", "-k", "op", "-n", "3", "-e", "json"), 0)
        obj = json.loads(self.stdout.getvalue())
        self.assertEqual(obj["kind"], "OP")
        self.assertEqual(len(obj["elements"]), 24)
        self.assertEqual(obj["elements"][0], [1, 1, 1])

    def test_build_files(self):
        with TemporaryDirectory() as directory:
            out = os.path.join(directory, "pop.json")
            cayley = os.path.join(directory, "pop.bin")
            argv = ["--kind", "pop", "--out", out, "--cayley", cayley]
            self.assertEqual(self._run("build", *argv), 0)
            with open(out) as fp:
                self.assertEqual(len(json.load(fp)["elements"]), 61)
            n, table = import_cayley(cayley)
            self.assertEqual((n, table.shape), (3, (61, 61)))

    def test_count(self):
        self.assertEqual(self._run("count", "--kind", "op", "--n", "3"), 0)
        expected = ["OP_3: 37 endomorphisms", "  T1=6 T2=0 T3+7=31 T4=0 T5=0 T6=0"]
        self.assertEqual(self.lines, expected)

    def test_count_both(self):
        argv = ["--kind", "pori", "--n", "3", "--mode", "both"]
        self.assertEqual(self._run("count", *argv), 0)
        self.assertEqual(self.lines[0], "PORI_3: 54 endomorphisms (enumerated: 54)")

    def test_count_json(self):
        argv = ["--kind", "popi", "--n", "4", "--emit", "json"]
        self.assertEqual(self._run("count", *argv), 0)
        obj = json.loads(self.stdout.getvalue())
        self.assertEqual(obj["formula_total"], 106)

    def test_count_groups(self):
        self.assertEqual(self._run("count", "--kind", "d2", "--n", "4"), 0)
        self.assertEqual(self.lines, ["D2_4: 36 endomorphisms, 8 automorphisms"])

    def test_groups(self):
        self.assertEqual(self._run("groups", "--tag", "d2", "--n", "4", "--named"), 0)
        self.assertEqual(self.lines, ["D2_4: 36 endomorphisms, 8 automorphisms"])

    def test_endos(self):
        self.assertEqual(self._run("endos", "--kind", "op", "--n", "3"), 0)
        self.assertEqual(len(self.lines), 37)
        self.assertIn("OP_3: 37 endomorphisms", self.stderr.getvalue())

    def test_endos_json(self):
        argv = ["--kind", "c", "--n", "4", "--emit", "json"]
        self.assertEqual(self._run("endos", *argv), 0)
        self.assertEqual(len(json.loads(self.stdout.getvalue())), 4)

    def test_endos_constructed_needs_an_oriented_monoid(self):
        argv = ["--kind", "t", "--source", "constructed"]
        self.assertEqual(self._run("endos", *argv), 2)

    def test_table_csv(self):
        argv = ["--kinds", "op", "--n-max", "4", "--csv"]
        self.assertEqual(self._run("table", *argv), 0)
        expected = [
            "kind,n,T1,T2,T3+7,T4,T5,T6,total,enumerated",
            "OP,3,6,0,31,0,0,0,37,",
            "OP,4,8,0,177,0,0,0,185,",
        ]
        self.assertEqual(self.lines, expected)

    def test_table_with_enumeration(self):
        argv = ["--kinds", "or", "--n-max", "3", "--enumerate-max", "3", "--csv"]
        self.assertEqual(self._run("table", *argv), 0)
        self.assertEqual(self.lines[1], "OR,3,6,0,31,0,0,3,40,40")

    def test_table(self):
        self.assertEqual(self._run("table", "--kinds", "or", "pori", "--n-max", "3"), 0)
        output = self.stdout.getvalue()
        self.assertIn("Endomorphism counts", output)
        self.assertIn("PORI", output)

    def test_verify(self):
        argv = ["--suite", "counts", "--kind", "op", "--n", "3"]
        self.assertEqual(self._run("verify", *argv), 0)
        self.assertIn("All 2 checks passed", self.stderr.getvalue())

    def test_verify_json(self):
        argv = ["--suite", "groups", "--n", "3", "4", "--emit", "json"]
        self.assertEqual(self._run("verify", *argv), 0)
        records = json.loads(self.stdout.getvalue())
        self.assertTrue(all(record["passed"] for record in records))
        self.assertEqual({record["n"] for record in records}, {3, 4})

    def test_bad_input(self):
        self.assertEqual(self._run("count", "--kind", "op", "--n", "2"), 2)
        self.assertEqual(self._run("table", "--n-min", "5", "--n-max", "4"), 2)
        self.assertEqual(self._run("table", "--n-min", "2"), 2)
        self.assertEqual(self._run("build", "--kind", "nope"), 2)
        self.assertEqual(self.stdout.getvalue(), "")
