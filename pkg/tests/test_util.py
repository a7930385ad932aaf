import io
from contextlib import redirect_stderr, redirect_stdout
from doctest import DocTestSuite
from unittest import TestCase

import orientedmonoids.util.misc
from orientedmonoids.__main__ import main
from orientedmonoids.exc import RunAborted
from orientedmonoids.util import abort, is_type, printer
from orientedmonoids.util.enums import Color, Emit


def load_tests(loader, tests, ignore):
    tests.addTests(DocTestSuite(orientedmonoids.util.misc))
    return tests


class TestMisc(TestCase):
    def test_abort(self):
        with self.assertRaises(RunAborted) as context:
            abort(2, "Nope")
        self.assertEqual(context.exception.return_code, 2)
        self.assertEqual(str(context.exception), "Nope")

    def test_is_type(self):
        self.assertTrue(is_type(Emit, Emit))
        self.assertFalse(is_type(Emit.json, Emit))
        self.assertFalse(is_type(None, bool))

    def test_package_exports(self):
        self.assertIs(orientedmonoids.util.Emit, Emit)
        self.assertIn("Emit", orientedmonoids.util.__all__)
        self.assertTrue(callable(main))


class TestPrinter(TestCase):
    def test_emit_goes_to_stdout(self):
        stdout = io.StringIO()
        with redirect_stdout(stdout):
            printer.emit('{"n": 3}')
            printer.emit("a,b\n", end="")
        self.assertEqual(stdout.getvalue(), '{"n": 3}\na,b\n')

    def test_messages_go_to_stderr(self):
        stdout = io.StringIO()
        stderr = io.StringIO()
        with redirect_stdout(stdout), redirect_stderr(stderr):
            printer.check("counts: OP_3: per-type", True)
            printer.check("counts: OP_4: per-type", False, "off by one")
            printer.error("[not markup]")
        self.assertEqual(stdout.getvalue(), "")
        lines = stderr.getvalue().splitlines()
        self.assertEqual(lines[0], "PASS counts: OP_3: per-type")
        self.assertEqual(lines[1], "FAIL counts: OP_4: per-type -- off by one")
        self.assertEqual(lines[2], "[not markup]")

    def test_colors(self):
        self.assertIs(printer.get_color("error"), Color.red)
        self.assertIs(printer.get_color(Color.blue), Color.blue)
        self.assertIsNone(printer.get_color(None))
        self.assertRaises(ValueError, printer.get_color, "nope")
        self.assertEqual(printer.colorize("x", "y", color="info"), "[blue]x y")
