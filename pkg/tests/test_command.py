import io
import sys
from contextlib import redirect_stderr
from pathlib import Path
from unittest import TestCase

from orientedmonoids import abort, arg, command
from orientedmonoids.exc import CommandError, DomainError
from orientedmonoids.util import Emit


@command
def base(subcommand, flag=False):
    pass


@base.subcommand()
def sub(a=None, flag=False):
    return 3 if flag else 0


@base.subcommand()
def sub_abort():
    abort(2, "Stopped")


@base.subcommand()
def sub_bad_input():
    raise DomainError("n must be at least 3")


@command
def container_args(
    positional: arg(container=tuple, type=int),
    optional: arg(type=int) = (),
    another_optional: arg(container=list, type=float) = None,
    third_optional=(42,),
):
    return positional, optional, another_optional, third_optional


@command
def flags(verbose=False, quiet: arg(no_inverse=True) = False, emit=Emit.text):
    return verbose, quiet, emit


class SysExitMixin:

    """Make sys.exit() return its arg rather than actually exiting."""

    @classmethod
    def setUpClass(cls):
        cls.original_sys_exit = sys.exit
        sys.exit = lambda arg=0: arg

    @classmethod
    def tearDownClass(cls):
        sys.exit = cls.original_sys_exit


class TestCommandWithContainerArgs(TestCase):
    def test_positional(self):
        result = container_args.run(["1"])
        self.assertEqual(result, ((1,), (), None, (42,)))

    def test_positional_and_optional(self):
        result = container_args.run(["1", "--optional", "2"])
        self.assertEqual(result, ((1,), (2,), None, (42,)))

    def test_positional_and_optional_and_optional(self):
        argv = ["1", "--optional", "2", "--another-optional", "3.14"]
        result = container_args.run(argv)
        self.assertEqual(result, ((1,), (2,), [3.14], (42,)))

    def test_repeated_values(self):
        argv = ["1", "2", "--third-optional", "13", "14"]
        result = container_args.run(argv)
        self.assertEqual(result, ((1, 2), (), None, (13, 14)))


class TestFlags(TestCase):
    def test_options(self):
        options = ("-v", "--verbose", "-V", "--no-verbose")
        self.assertEqual(flags.args["verbose"].all_options, options)
        self.assertEqual(flags.args["quiet"].all_options, ("-q", "--quiet"))

    def test_flags(self):
        self.assertEqual(flags.run([]), (False, False, Emit.text))
        self.assertEqual(flags.run(["-v", "-q"]), (True, True, Emit.text))
        self.assertEqual(flags.run(["--verbose", "--no-verbose"])[0], False)

    def test_enum(self):
        self.assertEqual(flags.run(["--emit", "json"])[2], Emit.json)
        with redirect_stderr(io.StringIO()):
            self.assertRaises(SystemExit, flags.run, ["--emit", "yaml"])


class TestSubcommand(SysExitMixin, TestCase):
    def test_base_command_subcommand_choices(self):
        arg = base.args["subcommand"]
        self.assertEqual(arg.choices, ["sub", "sub-abort", "sub-bad-input"])
        self.assertTrue(base.is_base_command)
        self.assertEqual(sub.prog_name, "base sub")

    def test_partition(self):
        commands = base.partition_subcommands(["--flag", "sub", "-a", "x"])
        self.assertEqual([cmd for cmd, _ in commands], [base, sub])
        self.assertEqual(commands[0][1], {"subcommand": "sub", "flag": True})
        self.assertEqual(commands[1][1], {"a": "x", "flag": True})

    def test_subcommand_arg_wins(self):
        commands = base.partition_subcommands(["--flag", "sub", "--no-flag"])
        self.assertEqual(commands[1][1], {"flag": False})

    def test_return_codes(self):
        with redirect_stderr(io.StringIO()) as stderr:
            self.assertEqual(base.console_script(["sub"]), 0)
            self.assertEqual(base.console_script(["sub", "--flag"]), 3)
            self.assertEqual(base.console_script(["sub-abort"]), 2)
            self.assertEqual(base.console_script(["sub-bad-input"]), 2)
        self.assertIn("Stopped", stderr.getvalue())
        self.assertIn("n must be at least 3", stderr.getvalue())


class TestConfigFileArgs(TestCase):
    def test_convert(self):
        path = Path("orientedmonoids.toml")
        args = {"another_optional": ["1.5", 2], "third-optional": "7"}
        converted = container_args.convert_config_file_args(path, args)
        expected = {"another_optional": [1.5, 2], "third_optional": (7,)}
        self.assertEqual(converted, expected)
        converted = flags.convert_config_file_args(path, {"verbose": "true"})
        self.assertEqual(converted, {"verbose": True})

    def test_bad_args(self):
        path = Path("orientedmonoids.toml")
        convert = flags.convert_config_file_args
        self.assertRaises(CommandError, convert, path, {"nope": "1"})
        self.assertRaises(CommandError, convert, path, {"help": "1"})
        self.assertRaises(CommandError, convert, path, {"verbose": "yes"})
