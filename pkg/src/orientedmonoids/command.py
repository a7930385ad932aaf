import argparse
import inspect
import json
import sys
from collections import OrderedDict
from typing import Mapping

from cached_property import cached_property

from .args import Arg, ArgConfig, HelpArg, Parameter
from .config import read_command_config
from .exc import CommandError, OrientedMonoidsError, RunAborted
from .util import is_type, printer

__all__ = ["command", "Command"]


class Command:

    """Wraps a callable and provides a command line argument parser.

    Args:
        implementation (callable): Implements the command. The parser
            is generated by inspecting its signature.
        name (str): Name of command as it will be called from the
            command line. Defaults to ``implementation.__name__`` (with
            underscores replaced with dashes).
        description (str): Description of command shown in command
            help. Defaults to ``implementation.__doc__``.
        base_command (Command): Makes this command a subcommand.
        read_config (bool): Read default args from ``pyproject.toml`` or
            ``orientedmonoids.toml`` (see :mod:`orientedmonoids.config`).
        debug (bool): Show parsing and dispatch details.

    This is typically used via the :func:`command` decorator::

        @command
        def my_command(n=3):
            ...

    An arg is optional when its parameter has a default; its type is
    the default's type unless an :func:`arg` annotation says otherwise.
    Returning an int from a command sets the exit code.

    """

    def __init__(
        self,
        implementation,
        name=None,
        description=None,
        base_command=None,
        read_config=False,
        debug=False,
    ):
        self.implementation = implementation
        self.module = implementation.__module__
        self.qualname = implementation.__qualname__

        name = name or self.normalize_name(implementation.__name__)
        base_name = name

        is_subcommand = base_command is not None

        if is_subcommand:
            name = ":".join((base_command.name, name))

        description = description or self.get_description_from_docstring(
            implementation
        )
        short_description = description.splitlines()[0] if description else None

        self.name = name
        self.description = description
        self.short_description = short_description
        self.read_config = read_config
        self.debug = debug

        # Subcommand-related attributes
        first_arg = next(iter(self.args.values()), None)
        self.base_command = base_command
        self.base_name = base_name
        self.is_subcommand = is_subcommand
        self.subcommands = []
        self.first_arg = first_arg

        if is_subcommand:
            base_command.add_subcommand(self)

    def subcommand(self, name=None, description=None, read_config=None):
        """Create a subcommand of this command."""
        if read_config is None:
            read_config = self.read_config
        return command(name, description, self, read_config, self.__class__)

    @property
    def is_base_command(self):
        return bool(self.subcommands)

    @property
    def prog_name(self):
        if self.is_subcommand:
            return " ".join(self.name.split(":"))
        return self.base_name

    @cached_property
    def config_file_args(self):
        """Get default args from config files.

        Values are converted using the arg's type converter. Boolean
        args should use "1", "true", "0", or "false".

        .. note:: TOML converts unquoted values, which may not be
            desirable. To avoid this, quote values in pyproject.toml.

        """
        path, args = read_command_config(self.base_name)
        return self.convert_config_file_args(path, args)

    def convert_config_file_args(self, config_file, args):
        if not args:
            return {}

        processed_args = {}

        for name, value in args.items():
            arg = self.find_arg(name)
            if arg is None or isinstance(arg, HelpArg):
                raise CommandError(
                    f"Unknown arg for command {self.name} specified in "
                    f"{config_file.name}: {name}"
                )
            try:
                value = arg.convert_value(value)
            except (ValueError, TypeError):
                raise CommandError(
                    f"Could not convert value for command {self.name} "
                    f"specified in {config_file.name}: "
                    f"{name} => {value!r}"
                )
            processed_args[arg.dest] = value

        if self.debug:
            printer.debug(f"Args from {config_file.name}:", processed_args)

        return processed_args

    def add_subcommand(self, subcommand):
        name = subcommand.base_name
        self.subcommands.append(subcommand)
        if self.first_arg.choices is None:
            self.first_arg.choices = []
        self.first_arg.choices.append(name)

    def get_description_from_docstring(self, implementation):
        description = implementation.__doc__
        if description is not None:
            description = description.strip() or None
        if description is not None:
            lines = description.splitlines()
            title = lines[0]
            if title.endswith("."):
                title = title[:-1]
            lines = [title] + [line[4:] for line in lines[1:]]
            description = "\n".join(lines)
        return description

    def run(self, argv, **overrides):
        debug = self.debug

        parsed_args = {}

        if self.read_config:
            parsed_args.update(self.config_file_args)

        if isinstance(argv, Mapping):
            parsed_args.update(argv)
        else:
            parsed_args.update(self.parse_args(argv))

        kwargs = {}
        kwargs.update(parsed_args)
        kwargs.update(overrides)

        # Positionals are passed positionally; everything else by name.
        args = []
        for arg in self.positionals.values():
            name = arg.parameter.name
            if name not in kwargs:
                raise CommandError(f"Missing arg for command {self.name}: {name}")
            args.append(kwargs.pop(name))

        if debug:
            printer.debug("Running command via command line:", self.name)
            printer.debug("    Positional args:", tuple(args))
            printer.debug("    Optional args:", kwargs)

        return self(*args, **kwargs)

    def console_script(self, argv=None, **overrides):
        """Run the command and then :func:`sys.exit`.

        When exiting isn't desired (e.g. in tests), wrap the call to
        this method in a try/except block that catches ``SystemExit``.

        """
        argv = sys.argv[1:] if argv is None else argv

        if self.is_base_command:
            commands = self.partition_subcommands(argv)
        else:
            commands = [(self, argv)]

        debug = self.debug or any(
            isinstance(cmd_argv, Mapping) and cmd_argv.get("debug")
            for _, cmd_argv in commands
        )
        return_code = 0

        for cmd, cmd_argv in commands:
            try:
                result = cmd.run(cmd_argv, **overrides)
            except OrientedMonoidsError as exc:
                return_code = exc.return_code
                result_str = str(exc)
                if result_str:
                    if isinstance(exc, RunAborted) and not return_code:
                        printer.warning(result_str)
                    else:
                        printer.error(result_str)
                if hasattr(exc, "to_json"):
                    printer.print(json.dumps(exc.to_json(), indent=2), soft_wrap=True)
                if debug:
                    printer.debug("Exiting console script due to error")
                    if not isinstance(exc, RunAborted):
                        raise
                break
            else:
                return_code = self.process_result(result)
                if return_code:
                    break

        if debug:
            printer.debug("Exiting console script with return code:", return_code)

        return sys.exit(return_code)

    def process_result(self, result):
        """Get the return code for the result returned by a command."""
        if result is None:
            return 0
        if isinstance(result, int):
            return result
        return 0

    def partition_subcommands(self, argv):
        base_argv = []
        subcmd_args = {}
        base_args = {}
        commands = [(self, base_args)]
        subcommand_map = {sub.name: sub for sub in self.subcommands}

        for i, arg in enumerate(argv):
            base_argv.append(arg)
            qualified_name = f"{self.name}:{arg}"
            if qualified_name in subcommand_map:
                subcmd = subcommand_map[qualified_name]
                remaining_argv = argv[i + 1 :]
                base_args.update(self.parse_args(base_argv))
                subcmd_args = subcmd.parse_args(remaining_argv)
                commands.append((subcmd, subcmd_args))
                break
        else:
            # No subcommand found
            base_args.update(self.parse_args(base_argv))

        # Optional base args are passed down to subcommands that accept
        # an arg with the same name, unless the subcommand got its own.
        for subcmd, subcmd_args in commands[1:]:
            for base_arg in self.optionals.values():
                name = base_arg.parameter.name
                if name in base_args and name not in subcmd_args:
                    if subcmd.find_parameter(name) is not None:
                        subcmd_args[name] = base_args[name]

        return commands

    def __call__(self, *args, **kwargs):
        if self.debug:
            printer.debug("Command called:", self.name)
            printer.debug("    Positional args:", args)
            printer.debug("    Keyword args:", kwargs)
        return self.implementation(*args, **kwargs)

    def parse_args(self, argv):
        if self.debug:
            printer.debug(f"Parsing args for command `{self.name}`: {argv}")
        parsed_args = self.arg_parser.parse_args(argv)
        parsed_args = vars(parsed_args)
        for k, v in parsed_args.items():
            if v == "":
                parsed_args[k] = None
        return parsed_args

    @staticmethod
    def normalize_name(name):
        # Chomp a single trailing underscore *if* the name ends with
        # just one trailing underscore. This accommodates the convention
        # of adding a trailing underscore to reserved/built-in names.
        if name.endswith("_"):
            if name[-2] != "_":
                name = name[:-1]
        name = name.replace("_", "-")
        return name

    def find_arg(self, name):
        """Find arg by normalized arg name or parameter name."""
        name = self.normalize_name(name)
        return self.args.get(name)

    def find_parameter(self, name):
        """Find parameter by name or normalized arg name."""
        param = self.parameters.get(name)
        if param is None:
            arg = self.find_arg(name)
            if arg is not None and not isinstance(arg, HelpArg):
                param = arg.parameter
        return param

    def get_arg_config(self, param):
        annotation = param.annotation
        if annotation is param.empty:
            annotation = ArgConfig()
        elif isinstance(annotation, type):
            annotation = ArgConfig(type=annotation)
        return annotation

    def get_short_option_for_arg(self, name, used):
        first_char = name[0]
        first_char_upper = first_char.upper()

        if name == "help":
            candidates = (first_char,)
        elif name.startswith("h"):
            candidates = (first_char_upper,)
        else:
            candidates = (first_char, first_char_upper)

        for char in candidates:
            short_option = f"-{char}"
            if short_option not in used:
                return short_option

    def get_long_option_for_arg(self, name):
        return f"--{name}"

    def get_inverse_short_option_for_arg(self, short_option, used):
        inverse_short_option = short_option.upper()
        if inverse_short_option not in used:
            return inverse_short_option

    def get_inverse_long_option_for_arg(self, long_option):
        if long_option.startswith("--no-"):
            return long_option.replace("--no-", "--", 1)
        return long_option.replace("--", "--no-", 1)

    @cached_property
    def parameters(self):
        signature = inspect.signature(self.implementation)
        parameters = OrderedDict()
        for name, param in signature.parameters.items():
            parameters[name] = Parameter(param)
        return parameters

    @cached_property
    def args(self):
        """Create args from function parameters."""
        get_arg_config = self.get_arg_config

        params = OrderedDict(
            (self.normalize_name(n), p)
            for n, p in self.parameters.items()
            if not (n.startswith("_") or p.is_required_keyword_only or p.is_var_keyword)
        )

        used_short_options = {"-h"}
        for param in params.values():
            short_option = get_arg_config(param).short_option
            if short_option:
                used_short_options.add(short_option)

        args = OrderedDict()

        for name, param in params.items():
            annotation = get_arg_config(param)
            short_option = annotation.short_option
            long_option = annotation.long_option
            inverse_short_option = None
            inverse_long_option = None
            is_bool = is_type(annotation.type, bool) or param.is_bool

            if not param.is_positional:
                if not short_option:
                    short_option = self.get_short_option_for_arg(
                        name, used_short_options
                    )
                    used_short_options.add(short_option)
                if not long_option:
                    long_option = self.get_long_option_for_arg(name)
                if is_bool and not annotation.no_inverse:
                    if short_option:
                        inverse_short_option = self.get_inverse_short_option_for_arg(
                            short_option, used_short_options
                        )
                        used_short_options.add(inverse_short_option)
                    inverse_long_option = self.get_inverse_long_option_for_arg(
                        long_option
                    )

            args[name] = Arg(
                command=self,
                parameter=param,
                name=name,
                container=annotation.container,
                type=annotation.type,
                default=param.default,
                choices=annotation.choices,
                help=annotation.help,
                short_option=short_option,
                long_option=long_option,
                no_inverse=annotation.no_inverse,
                inverse_short_option=inverse_short_option,
                inverse_long_option=inverse_long_option,
            )

        if "help" not in args:
            args["help"] = HelpArg(command=self)

        option_map = OrderedDict()
        for arg in args.values():
            for option in arg.all_options:
                option_map.setdefault(option, [])
                option_map[option].append(arg)

        for option, option_args in option_map.items():
            if len(option_args) > 1:
                names = ", ".join(a.parameter.name for a in option_args)
                message = (
                    f"Option {option} of command {self.name} maps to "
                    f"multiple parameters: {names}"
                )
                raise CommandError(message)

        return args

    @cached_property
    def arg_parser(self):
        parser = argparse.ArgumentParser(
            prog=self.prog_name,
            description=self.description,
            formatter_class=argparse.RawDescriptionHelpFormatter,
            argument_default=argparse.SUPPRESS,
            add_help=True,
            allow_abbrev=False,
        )

        for name, arg in self.args.items():
            if isinstance(arg, HelpArg):
                continue

            options, kwargs = arg.add_argument_args
            parser.add_argument(*options, **kwargs)

            inverse_args = arg.add_argument_inverse_args
            if inverse_args is not None:
                options, kwargs = inverse_args
                parser.add_argument(*options, **kwargs)

        return parser

    @cached_property
    def positionals(self):
        args = self.args.items()
        return OrderedDict((name, arg) for (name, arg) in args if arg.is_positional)

    @cached_property
    def optionals(self):
        args = self.args.items()
        return OrderedDict(
            (name, arg)
            for (name, arg) in args
            if arg.is_optional and not isinstance(arg, HelpArg)
        )

    @property
    def usage(self):
        usage = self.arg_parser.format_usage()
        usage = usage.split(": ", 1)[1]
        usage = usage.strip()
        return usage

    def __hash__(self):
        return hash(self.name)

    def __str__(self):
        return self.usage

    def __repr__(self):
        return f"Command(name={self.name})"


def command(
    name=None,
    description=None,
    base_command=None,
    read_config=False,
    cls=Command,
):
    args = dict(
        description=description,
        base_command=base_command,
        read_config=read_config,
    )

    if callable(name):
        # Bare function decorator
        return cls(implementation=name, **args)

    def wrapper(wrapped):
        return cls(implementation=wrapped, name=name, **args)

    return wrapper
