import argparse
import builtins
from enum import Enum
from functools import update_wrapper
from inspect import Parameter as BaseParameter

from cached_property import cached_property

from .exc import CommandError
from .util import is_type

EMPTY = BaseParameter.empty
KEYWORD_ONLY = BaseParameter.KEYWORD_ONLY
POSITIONAL_ONLY = BaseParameter.POSITIONAL_ONLY
POSITIONAL_OR_KEYWORD = BaseParameter.POSITIONAL_OR_KEYWORD
VAR_KEYWORD = BaseParameter.VAR_KEYWORD


class Parameter:

    """Wrapper for :class:`inspect.Parameter`."""

    empty = EMPTY

    def __init__(self, parameter):
        self.parameter = parameter

    @cached_property
    def is_positional(self):
        kind = self.parameter.kind
        default = self.parameter.default
        return (kind is POSITIONAL_ONLY) or (
            kind is POSITIONAL_OR_KEYWORD and default is EMPTY
        )

    @cached_property
    def is_var_keyword(self):
        return self.parameter.kind is VAR_KEYWORD

    @cached_property
    def is_optional(self):
        kind = self.parameter.kind
        default = self.parameter.default
        return (
            (kind is POSITIONAL_OR_KEYWORD) or (kind is KEYWORD_ONLY)
        ) and default is not EMPTY

    @cached_property
    def is_required_keyword_only(self):
        kind = self.parameter.kind
        default = self.parameter.default
        return kind is KEYWORD_ONLY and default is EMPTY

    @cached_property
    def is_bool(self):
        return isinstance(self.parameter.default, bool)

    def __getattr__(self, name):
        """Proxy to wrapped :class:`inspect.Parameter`."""
        return getattr(self.parameter, name)


class ArgConfig:

    """Configuration for an arg, used as a parameter annotation.

    Args:
        container (type): Collect values into a container of this type.
            A tuple or list default implies a container of that type.
        type (type): The arg's type (or item type for containers). By
            default an optional arg is parsed as the type of its
            default value, or as ``str`` when the default is ``None``.
        choices (sequence): Allowed values. An Enum type implies its
            members.
        help (str): Help string for the arg.
        short_option (str): Short command line option.
        long_option (str): Long command line option.
        no_inverse (bool): Don't add ``--no-xyz`` for a flag.

    """

    def __init__(
        self,
        *,
        container=None,
        type=None,
        choices=None,
        help=None,
        short_option=None,
        long_option=None,
        no_inverse=False,
    ):
        self.container = container
        self.type = type
        self.choices = choices
        self.help = help
        self.short_option = short_option
        self.long_option = long_option
        self.no_inverse = no_inverse

    def __repr__(self):
        type_name = self.type.__name__ if self.type is not None else "None"
        options = (self.short_option, self.long_option)
        options = ", ".join(option for option in options if option)
        return f"arg<{type_name}>({options})"


arg = ArgConfig


class Arg:

    """An arg belonging to a command, derived from a function parameter.

    Flags (bool args) get an inverse option (``--no-xyz``) unless
    ``no_inverse`` is set.

    """

    def __init__(
        self,
        *,
        command,
        parameter,
        name,
        container,
        type,
        default,
        choices,
        help,
        short_option,
        long_option,
        no_inverse,
        inverse_short_option,
        inverse_long_option,
    ):
        if default is EMPTY:
            is_positional = True
            is_optional = False
        else:
            is_positional = False
            is_optional = True

        metavar = name.upper().replace("-", "_")

        if container is None and isinstance(default, (list, tuple)):
            container = default.__class__

        if type is None:
            if is_type(choices, Enum):
                type = choices
            elif container is not None:
                type = default[0].__class__ if default else str
            elif default not in (None, EMPTY):
                type = default.__class__
            else:
                type = str

        is_bool = is_type(type, bool)
        is_enum = is_type(type, Enum)

        if is_bool:
            type = None
            metavar = None
        elif is_enum and not choices:
            choices = type

        if is_positional and (short_option or long_option):
            raise CommandError(
                f"Positional arg {name} cannot be specified with options"
            )

        if container:
            action = ContainerAction.make(container)
            nargs = "+" if is_positional else "*"
        elif is_bool:
            action = "store_true"
            nargs = None
        else:
            action = None
            nargs = None

        options = tuple(opt for opt in (short_option, long_option) if opt)
        if no_inverse or not is_bool:
            inverse_options = ()
        else:
            inverse_options = tuple(
                opt for opt in (inverse_short_option, inverse_long_option) if opt
            )

        self.command = command
        self.parameter = parameter
        self.is_positional = is_positional
        self.is_optional = is_optional
        self.takes_value = not is_bool
        self.dest = parameter.name
        self.name = name
        self.metavar = metavar
        self.container = container
        self.type = type
        self.is_bool = is_bool
        self.default = default
        self.choices = choices
        self.help = help
        self.short_option = short_option
        self.long_option = long_option
        self.options = options
        self.no_inverse = no_inverse
        self.inverse_options = inverse_options
        self.all_options = options + inverse_options
        self.action = action
        self.nargs = nargs

    @cached_property
    def add_argument_args(self, *, _type_wrapper_cache={}):
        args = self.options
        if self.is_optional and not self.is_bool:
            if self.type not in _type_wrapper_cache:
                type = lambda v: (None if v == "" else self.type(v))  # noqa: E731
                type = update_wrapper(type, self.type)
                _type_wrapper_cache[self.type] = type
            type = _type_wrapper_cache[self.type]
        else:
            type = self.type
        kwargs = {
            "action": self.action,
            "choices": self.choices,
            "dest": self.dest,
            "help": self.help,
            "metavar": self.metavar,
            "nargs": self.nargs,
            "type": type,
        }
        kwargs = {k: v for k, v in kwargs.items() if v is not None}
        return args, kwargs

    @cached_property
    def add_argument_inverse_args(self):
        if not self.inverse_options:
            return None
        _, kwargs = self.add_argument_args
        kwargs = kwargs.copy()
        kwargs["action"] = "store_false"
        kwargs["help"] = None
        return self.inverse_options, kwargs

    def convert_value(self, value):
        """Convert a config file value to this arg's type."""
        if self.container:
            if isinstance(value, (list, tuple)):
                return self.container(self.convert_item(v) for v in value)
            return self.container((self.convert_item(value),))
        return self.convert_item(value)

    def convert_item(self, value):
        if not isinstance(value, str):
            return value
        if self.is_bool:
            if value in ("1", "true"):
                return True
            elif value in ("0", "false"):
                return False
            raise ValueError("Bool value must be one of 1, true, 0, or false")
        converter = self.add_argument_args[1]["type"]
        return converter(value)

    def __str__(self):
        kind = "Positional" if self.is_positional else "Optional"
        has_default = self.default not in (EMPTY, None)
        default = f"[={self.default}]" if has_default else ""
        if self.is_bool:
            type = "flag"
        elif self.type is None:
            type = None
        else:
            type = self.type.__name__
        return f"{kind} arg: {self.name}{default}: type={type}"


class HelpArg(Arg):
    def __init__(self, *, command):
        parameter = Parameter(
            BaseParameter("help", POSITIONAL_OR_KEYWORD, default=False),
        )
        super().__init__(
            command=command,
            parameter=parameter,
            name="help",
            container=None,
            type=bool,
            default=False,
            choices=None,
            help=None,
            short_option="-h",
            long_option="--help",
            no_inverse=True,
            inverse_short_option=None,
            inverse_long_option=None,
        )


class ContainerAction(argparse.Action):

    """Collect the values of a repeatable option into a container."""

    @classmethod
    def make(cls, container_type):
        return builtins.type(
            "ContainerAction", (cls,), {"container_type": container_type}
        )

    def __call__(self, parser, namespace, values, option_string=None):
        existing = getattr(namespace, self.dest, None) or ()
        items = list(existing)
        items.extend(values)
        setattr(namespace, self.dest, self.container_type(items))
