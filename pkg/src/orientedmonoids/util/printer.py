import enum
import sys
from typing import Mapping

from rich.console import Console
from rich.markup import escape

from .enums import Color
from .misc import is_type


class ColorMap:
    def __init__(self, *color_maps):
        for color_map in color_maps:
            self.add_colors(color_map)

    def __getitem__(self, name: str):
        return getattr(self, name)

    def add_colors(self, color_map: Mapping[str, str]):
        if is_type(color_map, enum.Enum):
            items = ((color.name, color) for color in color_map)
        else:
            items = color_map.items()
        for name, color in items:
            setattr(self, name, color)


class Printer:

    """Console output.

    Human-readable messages go to stderr through a rich console.
    Payloads (JSON, CSV, plain result lines) go to stdout, uncolored,
    via :meth:`emit` so that they can be piped and diffed.

    """

    # Symbolic name => color
    color_map = {
        "none": Color.default,
        "rule": Color.magenta,
        "info": Color.blue,
        "success": Color.green,
        "warning": Color.yellow,
        "error": Color.red,
        "debug": Color.cyan,
    }

    def __init__(self, colors: enum.Enum = Color, color_map: Mapping = None):
        self.colors = colors
        self.color_map = ColorMap(colors, self.__class__.color_map)
        if color_map:
            self.color_map.add_colors(color_map)
        self.console = Console(stderr=True, highlight=False)

    def __call__(self, *args, **kwargs):
        self.print(*args, **kwargs)

    def get_color(self, color):
        if color is None:
            return None
        if isinstance(color, self.colors):
            return color
        try:
            return self.color_map[color]
        except AttributeError:
            raise ValueError(f"Unknown color: {color}") from None

    def colorize(self, *args, color=None, sep=" "):
        string = sep.join(escape(str(arg)) for arg in args)
        if color is not None:
            string = f"{self.get_color(color)}{string}"
        return string

    def print(self, *args, color=None, sep=" ", **kwargs):
        string = self.colorize(*args, color=color, sep=sep)
        self.console.print(string, **kwargs)

    def info(self, *args, **kwargs):
        self.print(*args, color=self.color_map.info, **kwargs)

    def success(self, *args, **kwargs):
        self.print(*args, color=self.color_map.success, **kwargs)

    def warning(self, *args, **kwargs):
        self.print(*args, color=self.color_map.warning, **kwargs)

    def error(self, *args, **kwargs):
        self.print(*args, color=self.color_map.error, **kwargs)

    def debug(self, *args, **kwargs):
        self.print(*args, color=self.color_map.debug, **kwargs)

    def check(self, label, passed, detail=None):
        """Print one pass/fail line for a verification check."""
        if passed:
            self.success("PASS", label)
        elif detail:
            self.error("FAIL", label, "--", detail)
        else:
            self.error("FAIL", label)

    def hr(self, *args, color=None, fill_char="─", align="center", **kwargs):
        """Print a horizontal rule with optional title"""
        kwargs["characters"] = fill_char
        kwargs["align"] = align
        if args:
            kwargs["title"] = " ".join(str(a) for a in args)
        if color:
            kwargs["style"] = self.get_color(color).value
        self.console.rule(**kwargs)

    def show(self, renderable):
        """Render a rich object, such as a table, to stdout."""
        Console(highlight=False).print(renderable)

    def emit(self, payload, end="\n"):
        """Write a payload to stdout as is."""
        stream = sys.stdout
        stream.write(payload)
        if end:
            stream.write(end)
        stream.flush()


printer = Printer()
