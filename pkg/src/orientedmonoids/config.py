"""Settings and per-command defaults read from config files.

Command defaults come from ``[tool.orientedmonoids.<command>.args]`` in
``pyproject.toml`` or ``[<command>.args]`` in ``orientedmonoids.toml``,
both looked up in the current directory. The search budget can also be
set with the ``ORIENTEDMONOIDS_BUDGET`` environment variable.

"""
import os
from pathlib import Path

import toml

from .exc import CommandError

BUDGET_ENV_VAR = "ORIENTEDMONOIDS_BUDGET"
SLOW_ENV_VAR = "ORIENTEDMONOIDS_SLOW"

DEFAULT_BUDGET = 600.0
DEFAULT_MAX_TABLE_ENTRIES = 10 ** 8
DEFAULT_MAX_PREDICATE_ELEMENTS = 2 * 10 ** 6
DEFAULT_WORKERS = 1

CONFIG_FILE_NAME = "orientedmonoids.toml"


class Settings:

    """Resolved library settings.

    Args:
        budget (float): Default time budget in seconds for endomorphism
            searches.
        max_table_entries (int): Largest Cayley table (|S|²) that will
            be materialized.
        max_predicate_elements (int): Upper bound on the number of
            candidates generated when enumerating a kind by predicate.
        workers (int): Default number of search worker processes.

    """

    def __init__(
        self,
        budget=DEFAULT_BUDGET,
        max_table_entries=DEFAULT_MAX_TABLE_ENTRIES,
        max_predicate_elements=DEFAULT_MAX_PREDICATE_ELEMENTS,
        workers=DEFAULT_WORKERS,
    ):
        self.budget = budget
        self.max_table_entries = max_table_entries
        self.max_predicate_elements = max_predicate_elements
        self.workers = workers

    @classmethod
    def from_environ(cls, environ=None):
        environ = os.environ if environ is None else environ
        budget = environ.get(BUDGET_ENV_VAR)
        if budget in (None, ""):
            return cls()
        try:
            budget = float(budget)
        except ValueError:
            raise CommandError(
                f"Expected a number of seconds for {BUDGET_ENV_VAR}; got {budget!r}"
            ) from None
        if budget <= 0:
            raise CommandError(f"{BUDGET_ENV_VAR} must be positive; got {budget}")
        return cls(budget=budget)

    def resolve_budget(self, budget=None):
        """An explicit budget wins over the configured one."""
        return self.budget if budget is None else float(budget)

    def __repr__(self):
        return (
            f"Settings(budget={self.budget}, "
            f"max_table_entries={self.max_table_entries}, "
            f"workers={self.workers})"
        )


settings = Settings.from_environ()


def slow_tests_enabled(environ=None):
    environ = os.environ if environ is None else environ
    return environ.get(SLOW_ENV_VAR, "").lower() in ("1", "true", "yes")


def read_command_config(command_name, directory=None, *, _cache={}):
    """Get the raw default args for a command from config files.

    ``pyproject.toml`` is checked first, then ``orientedmonoids.toml``.
    An empty dict is returned when neither file configures the command.

    .. note:: File contents are cached per path.

    """
    directory = Path.cwd() if directory is None else Path(directory)
    candidates = (
        (directory / "pyproject.toml", ("tool", "orientedmonoids", command_name)),
        (directory / CONFIG_FILE_NAME, (command_name,)),
    )
    for path, segments in candidates:
        if path not in _cache:
            _cache[path] = toml.load(path) if path.is_file() else None
        config = _cache[path]
        if config is None:
            continue
        for segment in segments:
            config = config.get(segment)
            if not isinstance(config, dict):
                break
        else:
            args = config.get("args")
            if args:
                return path, dict(args)
    return None, {}
