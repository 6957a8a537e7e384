"""Command-line front door for the thompson toolkit.

Subcommands live in ``thompson.cli.commands.*`` and self-register with the
``cli.command`` decorator. Exit codes: 0 success, 1 domain error (the error
code is printed on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Any, TextIO

import yaml

from shared.config import ConfigValidationError, ToolkitConfig, load_config
from shared.telemetry import log_command_invocation, setup_telemetry
from thompson.errors import ThompsonError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CommandResult:
    """Human-readable text plus an optional machine-readable section."""

    text: str = ""
    data: dict[str, Any] | None = None


Handler = Callable[[argparse.Namespace, ToolkitConfig], CommandResult]
Configure = Callable[[argparse.ArgumentParser], None]


@dataclass(frozen=True)
class Command:
    name: str
    help: str
    handler: Handler
    configure: Configure | None
    operations: tuple[str, ...]


class CommandRegistry:
    def __init__(self) -> None:
        self._commands: dict[str, Command] = {}

    def command(
        self,
        name: str,
        help: str,  # noqa: A002
        operations: Sequence[str] = (),
        arguments: Configure | None = None,
    ) -> Callable[[Handler], Handler]:
        """Register a subcommand; ``operations`` names the toolkit operations it exposes."""

        def decorator(handler: Handler) -> Handler:
            if name in self._commands:
                raise ValueError(f"subcommand {name!r} registered twice")
            self._commands[name] = Command(name, help, handler, arguments, tuple(operations))
            return handler

        return decorator

    @property
    def commands(self) -> dict[str, Command]:
        return dict(self._commands)


cli = CommandRegistry()


def _register_commands() -> None:
    """Import command modules to trigger registration."""
    import thompson.cli.commands.elements  # noqa: F401
    import thompson.cli.commands.laws  # noqa: F401
    import thompson.cli.commands.marked  # noqa: F401
    import thompson.cli.commands.structure  # noqa: F401


def build_parser(config: ToolkitConfig) -> argparse.ArgumentParser:
    _register_commands()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=config.law.seed, help="Seed for every random choice")
    common.add_argument(
        "--workers", type=int, default=config.enumeration.workers, help="Worker processes for enumerations"
    )
    common.add_argument(
        "--budget", type=int, default=config.enumeration.budget, help="Cap on words evaluated by enumerations"
    )
    parser = argparse.ArgumentParser(prog="thompson", description="Exact computations in Thompson's group F.")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for command in cli.commands.values():
        sub = subparsers.add_parser(command.name, help=command.help, description=command.help, parents=[common])
        if command.configure is not None:
            command.configure(sub)
    return parser


def emit(result: CommandResult, out: TextIO) -> None:
    if result.text:
        out.write(result.text.rstrip("\n") + "\n")
    if result.data is not None:
        out.write("---\n")
        out.write(yaml.safe_dump(result.data, sort_keys=False))


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        config = load_config()
    except ConfigValidationError as e:
        err.write(f"ConfigError: {e}\n")
        return 2
    setup_telemetry("thompson", config.log_level)
    parser = build_parser(config)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.workers < 1 or args.budget < 1:
        err.write("usage error: --workers and --budget must be positive\n")
        return 2

    command = cli.commands[args.command]
    started = time.perf_counter()
    success = False
    try:
        result = command.handler(args, config)
        emit(result, out)
        success = True
        return 0
    except ThompsonError as e:
        err.write(f"{e.code}: {e.message}\n")
        return 1
    except ValueError as e:
        err.write(f"usage error: {e}\n")
        return 2
    finally:
        elapsed = (time.perf_counter() - started) * 1000
        log_command_invocation(command.name, vars(args), success, elapsed)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
