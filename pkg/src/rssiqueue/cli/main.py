from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from rich.console import Console

from rssiqueue.cli.args import build_parser
from rssiqueue.cli.commands import COMMANDS
from rssiqueue.core.exceptions import ConfigError, RssiQueueError, SchemaVersionError
from rssiqueue.core.logging import clear_log_context, set_log_context

if TYPE_CHECKING:
    from collections.abc import Sequence

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

error_console = Console(stderr=True)


def _report(error: BaseException) -> None:
    error_console.print(f"rssiqueue: error: {error}", style="bold red", markup=False, highlight=False)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand. Exit codes: 0 success, 1 usage or configuration error, 2 data error."""
    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
        set_log_context(command=args.command)
        return COMMANDS[args.command](args)
    except (ConfigError, SchemaVersionError) as error:
        _report(error)
        return EXIT_USAGE
    except (RssiQueueError, OSError) as error:
        _report(error)
        return EXIT_DATA
    finally:
        clear_log_context()
