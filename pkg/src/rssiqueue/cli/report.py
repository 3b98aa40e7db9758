from __future__ import annotations

import io
from pathlib import Path
from typing import TYPE_CHECKING

import msgspec
from msgspec import structs
from rich.console import Console
from rich.table import Table

from rssiqueue.cli.formats import FORMAT_VERSION, PathLike
from rssiqueue.cli.harness import SweepRow
from rssiqueue.core.exceptions import DataFileError

if TYPE_CHECKING:
    from collections.abc import Sequence

REPORT_COLUMNS: tuple[str, ...] = tuple(field.name for field in structs.fields(SweepRow))


class ReportFile(msgspec.Struct):
    rows: list[SweepRow]
    format: str = "rssiqueue-report"
    version: int = FORMAT_VERSION


def _cell(value: object) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_tsv(rows: Sequence[SweepRow]) -> str:
    lines = ["\t".join(REPORT_COLUMNS)]
    lines.extend("\t".join(_cell(getattr(row, name)) for name in REPORT_COLUMNS) for row in rows)
    return "\n".join(lines) + "\n"


def render_table(rows: Sequence[SweepRow]) -> Table:
    table = Table(title="Queue detection accuracy")
    for header in ("axis", "value", "classifier", "seeds", "examples", "accuracy", "recall in-queue", "status"):
        table.add_column(header, justify="right" if header in ("seeds", "examples") else "left")
    for row in rows:
        table.add_row(
            row.axis,
            row.value,
            row.classifier,
            str(row.seeds),
            str(row.examples),
            f"{row.accuracy_mean:.3f} ± {row.accuracy_std:.3f}",
            f"{row.recall_in_queue:.3f}",
            row.status,
        )
    return table


def render_text(rows: Sequence[SweepRow]) -> str:
    """Plain-text rendering of :func:`render_table` with a fixed width and no colors."""
    buffer = io.StringIO()
    Console(file=buffer, width=140, color_system=None, force_terminal=False, legacy_windows=False).print(
        render_table(rows)
    )
    return buffer.getvalue()


def write_report(out_dir: PathLike, rows: Sequence[SweepRow]) -> list[Path]:
    """Write ``report.tsv``, ``report.json`` and ``report.txt`` into ``out_dir``.

    The metrics of a failed row are NaN: ``nan`` in the TSV and ``null`` in the JSON, where the row's
    ``status`` carries the reason.
    """
    out_dir = Path(out_dir)
    outputs = {
        out_dir / "report.tsv": render_tsv(rows).encode(),
        out_dir / "report.json": msgspec.json.format(msgspec.json.encode(ReportFile(rows=list(rows)))) + b"\n",
        out_dir / "report.txt": render_text(rows).encode(),
    }
    try:
        for path, content in outputs.items():
            path.write_bytes(content)
    except OSError as error:
        msg = f"Cannot write the report into {out_dir}: {error}"
        raise DataFileError(msg) from error
    return list(outputs)
