"""Versioned tab-separated files exchanged between the commands."""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING, Optional, Union

from msgspec import Struct

from rssiqueue.core import BINARY_FEATURES, FEATURE_NAMES, AdvertisingPacket, FeatureVector, Label
from rssiqueue.core.exceptions import DataFileError, SchemaVersionError

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Mapping, Sequence

PathLike = Union[str, Path]

TRACE_MAGIC = "#rssiqueue-trace"
LABELS_MAGIC = "#rssiqueue-labels"
FEATURES_MAGIC = "#rssiqueue-features"
PREDICTIONS_MAGIC = "#rssiqueue-predictions"
FORMAT_VERSION = 1
MISSING = "NA"
FEATURE_COLUMNS: tuple[str, ...] = ("device", "window", *FEATURE_NAMES, "label")
PREDICTION_COLUMNS: tuple[str, ...] = ("device", "window", "predicted")


class LabelGrid(Struct, frozen=True):
    epoch_ms: int
    window_ms: int


class FeatureRecord(Struct, frozen=True):
    features: FeatureVector
    label: Optional[Label] = None


def _write_lines(path: PathLike, lines: Iterable[str]) -> None:
    try:
        with Path(path).open("w", encoding="utf-8", newline="\n") as file:
            for line in lines:
                file.write(line)
                file.write("\n")
    except OSError as error:
        msg = f"Cannot write {path}: {error}"
        raise DataFileError(msg) from error


def _read_lines(path: PathLike) -> list[str]:
    try:
        return Path(path).read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as error:
        msg = f"Cannot read {path}: {error}"
        raise DataFileError(msg) from error


def _check_header(path: PathLike, lines: Sequence[str], magic: str) -> list[str]:
    """Validate the ``<magic> <version> [key=value ...]`` first line and return its extra fields."""
    if not lines or lines[0].split()[:1] != [magic]:
        msg = f"{path} does not start with a {magic!r} header"
        raise DataFileError(msg)
    fields = lines[0].split()
    try:
        version = int(fields[1])
    except (IndexError, ValueError) as error:
        msg = f"{path} has a malformed header line {lines[0]!r}"
        raise DataFileError(msg) from error
    if version != FORMAT_VERSION:
        msg = f"{path} has format version {version}, expected {FORMAT_VERSION}"
        raise SchemaVersionError(msg)
    return fields[2:]


def _rows(path: PathLike, lines: Sequence[str], start: int, width: int) -> Iterator[tuple[int, list[str]]]:
    for number, line in enumerate(lines[start:], start=start + 1):
        if not line.strip():
            continue
        row = line.split("\t")
        if len(row) != width:
            msg = f"{path}:{number}: expected {width} tab-separated fields, got {len(row)}"
            raise DataFileError(msg)
        yield number, row


def _check_device(device: str) -> None:
    if not device or any(char.isspace() for char in device):
        msg = f"Device id {device!r} must be non-empty and must not contain whitespace"
        raise DataFileError(msg)


#########
# TRACE #
#########


def write_trace(path: PathLike, packets: Iterable[AdvertisingPacket]) -> None:
    def lines() -> Iterator[str]:
        yield f"{TRACE_MAGIC} {FORMAT_VERSION}"
        for packet in packets:
            _check_device(packet.device)
            yield f"{packet.t}\t{packet.sniffer}\t{packet.device}\t{packet.rssi}"

    _write_lines(path, lines())


def read_trace(path: PathLike) -> list[AdvertisingPacket]:
    """Read a trace in file order; lines need not be sorted by time.

    Raises:
        DataFileError: On malformed lines or invalid packets
        SchemaVersionError: If the file has another format version
    """
    lines = _read_lines(path)
    _check_header(path, lines, TRACE_MAGIC)
    packets: list[AdvertisingPacket] = []
    for number, (t, sniffer, device, rssi) in _rows(path, lines, 1, 4):
        try:
            packets.append(AdvertisingPacket(t=int(t), sniffer=int(sniffer), device=device, rssi=int(rssi)))
        except ValueError as error:
            msg = f"{path}:{number}: invalid packet: {error}"
            raise DataFileError(msg) from error
    return packets


##########
# LABELS #
##########


def write_labels(path: PathLike, labels: Mapping[tuple[str, int], Label], grid: LabelGrid) -> None:
    def lines() -> Iterator[str]:
        yield f"{LABELS_MAGIC} {FORMAT_VERSION} epoch_ms={grid.epoch_ms} window_ms={grid.window_ms}"
        for device, window in sorted(labels):
            _check_device(device)
            yield f"{device}\t{window}\t{labels[device, window].value}"

    _write_lines(path, lines())


def read_labels(path: PathLike) -> tuple[dict[tuple[str, int], Label], LabelGrid]:
    lines = _read_lines(path)
    extra = _check_header(path, lines, LABELS_MAGIC)
    try:
        grid_fields = dict(field.split("=", 1) for field in extra)
        grid = LabelGrid(epoch_ms=int(grid_fields["epoch_ms"]), window_ms=int(grid_fields["window_ms"]))
    except (KeyError, ValueError) as error:
        msg = f"{path} header must carry epoch_ms=<int> and window_ms=<int>, got {lines[0]!r}"
        raise DataFileError(msg) from error
    labels: dict[tuple[str, int], Label] = {}
    for number, (device, window, label) in _rows(path, lines, 1, 3):
        try:
            labels[device, int(window)] = Label(label)
        except ValueError as error:
            msg = f"{path}:{number}: invalid label row: {error}"
            raise DataFileError(msg) from error
    return labels, grid


############
# FEATURES #
############


def _format_value(name: str, value: Optional[float]) -> str:
    if value is None:
        return MISSING
    if name in BINARY_FEATURES:
        return str(int(value))
    # shortest repr that reads back to the same float
    return repr(float(value))


def write_features(path: PathLike, records: Iterable[FeatureRecord]) -> None:
    def lines() -> Iterator[str]:
        yield f"{FEATURES_MAGIC} {FORMAT_VERSION}"
        yield "\t".join(FEATURE_COLUMNS)
        for record in records:
            vector = record.features
            _check_device(vector.device)
            values = [_format_value(name, value) for name, value in zip(FEATURE_NAMES, vector.values())]
            label = record.label.value if record.label is not None else MISSING
            yield "\t".join([vector.device, str(vector.window), *values, label])

    _write_lines(path, lines())


def _parse_float(raw: str) -> Optional[float]:
    return None if raw == MISSING else float(raw)


def read_features(path: PathLike) -> list[FeatureRecord]:
    lines = _read_lines(path)
    _check_header(path, lines, FEATURES_MAGIC)
    if len(lines) < 2 or tuple(lines[1].split("\t")) != FEATURE_COLUMNS:  # noqa: PLR2004
        msg = f"{path} must have the tab-separated column row {' '.join(FEATURE_COLUMNS)}"
        raise DataFileError(msg)
    records: list[FeatureRecord] = []
    for number, row in _rows(path, lines, 2, len(FEATURE_COLUMNS)):
        device, window, *values, label = row
        try:
            f1, f2, f3, f4, f5, f6, f7, f8, f9 = values
            vector = FeatureVector(
                device=device,
                window=int(window),
                f1=float(f1),
                f2=int(f2),
                f3=int(f3),
                f4=_parse_float(f4),
                f5=_parse_float(f5),
                f6=_parse_float(f6),
                f7=float(f7),
                f8=int(f8),
                f9=_parse_float(f9),
            )
            records.append(FeatureRecord(features=vector, label=None if label == MISSING else Label(label)))
        except ValueError as error:
            msg = f"{path}:{number}: invalid feature row: {error}"
            raise DataFileError(msg) from error
    return records


###############
# PREDICTIONS #
###############


def write_predictions(path: PathLike, predictions: Iterable[tuple[str, int, Label]]) -> None:
    def lines() -> Iterator[str]:
        yield f"{PREDICTIONS_MAGIC} {FORMAT_VERSION}"
        yield "\t".join(PREDICTION_COLUMNS)
        for device, window, label in predictions:
            yield f"{device}\t{window}\t{label.value}"

    _write_lines(path, lines())


def read_predictions(path: PathLike) -> list[tuple[str, int, Label]]:
    lines = _read_lines(path)
    _check_header(path, lines, PREDICTIONS_MAGIC)
    predictions: list[tuple[str, int, Label]] = []
    for number, (device, window, label) in _rows(path, lines, 2, 3):
        try:
            predictions.append((device, int(window), Label(label)))
        except ValueError as error:
            msg = f"{path}:{number}: invalid prediction row: {error}"
            raise DataFileError(msg) from error
    return predictions
