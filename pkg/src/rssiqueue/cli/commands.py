from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING, Callable

from rich.console import Console
from rich.table import Table

from rssiqueue.classify import Dataset, load_model, predict_many, save_model, train
from rssiqueue.cli.config import load_run_config
from rssiqueue.cli.formats import (
    FeatureRecord,
    LabelGrid,
    read_features,
    read_labels,
    read_trace,
    write_features,
    write_labels,
    write_predictions,
    write_trace,
)
from rssiqueue.cli.harness import run_sweeps
from rssiqueue.cli.report import render_table, write_report
from rssiqueue.core import LabeledExample, seconds_to_ms
from rssiqueue.core.exceptions import DataFileError
from rssiqueue.core.logging import LoggingConfig, configure_logging, get_logger
from rssiqueue.pipeline import build_features, label_features
from rssiqueue.simulate import simulate
from rssiqueue.store import PacketStore

if TYPE_CHECKING:
    import argparse

    from rssiqueue.cli.config import RunConfig

logger = get_logger(__name__)
console = Console()


def _prepare(args: argparse.Namespace) -> RunConfig:
    config = load_run_config(args.config, seed=getattr(args, "seed", None))
    configure_logging(config.logging)
    return config


def _out_dir(path: str) -> Path:
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as error:
        msg = f"Cannot create output directory {out}: {error}"
        raise DataFileError(msg) from error
    return out


def _summary(title: str, **values: object) -> None:
    table = Table(title=title, show_header=False)
    table.add_column("name")
    table.add_column("value", justify="right")
    for name, value in values.items():
        table.add_row(name.replace("_", " "), str(value))
    console.print(table)


def cmd_simulate(args: argparse.Namespace) -> int:
    config = _prepare(args)
    scenario = config.scenario_spec()
    packets, truth = simulate(scenario)
    out = _out_dir(args.out)
    epoch = packets[0].t if packets else 0
    window_ms = seconds_to_ms(config.pipeline.window_duration)
    write_trace(out / args.trace, packets)
    grid = LabelGrid(epoch_ms=epoch, window_ms=window_ms)
    write_labels(out / args.labels, truth.window_labels(epoch, window_ms), grid)
    logger.info("trace written", path=str(out / args.trace), packets=len(packets))
    _summary(
        "Simulated trace",
        devices=len(truth.devices),
        sniffers=len(scenario.sniffers),
        duration_s=scenario.duration,
        packets=len(packets),
        seed=scenario.seed,
    )
    return 0


def cmd_extract(args: argparse.Namespace) -> int:
    config = _prepare(args)
    store = PacketStore(read_trace(args.trace))
    labels, grid = read_labels(args.labels)
    window_ms = seconds_to_ms(config.pipeline.window_duration)
    if store.epoch is not None and (grid.window_ms != window_ms or grid.epoch_ms != store.epoch):
        msg = (
            f"Labels in {args.labels} use the grid epoch_ms={grid.epoch_ms} window_ms={grid.window_ms}, "
            f"but the trace and configuration give epoch_ms={store.epoch} window_ms={window_ms}"
        )
        raise DataFileError(msg)
    dataset = label_features(build_features(store, config.pipeline, config.scenario.deployment()), labels)
    out = _out_dir(args.out)
    write_features(
        out / args.features,
        (FeatureRecord(features=example.features, label=example.label) for example in dataset.examples),
    )
    _summary("Extracted features", packets=len(store), devices=len(store.devices()), vectors=len(dataset))
    return 0


def cmd_train(args: argparse.Namespace) -> int:
    config = _prepare(args)
    examples: list[LabeledExample] = []
    for path in args.features:
        for record in read_features(path):
            if record.label is None:
                msg = f"{path} has an unlabeled row for ({record.features.device}, {record.features.window})"
                raise DataFileError(msg)
            examples.append(LabeledExample(features=record.features, label=record.label))
    dataset = Dataset(examples=tuple(examples))
    spec = config.model_spec()
    model = train(dataset, spec, config_hash=config.pipeline.fingerprint())
    out = _out_dir(args.out)
    try:
        save_model(out / args.model, model)
    except OSError as error:
        msg = f"Cannot write model {out / args.model}: {error}"
        raise DataFileError(msg) from error
    _summary("Trained model", classifier=spec.kind.value, examples=len(dataset), **dataset.class_counts())
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    if args.config is not None:
        _prepare(args)
    else:
        configure_logging(LoggingConfig())
    try:
        model = load_model(args.model)
    except OSError as error:
        msg = f"Cannot read model {args.model}: {error}"
        raise DataFileError(msg) from error
    vectors = [record.features for record in read_features(args.features)]
    predicted = predict_many(model, vectors)
    out = _out_dir(args.out)
    write_predictions(
        out / args.predictions,
        ((vector.device, vector.window, label) for vector, label in zip(vectors, predicted)),
    )
    in_queue = sum(label.as_int for label in predicted)
    _summary("Predictions", vectors=len(vectors), in_queue=in_queue, not_in_queue=len(vectors) - in_queue)
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    config = _prepare(args)
    out = _out_dir(args.out)
    rows = run_sweeps(config)
    write_report(out, rows)
    console.print(render_table(rows))
    return 0


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "simulate": cmd_simulate,
    "extract": cmd_extract,
    "train": cmd_train,
    "classify": cmd_classify,
    "evaluate": cmd_evaluate,
}
