from __future__ import annotations

import argparse
from typing import NoReturn

from rssiqueue.core.exceptions import ConfigError


class UsageError(ConfigError):
    """Invalid command line."""


class ArgumentParser(argparse.ArgumentParser):
    """Raises :class:`UsageError` instead of exiting, so usage errors share the config-error exit code."""

    def error(self, message: str) -> NoReturn:
        msg = f"{self.prog}: {message}"
        raise UsageError(msg)


def _add_run_args(parser: argparse.ArgumentParser, *, seed: bool = True) -> None:
    parser.add_argument("--config", help="Path to the YAML run configuration", default=None)
    if seed:
        parser.add_argument("--seed", help="Seed overriding the configuration and environment", type=int, default=None)
    parser.add_argument("--out", help="Output directory, created if missing", required=True)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="rssiqueue", description="RSSI-only queue detection with multiple BLE sniffers")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    simulate = commands.add_parser("simulate", help="Generate a labeled trace of a simulated queue")
    _add_run_args(simulate)
    simulate.add_argument("--trace", help="Trace file name inside --out", default="trace.tsv")
    simulate.add_argument("--labels", help="Ground-truth file name inside --out", default="labels.tsv")

    extract = commands.add_parser("extract", help="Extract labeled feature vectors from a trace")
    _add_run_args(extract)
    extract.add_argument("--trace", help="Trace file", required=True)
    extract.add_argument("--labels", help="Ground-truth file", required=True)
    extract.add_argument("--features", help="Feature file name inside --out", default="features.tsv")

    train = commands.add_parser("train", help="Train a classifier on labeled feature files")
    _add_run_args(train)
    train.add_argument("--features", help="Labeled feature files", nargs="+", required=True)
    train.add_argument("--model", help="Model file name inside --out", default="model.msgpack")

    classify = commands.add_parser("classify", help="Classify feature vectors with a trained model")
    _add_run_args(classify, seed=False)
    classify.add_argument("--model", help="Model file", required=True)
    classify.add_argument("--features", help="Feature file", required=True)
    classify.add_argument("--predictions", help="Predictions file name inside --out", default="predictions.tsv")

    evaluate = commands.add_parser("evaluate", help="Run the configured parameter sweeps and write a report")
    _add_run_args(evaluate)
    return parser
