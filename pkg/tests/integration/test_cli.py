from __future__ import annotations

from typing import TYPE_CHECKING

from rssiqueue.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, main
from rssiqueue.cli.formats import read_features, read_labels, read_predictions, read_trace

if TYPE_CHECKING:
    import pathlib


def _simulate(run_config: pathlib.Path, out: pathlib.Path, *extra: str) -> None:
    assert main(["simulate", "--config", str(run_config), "--out", str(out), *extra]) == EXIT_OK


def _extract(run_config: pathlib.Path, out: pathlib.Path) -> pathlib.Path:
    argv = ["extract", "--config", str(run_config), "--out", str(out)]
    argv += ["--trace", str(out / "trace.tsv"), "--labels", str(out / "labels.tsv")]
    assert main(argv) == EXIT_OK
    return out / "features.tsv"


class TestPipeline:
    def test_simulate_is_reproducible(self, run_config: pathlib.Path, tmp_path: pathlib.Path):
        _simulate(run_config, tmp_path / "a")
        _simulate(run_config, tmp_path / "b")
        _simulate(run_config, tmp_path / "c", "--seed", "3")
        for name in ("trace.tsv", "labels.tsv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
        assert (tmp_path / "a" / "trace.tsv").read_bytes() != (tmp_path / "c" / "trace.tsv").read_bytes()

        trace = read_trace(tmp_path / "a" / "trace.tsv")
        labels, grid = read_labels(tmp_path / "a" / "labels.tsv")
        assert grid.epoch_ms == min(packet.t for packet in trace)
        assert {device for device, _ in labels} == {packet.device for packet in trace}

    def test_unpruned_tree_memorizes_training_features(self, run_config: pathlib.Path, tmp_path: pathlib.Path):
        _simulate(run_config, tmp_path)
        features = _extract(run_config, tmp_path)
        argv = ["train", "--config", str(run_config), "--out", str(tmp_path), "--features", str(features)]
        assert main(argv) == EXIT_OK
        argv = ["classify", "--out", str(tmp_path), "--model", str(tmp_path / "model.msgpack")]
        assert main([*argv, "--features", str(features)]) == EXIT_OK

        records = read_features(features)
        predictions = read_predictions(tmp_path / "predictions.tsv")
        assert [(p[0], p[1]) for p in predictions] == [(r.features.device, r.features.window) for r in records]
        assert [p[2] for p in predictions] == [r.label for r in records]
        assert {r.label.value for r in records if r.label is not None} == {"in-queue", "not-in-queue"}

    def test_training_is_reproducible(self, run_config: pathlib.Path, tmp_path: pathlib.Path):
        _simulate(run_config, tmp_path)
        features = _extract(run_config, tmp_path)
        for name in ("first", "second"):
            argv = ["train", "--config", str(run_config), "--out", str(tmp_path / name), "--features", str(features)]
            assert main(argv) == EXIT_OK
        first, second = (tmp_path / name / "model.msgpack" for name in ("first", "second"))
        assert first.read_bytes() == second.read_bytes()

    def test_evaluate_writes_a_report(self, run_config: pathlib.Path, tmp_path: pathlib.Path):
        assert main(["evaluate", "--config", str(run_config), "--out", str(tmp_path)]) == EXIT_OK
        lines = (tmp_path / "report.tsv").read_text().splitlines()
        # 3 sweep points, 2 classifiers each
        assert len(lines) == 1 + 6
        assert (tmp_path / "report.json").exists()
        assert "Queue detection accuracy" in (tmp_path / "report.txt").read_text()

    def test_reruns_are_byte_identical(self, run_config: pathlib.Path, tmp_path: pathlib.Path):
        _simulate(run_config, tmp_path)
        inputs = ["--trace", str(tmp_path / "trace.tsv"), "--labels", str(tmp_path / "labels.tsv")]
        features = tmp_path / "features.tsv"
        runs = (tmp_path / "first", tmp_path / "second")
        for out in runs:
            assert main(["extract", "--config", str(run_config), "--out", str(out), *inputs]) == EXIT_OK
        assert (runs[0] / "features.tsv").read_bytes() == (runs[1] / "features.tsv").read_bytes()

        features.write_bytes((runs[0] / "features.tsv").read_bytes())
        argv = ["train", "--config", str(run_config), "--out", str(tmp_path), "--features", str(features)]
        assert main(argv) == EXIT_OK
        for out in runs:
            argv = ["classify", "--out", str(out), "--model", str(tmp_path / "model.msgpack")]
            assert main([*argv, "--features", str(features)]) == EXIT_OK
            assert main(["evaluate", "--config", str(run_config), "--out", str(out)]) == EXIT_OK
        for name in ("predictions.tsv", "report.tsv", "report.json", "report.txt"):
            assert (runs[0] / name).read_bytes() == (runs[1] / name).read_bytes(), name


class TestExitCodes:
    def test_usage(self, tmp_path: pathlib.Path):
        assert main(["teleport"]) == EXIT_USAGE
        assert main(["simulate"]) == EXIT_USAGE

    def test_invalid_config(self, tmp_path: pathlib.Path):
        path = tmp_path / "bad.yaml"
        path.write_text("pipeline: {alpha: 3}\n")
        assert main(["simulate", "--config", str(path), "--out", str(tmp_path)]) == EXIT_USAGE

    def test_missing_model(self, tmp_path: pathlib.Path):
        features = tmp_path / "features.tsv"
        features.write_text("#rssiqueue-features 1\n")
        argv = ["classify", "--out", str(tmp_path), "--model", str(tmp_path / "absent.msgpack")]
        assert main([*argv, "--features", str(features)]) == EXIT_DATA

    def test_malformed_trace(self, run_config: pathlib.Path, tmp_path: pathlib.Path):
        (tmp_path / "trace.tsv").write_text("#rssiqueue-trace 1\n1000\t1\n")
        (tmp_path / "labels.tsv").write_text("#rssiqueue-labels 1 epoch_ms=1000 window_ms=60000\n")
        argv = ["extract", "--config", str(run_config), "--out", str(tmp_path)]
        argv += ["--trace", str(tmp_path / "trace.tsv"), "--labels", str(tmp_path / "labels.tsv")]
        assert main(argv) == EXIT_DATA

    def test_labels_on_another_grid(self, run_config: pathlib.Path, tmp_path: pathlib.Path):
        _simulate(run_config, tmp_path)
        labels = tmp_path / "labels.tsv"
        lines = labels.read_text().splitlines()
        lines[0] = "#rssiqueue-labels 1 epoch_ms=0 window_ms=30000"
        labels.write_text("\n".join(lines) + "\n")
        argv = ["extract", "--config", str(run_config), "--out", str(tmp_path)]
        assert main([*argv, "--trace", str(tmp_path / "trace.tsv"), "--labels", str(labels)]) == EXIT_DATA

    def test_single_class_training_data(self, run_config: pathlib.Path, tmp_path: pathlib.Path):
        _simulate(run_config, tmp_path)
        features = _extract(run_config, tmp_path)
        kept = [line for line in features.read_text().splitlines() if not line.endswith("\tin-queue")]
        features.write_text("\n".join(kept) + "\n")
        argv = ["train", "--config", str(run_config), "--out", str(tmp_path), "--features", str(features)]
        assert main(argv) == EXIT_DATA
