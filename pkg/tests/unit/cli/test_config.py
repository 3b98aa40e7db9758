from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

from rssiqueue.classify import ModelKind
from rssiqueue.cli.config import SweepAxis, load_run_config, read_yaml
from rssiqueue.core.exceptions import ConfigError

if TYPE_CHECKING:
    import pathlib


@pytest.fixture()
def config_file(tmp_path: pathlib.Path) -> pathlib.Path:
    path = tmp_path / "run.yaml"
    path.write_text(
        "seed: 3\n"
        "pipeline:\n"
        "  alpha: 0.5\n"
        "  backtracking: 6\n"
        "model:\n"
        "  kind: decision_tree\n"
        "scenario:\n"
        "  duration: 300\n"
        "  behaviors:\n"
        "    - {type: in_queue, slot: 0}\n"
        "    - {type: static, position: [2.0, 4.0]}\n"
        "evaluation:\n"
        "  seeds: 2\n"
        "  sweeps:\n"
        "    - {name: classifier, values: [naive_bayes]}\n"
    )
    return path


class TestLoadRunConfig:
    def test_defaults(self):
        config = load_run_config()
        assert config.seed == 0
        assert config.pipeline.backtracking == 8
        assert config.model.kind is ModelKind.RANDOM_FOREST
        assert len(config.scenario.behaviors) == 12
        assert config.evaluation.seeds == 10

    def test_file(self, config_file: pathlib.Path):
        config = load_run_config(config_file)
        assert config.seed == 3
        assert (config.pipeline.alpha, config.pipeline.backtracking) == (0.5, 6)
        assert config.model.kind is ModelKind.DECISION_TREE
        assert config.scenario.device_names() == ["queue-0", "static-0"]
        assert config.evaluation.sweeps == (SweepAxis(name="classifier", values=("naive_bayes",)),)

    def test_environment_overrides_file(self, config_file: pathlib.Path, monkeypatch: pytest.MonkeyPatch):
        monkeypatch.setenv("RSSIQUEUE_SEED", "11")
        monkeypatch.setenv("RSSIQUEUE_PIPELINE__BACKTRACKING", "4")
        config = load_run_config(config_file)
        assert config.seed == 11
        assert (config.pipeline.alpha, config.pipeline.backtracking) == (0.5, 4)

    def test_seed_argument_wins(self, config_file: pathlib.Path, monkeypatch: pytest.MonkeyPatch):
        monkeypatch.setenv("RSSIQUEUE_SEED", "11")
        assert load_run_config(config_file, seed=42).seed == 42

    def test_run_seed_reaches_scenario_and_model(self, config_file: pathlib.Path):
        config = load_run_config(config_file, seed=5)
        assert config.scenario_spec().seed == 5
        assert config.scenario_spec(2).seed == 7
        assert config.model_spec().seed == 5
        assert config.model_spec(ModelKind.NAIVE_BAYES).kind is ModelKind.NAIVE_BAYES

    def test_pinned_scenario_seed(self, tmp_path: pathlib.Path):
        path = tmp_path / "run.yaml"
        path.write_text("seed: 1\nscenario: {seed: 100}\nmodel: {seed: 9}\n")
        config = load_run_config(path)
        assert config.scenario_spec(1).seed == 101
        assert config.model_spec().seed == 9

    @pytest.mark.parametrize(
        "content",
        [
            "unknown: 1\n",
            "pipeline: {alpha: 2}\n",
            "pipeline: {aggregation_period: 90}\n",
            "model: {kind: svm}\n",
            "seed: -1\n",
        ],
    )
    def test_invalid(self, tmp_path: pathlib.Path, content: str):
        path = tmp_path / "run.yaml"
        path.write_text(content)
        with pytest.raises(ConfigError, match="validation error"):
            load_run_config(path)

    def test_negative_seed_argument(self):
        with pytest.raises(ConfigError):
            load_run_config(seed=-1)


class TestReadYaml:
    def test_empty_file(self, tmp_path: pathlib.Path):
        path = tmp_path / "run.yaml"
        path.write_text("")
        assert read_yaml(path) == {}

    @pytest.mark.parametrize("content", ["- a\n- b\n", "key: [unclosed\n"])
    def test_not_a_mapping(self, tmp_path: pathlib.Path, content: str):
        path = tmp_path / "run.yaml"
        path.write_text(content)
        with pytest.raises(ConfigError):
            read_yaml(path)

    def test_missing(self, tmp_path: pathlib.Path):
        with pytest.raises(ConfigError, match="Error reading"):
            read_yaml(tmp_path / "absent.yaml")


class TestSweepAxis:
    @pytest.mark.parametrize(
        ("name", "values"),
        [
            ("b", (2, 4)),
            ("window_duration", (30, 60.0)),
            ("sniffer_count", (1, 2, 3)),
            ("classifier", ("random_forest",)),
            ("feature_groups", ("single_device", "single_device+cross_sniffer")),
        ],
    )
    def test_valid(self, name: str, values: tuple):
        assert SweepAxis(name=name, values=values).values == values

    @pytest.mark.parametrize(
        ("name", "values"),
        [
            ("b", (0,)),
            ("b", ("4",)),
            ("sniffer_count", (4,)),
            ("window_duration", (-1,)),
            ("classifier", ("svm",)),
            ("feature_groups", ("single_device+radio",)),
            ("b", ()),
            ("alpha", (0.5,)),
        ],
    )
    def test_invalid(self, name: str, values: tuple):
        with pytest.raises(ValueError):
            SweepAxis(name=name, values=values)
