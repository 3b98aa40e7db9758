from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

if TYPE_CHECKING:
    import pathlib

SMALL_RUN = """\
seed: 2
pipeline:
  backtracking: 3
model:
  kind: decision_tree
scenario:
  duration: 480
  behaviors:
    - {type: in_queue, slot: 0}
    - {type: in_queue, slot: 1}
    - {type: in_queue, slot: 2}
    - {type: in_queue, slot: 3}
    - {type: in_queue, slot: 4}
    - {type: random_walk}
    - {type: random_walk}
    - {type: static, position: [2.0, 4.0]}
evaluation:
  seeds: 2
  workers: 2
  protocol: {folds: 2}
  classifiers: [decision_tree, naive_bayes]
  sweeps:
    - {name: b, values: [2, 3]}
    - {name: sniffer_count, values: [1]}
logging:
  level: WARNING
"""


@pytest.fixture()
def run_config(tmp_path: pathlib.Path) -> pathlib.Path:
    path = tmp_path / "run.yaml"
    path.write_text(SMALL_RUN)
    return path
