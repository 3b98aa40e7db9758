from __future__ import annotations

import pytest

from rssiqueue.core import Deployment, PipelineConfig, SnifferId, SnifferRole
from rssiqueue.features import extract_all, mask_feature_groups, restrict_to_counter
from rssiqueue.preprocess import preprocess_trace
from rssiqueue.testing.helpers import feature_vector, packets


def _heard(device: str, sniffer: int, start_s: int, end_s: int, rssi: int = -60, step_s: int = 10):
    return [(t * 1000, sniffer, device, rssi) for t in range(start_s, end_s, step_s)]


class TestExtractAll:
    def test_windows_with_full_history_only(self, pipeline_config: PipelineConfig):
        trace = packets(_heard("a", 1, 0, 600))
        vectors = extract_all(preprocess_trace(trace, pipeline_config), pipeline_config)
        assert [(v.device, v.window) for v in vectors] == [("a", 8), ("a", 9)]

    def test_sorted_by_window_then_device(self, pipeline_config: PipelineConfig):
        trace = packets(_heard("b", 1, 0, 600) + _heard("a", 2, 0, 600))
        vectors = extract_all(preprocess_trace(trace, pipeline_config), pipeline_config)
        assert [(v.window, v.device) for v in vectors] == [(8, "a"), (8, "b"), (9, "a"), (9, "b")]

    def test_absent_from_counter_in_current_window(self, pipeline_config: PipelineConfig):
        rows = _heard("other", 1, 0, 600) + [(t * 1000, 1, "x", -60 - (t // 30) % 5) for t in range(0, 480, 10)]
        streams = preprocess_trace(packets(rows), pipeline_config)
        vector = next(v for v in extract_all(streams, pipeline_config) if v.device == "x" and v.window == 9)
        assert (vector.f1, vector.f2, vector.f3) == (0.0, 0, 0)
        assert vector.f4 is not None
        assert vector.f4 > 0

    def test_device_without_recent_packets_is_skipped(self):
        config = PipelineConfig(backtracking=1)
        rows = _heard("always", 1, 0, 600) + _heard("early", 1, 0, 120)
        vectors = extract_all(preprocess_trace(packets(rows), config), config)
        assert {v.window for v in vectors if v.device == "early"} == {1, 2}

    def test_stay_duration_uses_packet_timestamps(self):
        config = PipelineConfig(backtracking=1)
        # 10 s and 395 s fall into the buckets starting at 0 s and 390 s
        rows = [(0, 1, "other", -60), (10_000, 1, "x", -60), (395_000, 1, "x", -60)]
        vectors = {(v.device, v.window): v for v in extract_all(preprocess_trace(packets(rows), config), config)}
        assert vectors["x", 1].f7 == 0.0
        assert vectors["x", 6].f7 == 385.0

    def test_counter_only_deployment(self, pipeline_config: PipelineConfig):
        rows = _heard("a", 1, 0, 600) + _heard("a", 2, 0, 600) + _heard("a", 3, 0, 600)
        deployment = Deployment(sniffers=(SnifferId(1, SnifferRole.COUNTER),))
        vectors = extract_all(preprocess_trace(packets(rows), pipeline_config), pipeline_config, deployment)
        assert all(v.f5 is None and v.f6 is None and v.f9 is None for v in vectors)
        assert all(v.f4 == 0.0 for v in vectors)

    def test_empty(self, pipeline_config: PipelineConfig):
        assert extract_all([], pipeline_config) == []

    def test_deterministic(self, pipeline_config: PipelineConfig):
        rows = _heard("a", 1, 0, 900, rssi=-70) + _heard("b", 2, 5, 900, rssi=-50)
        streams = preprocess_trace(packets(rows), pipeline_config)
        assert extract_all(streams, pipeline_config) == extract_all(streams, pipeline_config)


class TestMasking:
    def test_restrict_to_counter(self):
        (vector,) = restrict_to_counter([feature_vector(f4=2.0, f5=3.0, f6=4.0, f9=0.5)])
        assert (vector.f4, vector.f5, vector.f6, vector.f9) == (2.0, None, None, None)

    def test_groups(self):
        vector = feature_vector(f1=3.0, f2=1, f3=1, f7=30.0, f8=1, f9=0.5)
        (single,) = mask_feature_groups([vector], ["single_device"])
        assert (single.f1, single.f8, single.f9) == (3.0, 0, None)
        (cross,) = mask_feature_groups([vector], ["cross_device", "cross_sniffer"])
        assert cross.values() == (0.0, 0, 0, None, None, None, 0.0, 1, 0.5)

    def test_unknown_group(self):
        with pytest.raises(ValueError, match="Unknown feature groups"):
            mask_feature_groups([], ["radio"])
