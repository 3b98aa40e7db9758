from __future__ import annotations

import numpy as np
import pytest

from rssiqueue.simulate import RadioModel, quantize, rssi_at


@pytest.mark.parametrize(("distance", "expected"), [(1.0, -45.0), (10.0, -65.0), (100.0, -85.0)])
def test_path_loss(distance: float, expected: float):
    assert rssi_at(distance, RadioModel()) == pytest.approx(expected)


def test_decreases_with_distance():
    values = rssi_at(np.linspace(0.5, 30, 50), RadioModel())
    assert (np.diff(values) < 0).all()


@pytest.mark.parametrize("distance", [0.0, -1.0, 0.01])
def test_short_distances_are_clamped(distance: float):
    assert rssi_at(distance, RadioModel()) == rssi_at(0.1, RadioModel()) == pytest.approx(-25.0)


def test_offset_and_shadowing(rng: np.random.Generator):
    radio = RadioModel(shadowing_sigma=4.0)
    assert rssi_at(1.0, radio, offset=3.0) == pytest.approx(-42.0)
    noisy = rssi_at(np.full(5000, 2.0), radio, rng)
    assert np.mean(noisy) == pytest.approx(rssi_at(2.0, radio), abs=0.3)
    assert np.std(noisy) == pytest.approx(4.0, abs=0.3)


def test_noiseless_radio():
    radio = RadioModel().noiseless()
    assert (radio.shadowing_sigma, radio.antenna_offset_range, radio.drop_probability) == (0.0, 0.0, 0.0)
    assert radio.tx_power == -45.0


def test_quantize():
    assert quantize(np.array([-60.4, -60.6, 0.3])).tolist() == [-60, -61, 0]
