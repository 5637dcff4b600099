# -*- coding: utf-8 -*-
"""
Copyright © 2026 Lens MIMO Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
import itertools
import math

import numpy as np
import pytest

from lensmimo.model.base import SimulationException
from lensmimo.transceiver.waterfilling import WaterfillingResult, capacity_logdet, eigen_gains, sum_rate, waterfill


def enumeration_oracle(gains: np.ndarray, total_power: float) -> float:
    """Best rate over all active sets with a feasible common water level."""
    best: float = 0.
    positive = [i for i in range(gains.size) if gains[i] > 0]
    for size in range(1, len(positive) + 1):
        for active in itertools.combinations(positive, size):
            g = gains[list(active)]
            level: float = (total_power + float(np.sum(1. / g))) / size
            if np.all(level - 1. / g >= 0):
                best = max(best, float(np.sum(np.log2(g * level))))
    return best


def test_waterfill_symmetric():
    """
    Test four equal channels.
    """
    result: WaterfillingResult = waterfill([1., 1., 1., 1.], 4.)
    assert result.powers == pytest.approx([1., 1., 1., 1.])
    assert result.rate == pytest.approx(4.)
    assert result.water_level == pytest.approx(2.)


def test_waterfill_single_channel():
    """
    Test a single channel receiving the full budget.
    """
    result: WaterfillingResult = waterfill([3.], 2.)
    assert result.powers == pytest.approx([2.])
    assert result.rate == pytest.approx(math.log2(7.))


def test_waterfill_two_channels_grid():
    """
    Test two channels against a grid search over the split of the budget at resolution 1e-6.
    """
    p1: np.ndarray = np.linspace(0., 1., 1_000_001)
    grid: np.ndarray = np.log2(1. + 2. * p1) + np.log2(1. + 0.5 * (1. - p1))
    result: WaterfillingResult = waterfill([2., 0.5], 1.)
    assert abs(result.rate - float(np.max(grid))) < 1e-6
    assert result.powers[0] == pytest.approx(float(p1[np.argmax(grid)]), abs=1e-5)


def test_waterfill_enumeration_oracle():
    """
    Test random instances with up to six gains against the enumeration of all active sets.
    """
    rng = np.random.default_rng(1234)
    for _ in range(1000):
        n: int = int(rng.integers(1, 7))
        gains: np.ndarray = rng.exponential(1., size=n)
        total_power: float = float(rng.uniform(0.05, 10.))
        result: WaterfillingResult = waterfill(gains, total_power)
        assert abs(result.rate - enumeration_oracle(gains, total_power)) < 1e-6
        assert abs(float(np.sum(result.powers)) - total_power) < 1e-9 * total_power
        assert np.all(result.powers >= 0)


def test_waterfill_beats_random_allocations():
    """
    Test that no random feasible allocation exceeds the water-filling rate.
    """
    rng = np.random.default_rng(99)
    for _ in range(20):
        n: int = int(rng.integers(2, 7))
        gains: np.ndarray = rng.exponential(1., size=n)
        total_power: float = float(rng.uniform(0.1, 5.))
        best: float = waterfill(gains, total_power).rate
        allocations: np.ndarray = rng.dirichlet(np.ones(n), size=10_000) * total_power
        rates: np.ndarray = np.sum(np.log2(1. + allocations * gains[np.newaxis, :]), axis=1)
        assert float(np.max(rates)) <= best + 1e-12


def test_waterfill_kkt():
    """
    Test the water-filling structure: active channels share the level, inactive channels lie above it.
    """
    gains: np.ndarray = np.array([5., 1., 0.2, 0.01])
    result: WaterfillingResult = waterfill(gains, 1.)
    active = result.powers > 0
    assert np.allclose(result.powers[active] + 1. / gains[active], result.water_level)
    assert np.all(1. / gains[~active] >= result.water_level - 1e-12)
    assert result.powers[3] == 0.


def test_waterfill_zero_gains():
    """
    Test channels without gain.
    """
    empty: WaterfillingResult = waterfill([0., 0.], 1.)
    assert empty.powers.size == 0
    assert empty.rate == 0.
    mixed: WaterfillingResult = waterfill([0., 1.], 1.)
    assert mixed.powers == pytest.approx([0., 1.])
    assert mixed.rate == pytest.approx(1.)


def test_waterfill_errors():
    """
    Test invalid budgets and gains.
    """
    with pytest.raises(SimulationException):
        waterfill([1.], 0.)
    with pytest.raises(SimulationException):
        waterfill([1., -1.], 1.)
    with pytest.raises(SimulationException):
        waterfill([float('inf')], 1.)


def test_eigen_gains_and_capacity():
    """
    Test the eigenmode gains and the log-det capacity of a diagonal channel.
    """
    h: np.ndarray = np.array([[2., 0., 0.], [0., 0.5j, 0.]])
    assert eigen_gains(h) == pytest.approx([4., 0.25])
    stack: np.ndarray = np.stack([h, 2 * h])
    assert eigen_gains(stack).shape == (2, 2)
    expected: float = waterfill([40., 2.5], 1.).rate
    assert capacity_logdet(h, 10.) == pytest.approx(expected, rel=1e-12)
    assert sum_rate(np.array([1., 0.]), np.array([1., 5.])) == pytest.approx(1.)
    assert capacity_logdet(np.zeros((2, 2)), 10.) == 0.
