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
import logging
import math

import numpy as np
import pytest

from lensmimo.model.arrays import LensArrayGeometry, UpaGeometry, build_lens_geometry
from lensmimo.model.base import Direction, SimulationException
from lensmimo.model.channel import MultipathChannel, PathComponent, grid_aligned_channel
from lensmimo.transceiver.selection import AntennaSelection, rank_elements, select_antennas


def default_lens() -> LensArrayGeometry:
    return build_lens_geometry(10., 10., math.radians(60.), math.radians(120.))


def single_path(direction: Direction) -> MultipathChannel:
    return MultipathChannel([PathComponent(direction, Direction(0., 0.), 0., 1.)])


def test_select_one_hot_paths():
    """
    Test that a one-hot channel with equal path powers selects exactly the focusing elements, one per path.
    """
    lens: LensArrayGeometry = default_lens()
    elements = [(1, 1), (-2, 5), (4, -7)]
    ch: MultipathChannel = grid_aligned_channel(lens, elements, [np.sqrt(1 / 3)] * 3, [0., 10e-9, 20e-9])
    selection: AntennaSelection = select_antennas(ch, lens, 3)
    expected = sorted(lens.element_index(*e) for e in elements)
    assert selection.indices == expected
    assert sorted(selection.assignment.values()) == [0, 1, 2]
    for path, e in enumerate(elements):
        assert selection.assignment[lens.element_index(*e)] == path
    assert selection.captured_fraction == pytest.approx(1.)
    assert selection.paths_served() == [0, 1, 2]


def test_select_single_path():
    """
    Test that a single path selects the element nearest to its focal point.
    """
    lens: LensArrayGeometry = default_lens()
    direction: Direction = Direction(math.asin(0.23), math.asin(0.41 / math.cos(math.asin(0.23))))
    selection: AntennaSelection = select_antennas(single_path(direction), lens, 1)
    assert selection.indices == [lens.element_index(2, 4)]
    assert selection.assignment == {lens.element_index(2, 4): 0}


def test_select_correlated_fraction():
    """
    Test that on a channel with equal power at every element the selection captures exactly m_rf / M of the power
    and keeps the element order.
    """
    rng = np.random.default_rng(5)
    for _ in range(20):
        rows, cols = int(rng.integers(1, 9)), int(rng.integers(1, 9))
        upa: UpaGeometry = UpaGeometry(rows, cols, 0.5, float(rng.uniform(0.1, 2.)))
        m_rf: int = int(rng.integers(1, rows * cols + 1))
        direction: Direction = Direction(rng.uniform(-0.5, 0.5), rng.uniform(-1., 1.))
        selection: AntennaSelection = select_antennas(single_path(direction), upa, m_rf)
        assert selection.captured_fraction == pytest.approx(m_rf / (rows * cols), rel=1e-12)
        assert selection.indices == list(range(m_rf))


def test_select_too_many(caplog):
    """
    Test that asking for more RF chains than elements selects all elements with a warning.
    """
    upa: UpaGeometry = UpaGeometry(2, 2)
    with caplog.at_level(logging.WARNING, logger='lensmimo'):
        selection: AntennaSelection = select_antennas(single_path(Direction(0., 0.)), upa, 10)
    assert selection.indices == [0, 1, 2, 3]
    assert 'selecting all elements' in caplog.text


def test_select_errors():
    """
    Test the rejection of a selection without RF chains.
    """
    with pytest.raises(SimulationException):
        select_antennas(single_path(Direction(0., 0.)), UpaGeometry(2, 2), 0)


def test_rank_elements():
    """
    Test ranking with ties broken by element order.
    """
    assert rank_elements(np.array([1., 3., 3., 2.])).tolist() == [1, 2, 3, 0]
    assert rank_elements(np.array([0., 0., 0.])).tolist() == [0, 1, 2]
    assert rank_elements(np.array([1., 1. + 1e-15, 1.])).tolist() == [0, 1, 2]
