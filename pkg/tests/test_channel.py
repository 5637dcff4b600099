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
import math

import numpy as np
import pytest

from lensmimo.model.arrays import LensArrayGeometry, UpaGeometry, build_lens_geometry, power_response_map
from lensmimo.model.base import Direction, SimulationException
from lensmimo.model.channel import ChannelSamplingParams, MultipathChannel, PathComponent, PowerProfile, \
    effective_flat_channel, element_path_powers, freq_response, grid_aligned_channel, leakage_ratio, path_powers, \
    sample_channel, subcarrier_frequencies, trial_generator
from lensmimo.transceiver.selection import AntennaSelection, select_antennas

MS: UpaGeometry = UpaGeometry(2, 2)


def default_lens() -> LensArrayGeometry:
    return build_lens_geometry(10., 10., math.radians(60.), math.radians(120.))


def one_hot_channel(lens: LensArrayGeometry) -> MultipathChannel:
    gains = [np.sqrt(0.5) * np.exp(0.3j), np.sqrt(0.3) * np.exp(-1.1j), np.sqrt(0.2) * np.exp(2.4j)]
    ms_dirs = [Direction.from_degrees(10., -20.), Direction.from_degrees(-5., 35.), Direction.from_degrees(0., 5.)]
    return grid_aligned_channel(lens, [(0, 0), (2, -4), (-3, 6)], gains, [13e-9, 47e-9, 81e-9], ms_dirs=ms_dirs)


def test_sample_channel():
    """
    Test ranges, normalization and determinism of the random channel model.
    """
    params: ChannelSamplingParams = ChannelSamplingParams(num_paths=5, seed=11)
    ch: MultipathChannel = sample_channel(params)
    assert ch.num_paths == 5
    assert ch.total_power == pytest.approx(1.)
    for p in ch.paths:
        assert -60. <= p.bs_dir.phi_deg <= 60.
        assert -30. <= p.bs_dir.theta_deg <= 30.
        assert -60. <= p.ms_dir.phi_deg <= 60.
        assert 0. <= p.delay <= 100e-9
    assert ch.mu == pytest.approx(50.)
    assert sample_channel(params) == ch
    assert sample_channel(params).fingerprint == ch.fingerprint


def test_power_profiles():
    """
    Test the exponential power profile and the normalization of the random profile.
    """
    rng = np.random.default_rng(0)
    exponential = path_powers(ChannelSamplingParams(num_paths=4, power_profile=PowerProfile.EXPONENTIAL,
                                                    profile_parameter=2.), rng)
    assert np.sum(exponential) == pytest.approx(1.)
    assert np.all(np.diff(exponential) < 0)
    assert exponential[1] / exponential[0] == pytest.approx(math.exp(-0.5))
    uniform = path_powers(ChannelSamplingParams(num_paths=4), rng)
    assert np.sum(uniform) == pytest.approx(1.)
    assert np.all(uniform > 0)


def test_sampling_params_validation():
    """
    Test the validation of the channel model parameters.
    """
    with pytest.raises(SimulationException):
        ChannelSamplingParams(num_paths=0)
    with pytest.raises(SimulationException):
        ChannelSamplingParams(azimuth_range_deg=(-100., 10.))
    with pytest.raises(SimulationException):
        ChannelSamplingParams(delay_max=-1.)


def test_trial_generator():
    """
    Test that trial streams depend only on (master seed, trial index).
    """
    params: ChannelSamplingParams = ChannelSamplingParams()
    first: MultipathChannel = sample_channel(params, trial_generator(5, 3))
    assert sample_channel(params, trial_generator(5, 3)) == first
    assert sample_channel(params, trial_generator(5, 4)).fingerprint != first.fingerprint
    assert sample_channel(params, trial_generator(6, 3)).fingerprint != first.fingerprint


def test_channel_errors():
    """
    Test the rejection of empty channels and delays beyond T_m.
    """
    with pytest.raises(SimulationException):
        MultipathChannel([])
    with pytest.raises(SimulationException):
        MultipathChannel([PathComponent(Direction(0., 0.), Direction(0., 0.), 2e-7, 1.)])


def test_channel_json():
    """
    Test the JSON form of a channel realization.
    """
    ch: MultipathChannel = sample_channel(ChannelSamplingParams(seed=4))
    parsed: MultipathChannel = MultipathChannel.from_json(ch.__json__())
    assert parsed.num_paths == ch.num_paths
    assert np.allclose(parsed.gains, ch.gains, atol=1e-12)
    assert np.allclose(parsed.delays, ch.delays, rtol=1e-12)
    assert parsed.bandwidth_hz == pytest.approx(ch.bandwidth_hz)


def test_freq_response():
    """
    Test the frequency-domain channel against the path sum and the zero-delay channel.
    """
    lens: LensArrayGeometry = default_lens()
    ch: MultipathChannel = sample_channel(ChannelSamplingParams(seed=2))
    upa: UpaGeometry = UpaGeometry.with_aperture(2., 2.)
    h: np.ndarray = freq_response(ch, upa, MS, 8)
    assert h.shape == (8, 4, 16)
    f: np.ndarray = subcarrier_frequencies(ch.bandwidth_hz, 8)
    assert f[1] == pytest.approx(500e6 / 8)
    expected = sum(p.gain * np.exp(-2j * np.pi * f[3] * p.delay) *
                   np.outer(MS.response(p.ms_dir), upa.response(p.bs_dir)) for p in ch.paths)
    assert np.allclose(h[3], expected, atol=1e-12)
    flat: np.ndarray = freq_response(ch.with_zero_delays(), lens, MS, 4)
    assert np.allclose(flat[0], flat[3], atol=1e-12)
    with pytest.raises(SimulationException):
        freq_response(ch, upa, MS, 0)


def test_effective_flat_channel():
    """
    Test that matched delay pre-compensation on a one-hot separated channel gives the frequency-flat path sum.
    """
    lens: LensArrayGeometry = default_lens()
    ch: MultipathChannel = one_hot_channel(lens)
    compensation = {lens.element_index(0, 0): 13e-9, lens.element_index(2, -4): 47e-9,
                    lens.element_index(-3, 6): 81e-9}
    h: np.ndarray = effective_flat_channel(ch, lens, MS, compensation)
    flat: np.ndarray = freq_response(ch.with_zero_delays(), lens, MS, 1)[0]
    assert np.allclose(h, flat, atol=1e-12)
    nearly: np.ndarray = effective_flat_channel(ch, lens, MS, {m: d + 1e-21 for m, d in compensation.items()})
    assert np.allclose(nearly, flat, atol=1e-9)
    uncompensated: np.ndarray = effective_flat_channel(ch, lens, MS, {})
    assert not np.allclose(uncompensated, flat, atol=1e-6)
    with pytest.raises(SimulationException):
        effective_flat_channel(ch, lens, MS, {lens.num_elements: 0.})


def test_leakage_ratio():
    """
    Test the leakage of perfectly separated and of overlapping paths.
    """
    lens: LensArrayGeometry = default_lens()
    ch: MultipathChannel = one_hot_channel(lens)
    selection = [lens.element_index(0, 0), lens.element_index(2, -4), lens.element_index(-3, 6)]
    assert leakage_ratio(ch, lens, selection, {selection[0]: 0, selection[1]: 1, selection[2]: 2}) == 0.
    assert leakage_ratio(ch, lens, selection, {selection[0]: 1, selection[1]: 1, selection[2]: 2}) == \
        pytest.approx(0.5)
    powers: np.ndarray = element_path_powers(ch, lens)
    assert powers.shape == (179, 3)
    assert powers[selection[0], 0] == pytest.approx(50.)
    with pytest.raises(SimulationException):
        leakage_ratio(ch, lens, [], {})


def test_grid_aligned_channel_errors():
    """
    Test that grid aligned channels reject repeated elements.
    """
    lens: LensArrayGeometry = default_lens()
    with pytest.raises(SimulationException):
        grid_aligned_channel(lens, [(0, 0), (0, 0)], [1., 1.], [0., 0.])
    with pytest.raises(SimulationException):
        grid_aligned_channel(lens, [(0, 0), (1, 1)], [1.], [0., 0.])


def test_single_path_is_frequency_flat():
    """
    Test that a single path gives rank-one subcarrier matrices of equal Frobenius norm.
    """
    upa: UpaGeometry = UpaGeometry.with_aperture(2., 2.)
    path: PathComponent = PathComponent(Direction.from_degrees(12., -33.), Direction.from_degrees(-4., 21.), 37e-9,
                                        0.9 * np.exp(0.2j))
    h: np.ndarray = freq_response(MultipathChannel([path]), upa, MS, 32)
    norms: np.ndarray = np.linalg.norm(h, axis=(1, 2))
    assert all(np.linalg.matrix_rank(h[k]) == 1 for k in range(32))
    assert np.allclose(norms, 0.9 * np.sqrt(4. * 4.), rtol=1e-12)


def test_multipath_is_frequency_selective():
    """
    Test that three paths with distinct delays give subcarrier norms that vary over the band.
    """
    siso: UpaGeometry = UpaGeometry(1, 1)
    ch: MultipathChannel = sample_channel(ChannelSamplingParams(seed=4))
    assert ch.num_paths == 3
    norms: np.ndarray = np.linalg.norm(freq_response(ch, siso, siso, 64), axis=(1, 2))
    assert np.ptp(norms) > 0.1 * np.mean(norms)


def test_random_channel_leaks_between_paths():
    """
    Test that off-grid paths of a random three-path channel leak power onto the elements selected for other paths.
    """
    lens: LensArrayGeometry = default_lens()
    for seed in range(5):
        ch: MultipathChannel = sample_channel(ChannelSamplingParams(seed=seed))
        selection: AntennaSelection = select_antennas(ch, lens, 3)
        ratio: float = leakage_ratio(ch, lens, selection.indices, selection.assignment)
        assert 0. < ratio < 1.


def test_power_response_parseval():
    """
    Test that the element powers add up to the aperture gain except for the sinc tail beyond the array.
    """
    lens: LensArrayGeometry = default_lens()
    on_grid = power_response_map(lens, [lens.elements[lens.element_index(2, -4)].direction])[0]
    assert on_grid.total_fraction == pytest.approx(1., abs=1e-12)
    half_way = power_response_map(lens, [Direction(np.arcsin(0.05), 0.)])[0]
    offsets: np.ndarray = np.arange(-100000, 100001) - 0.5
    inside: np.ndarray = np.abs(offsets + 0.5) <= 5
    tail: float = float(np.sum(np.sinc(offsets[~inside]) ** 2))
    assert half_way.total_fraction == pytest.approx(float(np.sum(np.sinc(offsets[inside]) ** 2)), rel=1e-12)
    assert half_way.total_fraction + tail == pytest.approx(1., abs=1e-5)
    rng = np.random.default_rng(3)
    for _ in range(20):
        direction: Direction = Direction.from_degrees(rng.uniform(-25., 25.), rng.uniform(-50., 50.))
        fraction: float = power_response_map(lens, [direction])[0].total_fraction
        assert 0.75 <= fraction <= 1. + 1e-12
