# -*- coding: utf-8 -*-
# Copyright © 2026-present Lens MIMO Authors. All Rights Reserved.
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Any, Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from lensmimo.model.arrays import ArrayGeometry, LensArrayGeometry
from lensmimo.model.base import Direction, HashFingerprint, SimulationException, check_positive, deg2rad

logger: logging.Logger = logging.getLogger(__name__)

# Channel defaults
DEFAULT_CARRIER_HZ: float = 28e9
"""Carrier frequency."""
DEFAULT_BANDWIDTH_HZ: float = 500e6
"""Signal bandwidth B."""
DEFAULT_MAX_DELAY_S: float = 100e-9
"""Maximum path delay T_m."""
DEFAULT_AZIMUTH_RANGE_DEG: Tuple[float, float] = (-60., 60.)
"""Azimuth interval for path angles."""
DEFAULT_ELEVATION_RANGE_DEG: Tuple[float, float] = (-30., 30.)
"""Elevation interval for path angles."""


class PowerProfile(Enum):
    """
    PowerProfile
    ============
    Division of the channel power among the paths of a realization.
    """
    UNIFORM_RANDOM = 'uniform-random'
    """|alpha_l|^2 proportional to u_l with u_l ~ Uniform(0, 1]."""
    EXPONENTIAL = 'exponential'
    """|alpha_l|^2 proportional to exp(-l / gamma)."""


class PathComponent:
    """
    PathComponent
    =============
    One propagation path of a multipath channel.

    Parameters
    ----------
    bs_dir: `Direction`
        Angles of departure at the base station
    ms_dir: `Direction`
        Angles of arrival at the mobile station
    delay: float
        Path delay in seconds
    gain: complex
        Complex path gain alpha_l
    """

    def __init__(self, bs_dir: Direction, ms_dir: Direction, delay: float, gain: complex):
        if delay < 0:
            raise SimulationException(f'Path delay:={delay} must not be negative.')
        self.__bs_dir: Direction = bs_dir
        self.__ms_dir: Direction = ms_dir
        self.__delay: float = float(delay)
        self.__gain: complex = complex(gain)

    @property
    def bs_dir(self) -> Direction:
        """BS-side direction. (`Direction`, read-only)"""
        return self.__bs_dir

    @property
    def ms_dir(self) -> Direction:
        """MS-side direction. (`Direction`, read-only)"""
        return self.__ms_dir

    @property
    def delay(self) -> float:
        """Path delay in seconds. (`float`, read-only)"""
        return self.__delay

    @property
    def gain(self) -> complex:
        """Complex gain. (`complex`, read-only)"""
        return self.__gain

    @property
    def power(self) -> float:
        """Path power |alpha_l|^2. (`float`, read-only)"""
        return abs(self.__gain) ** 2

    def __dict__(self):
        return {
            'bs_dir': self.bs_dir.__json__(),
            'ms_dir': self.ms_dir.__json__(),
            'delay_ns': self.delay * 1e9,
            'gain': {'re': self.gain.real, 'im': self.gain.imag}
        }

    def __json__(self):
        return self.__dict__()

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> 'PathComponent':
        """
        Parse a path from its JSON representation.

        Parameters
        ----------
        data: Dict[str, Any]
            JSON object as produced by `__json__`

        Returns
        -------
        path: `PathComponent`
            Path component
        """
        return cls(Direction.from_degrees(data['bs_dir']['theta_deg'], data['bs_dir']['phi_deg']),
                   Direction.from_degrees(data['ms_dir']['theta_deg'], data['ms_dir']['phi_deg']),
                   data['delay_ns'] * 1e-9, complex(data['gain']['re'], data['gain']['im']))

    def __eq__(self, other: Any):
        if not isinstance(other, PathComponent):
            return False
        return (self.bs_dir == other.bs_dir and self.ms_dir == other.ms_dir and self.delay == other.delay and
                self.gain == other.gain)

    def __repr__(self):
        return (f'<PathComponent : [bs:={self.bs_dir}, ms:={self.ms_dir}, delay:={self.delay * 1e9:.3f}ns, '
                f'power:={self.power:.4f}]>')


class MultipathChannel(HashFingerprint):
    """
    MultipathChannel
    ================
    Wideband multipath channel between a base station (transmitter) and a mobile station (receiver).

    Parameters
    ----------
    paths: List[PathComponent]
        At least one path
    carrier_hz: float (optional) [default: 28 GHz]
        Carrier frequency
    bandwidth_hz: float (optional) [default: 500 MHz]
        Signal bandwidth B
    t_max: float (optional) [default: 100 ns]
        Maximum path delay T_m

    Raises
    ------
    SimulationException
        If there is no path or a delay exceeds T_m
    """

    def __init__(self, paths: List[PathComponent], carrier_hz: float = DEFAULT_CARRIER_HZ,
                 bandwidth_hz: float = DEFAULT_BANDWIDTH_HZ, t_max: float = DEFAULT_MAX_DELAY_S):
        if len(paths) == 0:
            raise SimulationException('A multipath channel needs at least one path.')
        check_positive({'carrier_hz': carrier_hz, 'bandwidth_hz': bandwidth_hz})
        for p in paths:
            if p.delay > t_max:
                raise SimulationException(f'Path delay:={p.delay} exceeds the maximum delay T_m:={t_max}.')
        self.__paths: List[PathComponent] = list(paths)
        self.__carrier_hz: float = carrier_hz
        self.__bandwidth_hz: float = bandwidth_hz
        self.__t_max: float = t_max

    @property
    def paths(self) -> List[PathComponent]:
        """Path components. (`List[PathComponent]`, read-only)"""
        return self.__paths

    @property
    def num_paths(self) -> int:
        """Number of paths L. (`int`, read-only)"""
        return len(self.__paths)

    @property
    def carrier_hz(self) -> float:
        """Carrier frequency in Hz. (`float`, read-only)"""
        return self.__carrier_hz

    @property
    def bandwidth_hz(self) -> float:
        """Bandwidth B in Hz. (`float`, read-only)"""
        return self.__bandwidth_hz

    @property
    def t_max(self) -> float:
        """Maximum delay T_m in seconds. (`float`, read-only)"""
        return self.__t_max

    @property
    def mu(self) -> float:
        """Normalized delay spread B * T_m. (`float`, read-only)"""
        return self.__bandwidth_hz * self.__t_max

    @property
    def gains(self) -> np.ndarray:
        """Complex path gains. (`np.ndarray`, read-only)"""
        return np.array([p.gain for p in self.__paths], dtype=complex)

    @property
    def delays(self) -> np.ndarray:
        """Path delays in seconds. (`np.ndarray`, read-only)"""
        return np.array([p.delay for p in self.__paths], dtype=float)

    @property
    def total_power(self) -> float:
        """Sum of the path powers. (`float`, read-only)"""
        return float(sum(p.power for p in self.__paths))

    def with_zero_delays(self) -> 'MultipathChannel':
        """
        Same channel with all path delays set to zero.

        Returns
        -------
        channel: `MultipathChannel`
            Frequency-flat copy of the channel
        """
        return MultipathChannel([PathComponent(p.bs_dir, p.ms_dir, 0., p.gain) for p in self.__paths],
                                self.__carrier_hz, self.__bandwidth_hz, self.__t_max)

    def __tokenize__(self) -> List[Any]:
        tokens: List[Any] = [self.__carrier_hz, self.__bandwidth_hz, self.__t_max]
        for p in self.__paths:
            tokens.append([p.bs_dir.theta, p.bs_dir.phi, p.ms_dir.theta, p.ms_dir.phi, p.delay, p.gain])
        return tokens

    def __dict__(self):
        return {
            'carrier_ghz': self.carrier_hz * 1e-9,
            'bandwidth_mhz': self.bandwidth_hz * 1e-6,
            't_max_ns': self.t_max * 1e9,
            'paths': [p.__json__() for p in self.paths]
        }

    def __json__(self):
        return self.__dict__()

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> 'MultipathChannel':
        """
        Parse a channel realization from its JSON representation.

        Parameters
        ----------
        data: Dict[str, Any]
            JSON object as produced by `__json__`

        Returns
        -------
        channel: `MultipathChannel`
            Channel realization
        """
        return cls([PathComponent.from_json(p) for p in data['paths']], data['carrier_ghz'] * 1e9,
                   data['bandwidth_mhz'] * 1e6, data['t_max_ns'] * 1e-9)

    def __eq__(self, other: Any):
        if not isinstance(other, MultipathChannel):
            return False
        return (self.paths == other.paths and self.carrier_hz == other.carrier_hz and
                self.bandwidth_hz == other.bandwidth_hz and self.t_max == other.t_max)

    def __repr__(self):
        return f'<MultipathChannel : [#paths:={self.num_paths}, mu:={self.mu:.1f}, id:={self.fingerprint}]>'


@dataclass(frozen=True)
class ChannelSamplingParams:
    """
    ChannelSamplingParams
    =====================
    Parameters of the random multipath channel model. Angle intervals are given in degrees.

    Parameters
    ----------
    num_paths: int
        Number of paths L
    azimuth_range_deg: Tuple[float, float]
        BS azimuth interval
    elevation_range_deg: Tuple[float, float]
        BS elevation interval
    ms_azimuth_range_deg: Optional[Tuple[float, float]]
        MS azimuth interval, defaults to the BS interval
    ms_elevation_range_deg: Optional[Tuple[float, float]]
        MS elevation interval, defaults to the BS interval
    delay_max: float
        Maximum path delay T_m in seconds
    power_profile: `PowerProfile`
        Division of power among paths
    profile_parameter: float
        Decay constant gamma of the exponential profile
    carrier_hz: float
        Carrier frequency
    bandwidth_hz: float
        Signal bandwidth
    seed: int
        Seed used when no generator is passed to `sample_channel`
    """
    num_paths: int = 3
    azimuth_range_deg: Tuple[float, float] = DEFAULT_AZIMUTH_RANGE_DEG
    elevation_range_deg: Tuple[float, float] = DEFAULT_ELEVATION_RANGE_DEG
    ms_azimuth_range_deg: Optional[Tuple[float, float]] = None
    ms_elevation_range_deg: Optional[Tuple[float, float]] = None
    delay_max: float = DEFAULT_MAX_DELAY_S
    power_profile: PowerProfile = PowerProfile.UNIFORM_RANDOM
    profile_parameter: float = 1.
    carrier_hz: float = DEFAULT_CARRIER_HZ
    bandwidth_hz: float = DEFAULT_BANDWIDTH_HZ
    seed: int = field(default=0)

    def __post_init__(self):
        if self.num_paths < 1:
            raise SimulationException(f'Number of paths:={self.num_paths} must be at least 1.')
        if self.delay_max < 0:
            raise SimulationException(f'Maximum delay:={self.delay_max} must not be negative.')
        check_positive({'profile_parameter': self.profile_parameter})
        for name in ('azimuth_range_deg', 'elevation_range_deg', 'ms_azimuth_range_deg', 'ms_elevation_range_deg'):
            interval: Optional[Tuple[float, float]] = getattr(self, name)
            if interval is None:
                continue
            low, high = interval
            if not -90. <= low <= high <= 90.:
                raise SimulationException(f'Angle interval {name}:={interval} must lie within [-90°, 90°].')

    @property
    def ms_azimuth(self) -> Tuple[float, float]:
        """MS azimuth interval in degrees. (`Tuple[float, float]`, read-only)"""
        return self.ms_azimuth_range_deg or self.azimuth_range_deg

    @property
    def ms_elevation(self) -> Tuple[float, float]:
        """MS elevation interval in degrees. (`Tuple[float, float]`, read-only)"""
        return self.ms_elevation_range_deg or self.elevation_range_deg

    def __json__(self):
        return {
            'num_paths': self.num_paths,
            'azimuth_range_deg': list(self.azimuth_range_deg),
            'elevation_range_deg': list(self.elevation_range_deg),
            'ms_azimuth_range_deg': list(self.ms_azimuth),
            'ms_elevation_range_deg': list(self.ms_elevation),
            'delay_max_ns': self.delay_max * 1e9,
            'power_profile': self.power_profile.value,
            'profile_parameter': self.profile_parameter,
            'carrier_ghz': self.carrier_hz * 1e-9,
            'bandwidth_mhz': self.bandwidth_hz * 1e-6,
            'seed': self.seed
        }


def path_powers(params: ChannelSamplingParams, rng: np.random.Generator) -> np.ndarray:
    """
    Draw the normalized path powers of one realization.

    Parameters
    ----------
    params: `ChannelSamplingParams`
        Channel model
    rng: np.random.Generator
        Random stream

    Returns
    -------
    powers: np.ndarray
        Path powers summing to one
    """
    if params.power_profile == PowerProfile.UNIFORM_RANDOM:
        # 1 - U[0, 1) is in (0, 1]
        weights: np.ndarray = 1. - rng.random(params.num_paths)
    else:
        weights = np.exp(-np.arange(params.num_paths) / params.profile_parameter)
    return weights / np.sum(weights)


def sample_channel(params: ChannelSamplingParams, rng: Optional[np.random.Generator] = None) -> MultipathChannel:
    """
    Draw a random multipath channel.

    Angles are i.i.d. uniform within the configured intervals (BS and MS side independently), delays i.i.d.
    uniform in [0, T_m], powers follow the power profile and phases are uniform in [0, 2 pi). The gains are
    normalized so that the path powers sum to one.

    Parameters
    ----------
    params: `ChannelSamplingParams`
        Channel model
    rng: Optional[np.random.Generator] (optional) [default: None]
        Random stream; if omitted a generator seeded with `params.seed` is used

    Returns
    -------
    channel: `MultipathChannel`
        Channel realization
    """
    if rng is None:
        rng = np.random.default_rng(params.seed)
    n: int = params.num_paths
    bs_az: np.ndarray = rng.uniform(*params.azimuth_range_deg, size=n)
    bs_el: np.ndarray = rng.uniform(*params.elevation_range_deg, size=n)
    ms_az: np.ndarray = rng.uniform(*params.ms_azimuth, size=n)
    ms_el: np.ndarray = rng.uniform(*params.ms_elevation, size=n)
    delays: np.ndarray = rng.uniform(0., params.delay_max, size=n)
    powers: np.ndarray = path_powers(params, rng)
    phases: np.ndarray = rng.uniform(0., 2 * np.pi, size=n)
    gains: np.ndarray = np.sqrt(powers) * np.exp(1j * phases)
    paths: List[PathComponent] = [
        PathComponent(Direction(deg2rad(bs_el[i]), deg2rad(bs_az[i])),
                      Direction(deg2rad(ms_el[i]), deg2rad(ms_az[i])), delays[i], gains[i])
        for i in range(n)
    ]
    return MultipathChannel(paths, params.carrier_hz, params.bandwidth_hz, params.delay_max)


def trial_generator(master_seed: int, trial_index: int) -> np.random.Generator:
    """
    Independent random stream of one Monte Carlo trial, derived by hashing (master_seed, trial_index).

    Parameters
    ----------
    master_seed: int
        Seed of the experiment
    trial_index: int
        Index of the trial

    Returns
    -------
    rng: np.random.Generator
        Random stream of the trial
    """
    return np.random.default_rng(np.random.SeedSequence(entropy=master_seed, spawn_key=(trial_index,)))


def subcarrier_frequencies(bandwidth_hz: float, n_subcarriers: int) -> np.ndarray:
    """
    Baseband subcarrier frequencies f_k = k B / N, k = 0..N-1.

    Parameters
    ----------
    bandwidth_hz: float
        Bandwidth B
    n_subcarriers: int
        Number of subcarriers N

    Returns
    -------
    frequencies: np.ndarray
        Subcarrier frequencies in Hz
    """
    return np.arange(n_subcarriers) * bandwidth_hz / n_subcarriers


def path_responses(ch: MultipathChannel, tx: ArrayGeometry, rx: ArrayGeometry) -> Tuple[np.ndarray, np.ndarray]:
    """
    Transmit and receive array responses of all paths.

    Parameters
    ----------
    ch: `MultipathChannel`
        Channel realization
    tx: `ArrayGeometry`
        BS array
    rx: `ArrayGeometry`
        MS array

    Returns
    -------
    responses: Tuple[np.ndarray, np.ndarray]
        Matrices a_tx (M_tx x L) and a_rx (M_rx x L)
    """
    a_tx: np.ndarray = tx.response_matrix([p.bs_dir for p in ch.paths])
    a_rx: np.ndarray = rx.response_matrix([p.ms_dir for p in ch.paths])
    return a_tx, a_rx


def freq_response(ch: MultipathChannel, tx: ArrayGeometry, rx: ArrayGeometry, n_subcarriers: int) -> np.ndarray:
    """
    Frequency-domain channel matrices
    H[k] = sum_l alpha_l exp(-j 2 pi f_k tau_l) a_rx(ms_l) a_tx(bs_l)^T.

    Parameters
    ----------
    ch: `MultipathChannel`
        Channel realization
    tx: `ArrayGeometry`
        BS array
    rx: `ArrayGeometry`
        MS array
    n_subcarriers: int
        Number of subcarriers N

    Returns
    -------
    matrices: np.ndarray
        Complex array of shape (N, M_rx, M_tx)

    Raises
    ------
    SimulationException
        If N < 1
    """
    if n_subcarriers < 1:
        raise SimulationException(f'Number of subcarriers:={n_subcarriers} must be at least 1.')
    a_tx, a_rx = path_responses(ch, tx, rx)
    f_k: np.ndarray = subcarrier_frequencies(ch.bandwidth_hz, n_subcarriers)
    taps: np.ndarray = ch.gains[np.newaxis, :] * np.exp(-2j * np.pi * np.outer(f_k, ch.delays))
    matrices: np.ndarray = np.einsum('kl,rl,tl->krt', taps, a_rx, a_tx, optimize=True)
    assert matrices.shape == (n_subcarriers, rx.num_elements, tx.num_elements)
    return matrices


def effective_flat_channel(ch: MultipathChannel, tx: LensArrayGeometry, rx: ArrayGeometry,
                           compensation: Mapping[int, float]) -> np.ndarray:
    """
    Flat channel seen after path delay pre-compensation at the BS lens array.

    Element m transmits advanced by compensation[m] (zero for elements missing in the map). Path l then reaches
    the MS through element m with the residual delay tau_l - compensation[m], which is applied as a narrowband
    rotation at the band centre B / 2. A zero residual delay gives a unit rotation, so a matched compensation on a
    one-hot separated channel yields sum_l alpha_l a_rx,l a_tx,l^T.

    Parameters
    ----------
    ch: `MultipathChannel`
        Channel realization
    tx: `LensArrayGeometry`
        BS lens array
    rx: `ArrayGeometry`
        MS array
    compensation: Mapping[int, float]
        Element index to pre-compensated delay in seconds

    Returns
    -------
    matrix: np.ndarray
        Complex matrix of shape (M_rx, M_tx)

    Raises
    ------
    SimulationException
        If the compensation map references an element outside the geometry
    """
    c: np.ndarray = np.zeros(tx.num_elements)
    for m, delay in compensation.items():
        if not 0 <= m < tx.num_elements:
            raise SimulationException(f'Element index:={m} is outside the lens geometry '
                                      f'with {tx.num_elements} elements.')
        c[m] = delay
    a_tx, a_rx = path_responses(ch, tx, rx)
    residual: np.ndarray = ch.delays[np.newaxis, :] - c[:, np.newaxis]
    compensated_tx: np.ndarray = a_tx * np.exp(-1j * np.pi * ch.bandwidth_hz * residual)
    return (a_rx * ch.gains[np.newaxis, :]) @ compensated_tx.T


def element_path_powers(ch: MultipathChannel, tx: ArrayGeometry) -> np.ndarray:
    """
    Power |alpha_l|^2 |a_m(bs_l)|^2 of every path at every BS element.

    Parameters
    ----------
    ch: `MultipathChannel`
        Channel realization
    tx: `ArrayGeometry`
        BS array

    Returns
    -------
    powers: np.ndarray
        Real matrix of shape (M_tx, L)
    """
    a_tx: np.ndarray = tx.response_matrix([p.bs_dir for p in ch.paths])
    return np.abs(a_tx) ** 2 * np.abs(ch.gains[np.newaxis, :]) ** 2


def leakage_ratio(ch: MultipathChannel, tx: LensArrayGeometry, selection: Sequence[int],
                  assignment: Mapping[int, int]) -> float:
    """
    Fraction of the power at the selected elements that stems from paths other than the element's assigned path.
    Zero means the paths are perfectly separated over the selected elements.

    Parameters
    ----------
    ch: `MultipathChannel`
        Channel realization
    tx: `LensArrayGeometry`
        BS lens array
    selection: Sequence[int]
        Non-empty list of selected element indices
    assignment: Mapping[int, int]
        Element index to assigned path index

    Returns
    -------
    ratio: float
        Leakage ratio in [0, 1]

    Raises
    ------
    SimulationException
        If the selection is empty
    """
    if len(selection) == 0:
        raise SimulationException('Leakage ratio requires a non-empty antenna selection.')
    powers: np.ndarray = element_path_powers(ch, tx)[list(selection), :]
    total: float = float(np.sum(powers))
    if total <= 0.:
        return 0.
    own: float = float(sum(powers[i, assignment[m]] for i, m in enumerate(selection)))
    return max(0., min(1., (total - own) / total))


def grid_aligned_channel(bs: LensArrayGeometry, bs_elements: Sequence[Tuple[int, int]], gains: Sequence[complex],
                         delays: Sequence[float], ms_dirs: Optional[Sequence[Direction]] = None,
                         ms: Optional[LensArrayGeometry] = None,
                         ms_elements: Optional[Sequence[Tuple[int, int]]] = None,
                         bandwidth_hz: float = DEFAULT_BANDWIDTH_HZ,
                         t_max: float = DEFAULT_MAX_DELAY_S) -> MultipathChannel:
    """
    Channel whose paths depart exactly towards lens element directions, so that every path excites a single BS
    element (one-hot separation). With an MS lens array and `ms_elements` the MS side is separated as well.

    Parameters
    ----------
    bs: `LensArrayGeometry`
        BS lens array
    bs_elements: Sequence[Tuple[int, int]]
        Distinct (m_e, m_a) per path
    gains: Sequence[complex]
        Complex gain per path
    delays: Sequence[float]
        Delay per path in seconds
    ms_dirs: Optional[Sequence[Direction]] (optional) [default: None]
        MS directions; broadside if omitted
    ms: Optional[LensArrayGeometry] (optional) [default: None]
        MS lens array used together with `ms_elements`
    ms_elements: Optional[Sequence[Tuple[int, int]]] (optional) [default: None]
        Distinct MS (m_e, m_a) per path
    bandwidth_hz: float (optional) [default: 500 MHz]
        Signal bandwidth
    t_max: float (optional) [default: 100 ns]
        Maximum delay

    Returns
    -------
    channel: `MultipathChannel`
        One-hot separated channel

    Raises
    ------
    SimulationException
        If the per-path inputs differ in length or an element is used twice
    """
    n: int = len(bs_elements)
    if len(set(bs_elements)) != n or len(gains) != n or len(delays) != n:
        raise SimulationException('Grid aligned paths need distinct BS elements and one gain and delay per path.')
    if ms is not None and ms_elements is not None:
        if len(set(ms_elements)) != n:
            raise SimulationException('Grid aligned paths need distinct MS elements.')
        ms_dirs = [ms.elements[ms.element_index(*e)].direction for e in ms_elements]
    elif ms_dirs is None:
        ms_dirs = [Direction(0., 0.)] * n
    paths: List[PathComponent] = [
        PathComponent(bs.elements[bs.element_index(*bs_elements[i])].direction, ms_dirs[i], delays[i], gains[i])
        for i in range(n)
    ]
    return MultipathChannel(paths, bandwidth_hz=bandwidth_hz, t_max=max(t_max, max(delays)))
