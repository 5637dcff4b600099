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
import json
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from lensmimo.model.arrays import ArrayGeometry, LensArrayGeometry, UpaGeometry, geometry_from_json
from lensmimo.model.base import Direction, SimulationException
from lensmimo.model.channel import DEFAULT_AZIMUTH_RANGE_DEG, DEFAULT_BANDWIDTH_HZ, DEFAULT_CARRIER_HZ, \
    DEFAULT_ELEVATION_RANGE_DEG, DEFAULT_MAX_DELAY_S, ChannelSamplingParams, PowerProfile
from lensmimo.power.consumption import DEFAULT_LENS_ELEMENTS, PowerModel
from lensmimo.transceiver.schemes import SchemeConfig, SchemeType, required_cp_length

logger: logging.Logger = logging.getLogger(__name__)

DEFAULT_SCENARIO: Path = Path(__file__).resolve().parent.parent / 'scenarios' / 'default.json'
"""Scenario file shipped with the package."""
DEFAULT_SNR_SWEEP_DB: Tuple[float, ...] = (0., 5., 10., 15., 20., 25., 30.)
DEFAULT_TRIALS: int = 1000
DEFAULT_REFERENCE_SNR_DB: float = 10.
DEFAULT_OUTPUT_DIR: str = 'results'
DEFAULT_MS: Dict[str, Any] = {'kind': 'upa', 'rows': 2, 'cols': 2}
DEFAULT_BS_LENS: Dict[str, Any] = {'kind': 'lens', 'd_y': 10., 'd_z': 10., 'theta_cov_deg': 60., 'phi_cov_deg': 120.,
                                   'power_elements': DEFAULT_LENS_ELEMENTS}
DEFAULT_BS_UPA: Dict[str, Any] = {'kind': 'upa', 'd_y': 10., 'd_z': 10., 'spacing': 0.5}


class ConfigurationException(SimulationException):
    """
    ConfigurationException
    ======================
    Exception for malformed or incomplete experiment configurations.
    """
    pass


def channel_params_from_json(data: Dict[str, Any]) -> ChannelSamplingParams:
    """
    Channel model from its JSON form (delays in ns, carrier in GHz, bandwidth in MHz, angles in degrees).

    Parameters
    ----------
    data: Dict[str, Any]
        JSON dictionary

    Returns
    -------
    params: `ChannelSamplingParams`
        Channel model
    """
    def interval(key: str, default: Optional[Tuple[float, float]]) -> Optional[Tuple[float, float]]:
        value: Optional[List[float]] = data.get(key)
        return default if value is None else (float(value[0]), float(value[1]))

    try:
        return ChannelSamplingParams(
            num_paths=int(data.get('num_paths', 3)),
            azimuth_range_deg=interval('azimuth_range_deg', DEFAULT_AZIMUTH_RANGE_DEG),
            elevation_range_deg=interval('elevation_range_deg', DEFAULT_ELEVATION_RANGE_DEG),
            ms_azimuth_range_deg=interval('ms_azimuth_range_deg', None),
            ms_elevation_range_deg=interval('ms_elevation_range_deg', None),
            delay_max=float(data.get('delay_max_ns', DEFAULT_MAX_DELAY_S * 1e9)) * 1e-9,
            power_profile=PowerProfile(data.get('power_profile', PowerProfile.UNIFORM_RANDOM.value)),
            profile_parameter=float(data.get('profile_parameter', 1.)),
            carrier_hz=float(data.get('carrier_ghz', DEFAULT_CARRIER_HZ * 1e-9)) * 1e9,
            bandwidth_hz=float(data.get('bandwidth_mhz', DEFAULT_BANDWIDTH_HZ * 1e-6)) * 1e6,
            seed=int(data.get('seed', 0)))
    except (ValueError, TypeError, IndexError) as e:
        raise ConfigurationException(f'Invalid channel parameters: {e}') from e


@dataclass(frozen=True)
class ExperimentConfig:
    """
    ExperimentConfig
    ================
    Monte Carlo experiment. Every trial draws one channel and evaluates all schemes on it; lens schemes use the
    lens BS, all other schemes the UPA BS.

    Parameters
    ----------
    schemes: Tuple[SchemeConfig, ...]
        Schemes to compare, at least one
    name: str (optional) [default: 'default']
        Scenario name
    channel: `ChannelSamplingParams` (optional) [default: ChannelSamplingParams()]
        Channel model
    bs_lens: Dict[str, Any] (optional)
        Lens BS geometry description, with the lens antenna count `power_elements` of the power model
    bs_upa: Dict[str, Any] (optional)
        UPA BS geometry description
    ms: Dict[str, Any] (optional) [default: 2 x 2 UPA]
        MS geometry description
    power_model: `PowerModel` (optional) [default: PowerModel()]
        Power constants
    snr_sweep_db: Tuple[float, ...] (optional) [default: 0 dB to 30 dB in 5 dB steps]
        SNR points
    num_trials: int (optional) [default: 1000]
        Number of Monte Carlo trials
    master_seed: int (optional) [default: 0]
        Seed of the experiment
    reference_snr_db: float (optional) [default: 10.0]
        SNR of the energy efficiency figure
    workers: int (optional) [default: 1]
        Number of worker threads
    output_dir: str (optional) [default: 'results']
        Output directory

    Raises
    ------
    ConfigurationException
        If the configuration is inconsistent
    """
    schemes: Tuple[SchemeConfig, ...]
    name: str = 'default'
    channel: ChannelSamplingParams = field(default_factory=ChannelSamplingParams)
    bs_lens: Dict[str, Any] = field(default_factory=lambda: dict(DEFAULT_BS_LENS))
    bs_upa: Dict[str, Any] = field(default_factory=lambda: dict(DEFAULT_BS_UPA))
    ms: Dict[str, Any] = field(default_factory=lambda: dict(DEFAULT_MS))
    power_model: PowerModel = field(default_factory=PowerModel)
    snr_sweep_db: Tuple[float, ...] = DEFAULT_SNR_SWEEP_DB
    num_trials: int = DEFAULT_TRIALS
    master_seed: int = 0
    reference_snr_db: float = DEFAULT_REFERENCE_SNR_DB
    workers: int = 1
    output_dir: str = DEFAULT_OUTPUT_DIR

    def __post_init__(self):
        object.__setattr__(self, 'schemes', tuple(self.schemes))
        object.__setattr__(self, 'snr_sweep_db', tuple(float(s) for s in self.snr_sweep_db))
        if len(self.schemes) == 0:
            raise ConfigurationException('An experiment needs at least one scheme.')
        if self.num_trials < 1:
            raise ConfigurationException(f'Number of trials:={self.num_trials} must be at least 1.')
        if len(self.snr_sweep_db) == 0:
            raise ConfigurationException('An experiment needs at least one SNR point.')
        if self.workers < 1:
            raise ConfigurationException(f'Number of workers:={self.workers} must be at least 1.')
        if not 0 <= self.master_seed < 2 ** 64:
            raise ConfigurationException(f'Master seed:={self.master_seed} must be a 64-bit unsigned integer.')
        if self.bs_lens.get('kind') != 'lens' or self.bs_upa.get('kind') != 'upa':
            raise ConfigurationException('bs_lens must describe a lens array and bs_upa a UPA.')
        if any(s.scheme == SchemeType.LENS_DS_PDM for s in self.schemes) and self.ms.get('kind') != 'lens':
            raise ConfigurationException(f'Scheme:={SchemeType.LENS_DS_PDM.value} needs a lens array at the MS.')
        labels: List[str] = [s.label for s in self.schemes]
        if len(set(labels)) != len(labels):
            raise ConfigurationException(f'Scheme labels must be unique, got {labels}.')
        if int(self.bs_lens.get('power_elements', DEFAULT_LENS_ELEMENTS)) < 1:
            raise ConfigurationException('The lens antenna count of the power model must be at least 1.')
        needed: int = required_cp_length(self.channel.bandwidth_hz, self.channel.delay_max)
        for s in self.schemes:
            if s.scheme.is_ofdm and s.cp_len < needed:
                raise ConfigurationException(f'Cyclic prefix:={s.cp_len} of scheme:={s.label} is shorter than the '
                                             f'maximum delay spread of {needed} samples.')
        self.__check_coverage('bs_lens', self.bs_lens, self.channel.azimuth_range_deg,
                              self.channel.elevation_range_deg)
        if self.ms.get('kind') == 'lens':
            self.__check_coverage('ms', self.ms, self.channel.ms_azimuth, self.channel.ms_elevation)

    @staticmethod
    def __check_coverage(key: str, description: Dict[str, Any], azimuth_deg: Tuple[float, float],
                         elevation_deg: Tuple[float, float]):
        try:
            lens: LensArrayGeometry = geometry_from_json(description)
        except SimulationException as e:
            raise ConfigurationException(f'Invalid {key} geometry: {e}') from e
        corners: List[Direction] = [Direction.from_degrees(theta, phi) for theta in elevation_deg
                                    for phi in azimuth_deg]
        if not all(lens.covers(d) for d in corners):
            raise ConfigurationException(f'Path angles azimuth:={azimuth_deg}, elevation:={elevation_deg} exceed '
                                         f'the coverage of the {key} lens array.')

    @property
    def lens_power_elements(self) -> int:
        """Lens antenna count used by the power model. (`int`, read-only)"""
        return int(self.bs_lens.get('power_elements', DEFAULT_LENS_ELEMENTS))

    def lens_geometry(self) -> LensArrayGeometry:
        """
        Build the lens BS geometry.

        Returns
        -------
        geometry: `LensArrayGeometry`
            Lens array
        """
        return geometry_from_json(self.bs_lens)

    def upa_geometry(self) -> UpaGeometry:
        """
        Build the UPA BS geometry.

        Returns
        -------
        geometry: `UpaGeometry`
            UPA
        """
        return geometry_from_json(self.bs_upa)

    def ms_geometry(self) -> ArrayGeometry:
        """
        Build the MS geometry.

        Returns
        -------
        geometry: `ArrayGeometry`
            MS array
        """
        return geometry_from_json(self.ms)

    def with_overrides(self, num_trials: Optional[int] = None, master_seed: Optional[int] = None,
                       output_dir: Optional[str] = None, workers: Optional[int] = None,
                       snr_sweep_db: Optional[List[float]] = None) -> 'ExperimentConfig':
        """
        Copy of the configuration with command line overrides; None keeps the configured value.
        """
        changes: Dict[str, Any] = {k: v for k, v in {
            'num_trials': num_trials, 'master_seed': master_seed, 'output_dir': output_dir, 'workers': workers,
            'snr_sweep_db': snr_sweep_db
        }.items() if v is not None}
        return replace(self, **changes)

    def __json__(self):
        return {
            'name': self.name,
            'channel': self.channel.__json__(),
            'bs_lens': self.bs_lens,
            'bs_upa': self.bs_upa,
            'ms': self.ms,
            'power_model': self.power_model.__json__(),
            'schemes': [s.__json__() for s in self.schemes],
            'snr_sweep_db': list(self.snr_sweep_db),
            'num_trials': self.num_trials,
            'master_seed': self.master_seed,
            'reference_snr_db': self.reference_snr_db,
            'workers': self.workers,
            'output_dir': self.output_dir
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> 'ExperimentConfig':
        """
        Create the configuration from its JSON form.

        Parameters
        ----------
        data: Dict[str, Any]
            JSON dictionary

        Returns
        -------
        config: `ExperimentConfig`
            Experiment configuration

        Raises
        ------
        ConfigurationException
            If a key is missing or a value is invalid
        """
        if 'schemes' not in data:
            raise ConfigurationException('Configuration misses the list of schemes.')
        try:
            schemes: List[SchemeConfig] = [SchemeConfig.from_json(s) for s in data['schemes']]
            return cls(schemes=tuple(schemes),
                       name=str(data.get('name', 'default')),
                       channel=channel_params_from_json(data.get('channel', {})),
                       bs_lens=dict(data.get('bs_lens', DEFAULT_BS_LENS)),
                       bs_upa=dict(data.get('bs_upa', DEFAULT_BS_UPA)),
                       ms=dict(data.get('ms', DEFAULT_MS)),
                       power_model=PowerModel.from_json(data.get('power_model', {})),
                       snr_sweep_db=tuple(data.get('snr_sweep_db', DEFAULT_SNR_SWEEP_DB)),
                       num_trials=int(data.get('num_trials', DEFAULT_TRIALS)),
                       master_seed=int(data.get('master_seed', 0)),
                       reference_snr_db=float(data.get('reference_snr_db', DEFAULT_REFERENCE_SNR_DB)),
                       workers=int(data.get('workers', 1)),
                       output_dir=str(data.get('output_dir', DEFAULT_OUTPUT_DIR)))
        except ConfigurationException:
            raise
        except (SimulationException, ValueError, TypeError) as e:
            raise ConfigurationException(f'Invalid experiment configuration: {e}') from e


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """
    Load an experiment configuration file.

    Parameters
    ----------
    path: Union[str, Path]
        Path of the JSON file

    Returns
    -------
    config: `ExperimentConfig`
        Experiment configuration

    Raises
    ------
    SimulationException
        If the file cannot be read
    ConfigurationException
        If the file is not a valid configuration
    """
    try:
        with open(path, 'r', encoding='utf-8') as fp:
            data: Any = json.load(fp)
    except json.JSONDecodeError as e:
        raise ConfigurationException(f'Configuration file {path} is not valid JSON: {e}') from e
    except OSError as e:
        raise SimulationException(f'Cannot read configuration file {path}: {e}') from e
    if not isinstance(data, dict):
        raise ConfigurationException(f'Configuration file {path} must contain a JSON object.')
    logger.debug(f'Loaded configuration from {path}.')
    return ExperimentConfig.from_json(data)


def default_config() -> ExperimentConfig:
    """
    The shipped default scenario.

    Returns
    -------
    config: `ExperimentConfig`
        Default experiment
    """
    return load_config(DEFAULT_SCENARIO)
