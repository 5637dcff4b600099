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
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from lensmimo.model.arrays import ArrayGeometry, LensArrayGeometry, UpaGeometry
from lensmimo.model.base import SimulationException
from lensmimo.model.channel import MultipathChannel, sample_channel, trial_generator
from lensmimo.power.consumption import scheme_power
from lensmimo.simulation.config import ExperimentConfig
from lensmimo.transceiver.codebook import Codebook, build_codebook
from lensmimo.transceiver.schemes import SchemeConfig, SchemeResult, SchemeType, TransmissionScheme, create_scheme
from lensmimo.utils.statistics import mean_and_stderr, safe_zero_div

logger: logging.Logger = logging.getLogger(__name__)


class AggregateEntry:
    """
    AggregateEntry
    ==============
    Monte Carlo statistics of one scheme at one SNR point.

    Parameters
    ----------
    label: str
        Scheme label
    scheme: `SchemeType`
        Transmission scheme
    m_rf: int
        RF chains
    snr_db: float
        SNR in dB
    mean_se: float
        Mean spectral efficiency in bits/s/Hz
    stderr_se: float
        Standard error of the mean
    trials: int
        Number of trials
    power_w: float
        BS power consumption in watts
    """

    def __init__(self, label: str, scheme: SchemeType, m_rf: int, snr_db: float, mean_se: float, stderr_se: float,
                 trials: int, power_w: float):
        self.__label: str = label
        self.__scheme: SchemeType = scheme
        self.__m_rf: int = m_rf
        self.__snr_db: float = snr_db
        self.__mean_se: float = mean_se
        self.__stderr_se: float = stderr_se
        self.__trials: int = trials
        self.__power_w: float = power_w

    @property
    def label(self) -> str:
        """Scheme label. (`str`, read-only)"""
        return self.__label

    @property
    def scheme(self) -> SchemeType:
        """Transmission scheme. (`SchemeType`, read-only)"""
        return self.__scheme

    @property
    def m_rf(self) -> int:
        """RF chains. (`int`, read-only)"""
        return self.__m_rf

    @property
    def snr_db(self) -> float:
        """SNR in dB. (`float`, read-only)"""
        return self.__snr_db

    @property
    def mean_se(self) -> float:
        """Mean spectral efficiency. (`float`, read-only)"""
        return self.__mean_se

    @property
    def stderr_se(self) -> float:
        """Standard error of the mean spectral efficiency. (`float`, read-only)"""
        return self.__stderr_se

    @property
    def trials(self) -> int:
        """Number of trials. (`int`, read-only)"""
        return self.__trials

    @property
    def power_w(self) -> float:
        """Power consumption in watts. (`float`, read-only)"""
        return self.__power_w

    def __dict__(self):
        return {
            'label': self.label,
            'scheme': self.scheme.value,
            'm_rf': self.m_rf,
            'snr_db': self.snr_db,
            'mean_se': self.mean_se,
            'stderr_se': self.stderr_se,
            'trials': self.trials,
            'power_w': self.power_w
        }

    def __json__(self):
        return self.__dict__()

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> 'AggregateEntry':
        return cls(data['label'], SchemeType(data['scheme']), int(data['m_rf']), float(data['snr_db']),
                   float(data['mean_se']), float(data['stderr_se']), int(data['trials']), float(data['power_w']))

    def __eq__(self, other: Any):
        if not isinstance(other, AggregateEntry):
            return False
        return self.__dict__() == other.__dict__()

    def __repr__(self):
        return f'<AggregateEntry : [label:={self.label}, snr:={self.snr_db} dB, se:={self.mean_se:.4f} ' \
               f'+/- {self.stderr_se:.4f}]>'


class AggregateResult:
    """
    AggregateResult
    ===============
    Result of a Monte Carlo experiment: statistics per (scheme, SNR), power and energy efficiency per scheme and
    the channel fingerprint every scheme saw in every trial.

    Parameters
    ----------
    config: `ExperimentConfig`
        Experiment configuration
    entries: List[AggregateEntry]
        Statistics ordered by scheme, then SNR
    energy_efficiency: Dict[str, float]
        Mean spectral efficiency at the reference SNR per watt, per scheme label
    fingerprints: List[List[str]]
        Per trial, the channel fingerprint per scheme
    """

    def __init__(self, config: ExperimentConfig, entries: List[AggregateEntry], energy_efficiency: Dict[str, float],
                 fingerprints: List[List[str]]):
        self.__config: ExperimentConfig = config
        self.__entries: List[AggregateEntry] = entries
        self.__energy_efficiency: Dict[str, float] = energy_efficiency
        self.__fingerprints: List[List[str]] = fingerprints

    @property
    def config(self) -> ExperimentConfig:
        """Experiment configuration. (`ExperimentConfig`, read-only)"""
        return self.__config

    @property
    def entries(self) -> List[AggregateEntry]:
        """Statistics per scheme and SNR. (`List[AggregateEntry]`, read-only)"""
        return self.__entries

    @property
    def energy_efficiency(self) -> Dict[str, float]:
        """Energy efficiency in bits/s/Hz/W per scheme label. (`Dict[str, float]`, read-only)"""
        return self.__energy_efficiency

    @property
    def fingerprints(self) -> List[List[str]]:
        """Channel fingerprints per trial and scheme. (`List[List[str]]`, read-only)"""
        return self.__fingerprints

    @property
    def labels(self) -> List[str]:
        """Scheme labels in configuration order. (`List[str]`, read-only)"""
        return [s.label for s in self.config.schemes]

    def entry(self, label: str, snr_db: float) -> AggregateEntry:
        """
        Statistics of a scheme at an SNR point.

        Parameters
        ----------
        label: str
            Scheme label
        snr_db: float
            SNR in dB

        Returns
        -------
        entry: `AggregateEntry`
            Statistics

        Raises
        ------
        SimulationException
            If there is no such entry
        """
        for e in self.entries:
            if e.label == label and e.snr_db == snr_db:
                return e
        raise SimulationException(f'No result for scheme:={label} at snr:={snr_db} dB.')

    def mean_curve(self, label: str) -> List[float]:
        """
        Mean spectral efficiency of a scheme over the SNR sweep.

        Parameters
        ----------
        label: str
            Scheme label

        Returns
        -------
        curve: List[float]
            Mean spectral efficiency per SNR point
        """
        return [self.entry(label, snr).mean_se for snr in self.config.snr_sweep_db]

    def ratio(self, label: str, reference: str) -> List[float]:
        """
        Ratio of the mean spectral efficiencies of two schemes over the SNR sweep.

        Parameters
        ----------
        label: str
            Scheme label
        reference: str
            Label of the reference scheme

        Returns
        -------
        ratios: List[float]
            Ratio per SNR point, zero where the reference is zero
        """
        return [safe_zero_div(a, b) for a, b in zip(self.mean_curve(label), self.mean_curve(reference))]

    def power(self, label: str) -> float:
        """
        Power consumption of a scheme.

        Parameters
        ----------
        label: str
            Scheme label

        Returns
        -------
        power: float
            Power in watts
        """
        return self.entry(label, self.config.snr_sweep_db[0]).power_w

    def __json__(self):
        return {
            'config': self.config.__json__(),
            'entries': [e.__json__() for e in self.entries],
            'energy_efficiency': self.energy_efficiency,
            'fingerprints': self.fingerprints
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> 'AggregateResult':
        """
        Create the result from its JSON form.

        Parameters
        ----------
        data: Dict[str, Any]
            JSON dictionary

        Returns
        -------
        result: `AggregateResult`
            Aggregated result
        """
        return cls(ExperimentConfig.from_json(data['config']),
                   [AggregateEntry.from_json(e) for e in data['entries']],
                   {k: float(v) for k, v in data['energy_efficiency'].items()},
                   [list(f) for f in data['fingerprints']])

    def __eq__(self, other: Any):
        if not isinstance(other, AggregateResult):
            return False
        return (self.config.name == other.config.name and self.entries == other.entries and
                self.energy_efficiency == other.energy_efficiency and self.fingerprints == other.fingerprints)

    def __repr__(self):
        return f'<AggregateResult : [scenario:={self.config.name}, #schemes:={len(self.labels)}, ' \
               f'#trials:={self.config.num_trials}]>'


class TrialOutcome:
    """
    TrialOutcome
    ============
    Spectral efficiencies of all schemes on the channel realization of one trial.

    Parameters
    ----------
    index: int
        Trial index
    fingerprints: List[str]
        Fingerprint of the channel evaluated per scheme
    spectral_efficiency: np.ndarray
        Spectral efficiency per scheme and SNR point
    """

    def __init__(self, index: int, fingerprints: List[str], spectral_efficiency: np.ndarray):
        self.index: int = index
        self.fingerprints: List[str] = fingerprints
        self.spectral_efficiency: np.ndarray = spectral_efficiency

    def __repr__(self):
        return f'<TrialOutcome : [index:={self.index}, channel:={self.fingerprints[0]}]>'


class ExperimentRunner:
    """
    ExperimentRunner
    ================
    Paired-trial Monte Carlo driver. Geometries, codebooks and scheme objects are built once; every trial draws one
    channel from the random stream of (master_seed, trial index) and evaluates all schemes on it.

    Parameters
    ----------
    cfg: `ExperimentConfig`
        Experiment configuration
    """

    def __init__(self, cfg: ExperimentConfig):
        self.__cfg: ExperimentConfig = cfg
        self.__lens: LensArrayGeometry = cfg.lens_geometry()
        self.__upa: UpaGeometry = cfg.upa_geometry()
        self.__ms: ArrayGeometry = cfg.ms_geometry()
        codebooks: Dict[int, Codebook] = {}
        self.__schemes: List[TransmissionScheme] = []
        for scheme_cfg in cfg.schemes:
            codebook: Optional[Codebook] = None
            if scheme_cfg.scheme == SchemeType.UPA_HYBRID_OFDM:
                if scheme_cfg.codebook_size not in codebooks:
                    codebooks[scheme_cfg.codebook_size] = build_codebook(
                        scheme_cfg.codebook_size, cfg.channel.azimuth_range_deg, cfg.channel.elevation_range_deg,
                        self.__upa)
                codebook = codebooks[scheme_cfg.codebook_size]
            self.__schemes.append(create_scheme(scheme_cfg.with_snr(list(cfg.snr_sweep_db)), codebook,
                                                self.bs_geometry(scheme_cfg)))

    @property
    def config(self) -> ExperimentConfig:
        """Experiment configuration. (`ExperimentConfig`, read-only)"""
        return self.__cfg

    def bs_geometry(self, scheme_cfg: SchemeConfig) -> ArrayGeometry:
        """
        BS array used by a scheme.

        Parameters
        ----------
        scheme_cfg: `SchemeConfig`
            Scheme configuration

        Returns
        -------
        geometry: `ArrayGeometry`
            Lens array for lens schemes, the UPA otherwise
        """
        return self.__lens if scheme_cfg.scheme.uses_lens else self.__upa

    def resolved_m_rf(self, scheme_cfg: SchemeConfig) -> int:
        """
        RF chain count of a scheme, the element count for the fully digital scheme.
        """
        return self.__upa.num_elements if scheme_cfg.m_rf is None else scheme_cfg.m_rf

    def channel(self, trial_index: int) -> MultipathChannel:
        """
        Channel realization of a trial.

        Parameters
        ----------
        trial_index: int
            Trial index

        Returns
        -------
        channel: `MultipathChannel`
            Channel realization
        """
        return sample_channel(self.__cfg.channel, trial_generator(self.__cfg.master_seed, trial_index))

    def run_trial(self, trial_index: int) -> TrialOutcome:
        """
        Evaluate all schemes on the channel of one trial.

        Parameters
        ----------
        trial_index: int
            Trial index

        Returns
        -------
        outcome: `TrialOutcome`
            Spectral efficiency per scheme and SNR point

        Raises
        ------
        SimulationException
            If a scheme fails on the realization or the schemes were evaluated on different channels
        """
        ch: MultipathChannel = self.channel(trial_index)
        se: np.ndarray = np.zeros((len(self.__schemes), len(self.__cfg.snr_sweep_db)))
        fingerprints: List[str] = []
        for i, scheme in enumerate(self.__schemes):
            try:
                results: List[SchemeResult] = scheme.sweep(ch, self.bs_geometry(scheme.config), self.__ms)
            except (np.linalg.LinAlgError, ValueError, ArithmeticError) as e:
                raise SimulationException(f'Trial:={trial_index} failed for scheme:={scheme.config.label}: '
                                          f'{e}') from e
            fingerprints.append(results[0].channel_fingerprint)
            se[i, :] = [r.spectral_efficiency for r in results]
        if len(set(fingerprints)) > 1:
            raise SimulationException(f'Trial:={trial_index} evaluated its schemes on different channels: '
                                      f'{fingerprints}.')
        logger.debug(f'Trial:={trial_index}, channel:={fingerprints[0]}')
        return TrialOutcome(trial_index, fingerprints, se)

    def run(self, progress: Optional[Callable[[int], None]] = None) -> AggregateResult:
        """
        Run all trials and aggregate them in trial order.

        Parameters
        ----------
        progress: Optional[Callable[[int], None]] (optional) [default: None]
            Called with the index of every finished trial

        Returns
        -------
        result: `AggregateResult`
            Aggregated result
        """
        cfg: ExperimentConfig = self.__cfg
        logger.info(f'Running scenario:={cfg.name} with {cfg.num_trials} trials, {len(cfg.schemes)} schemes, '
                    f'{len(cfg.snr_sweep_db)} SNR points and {cfg.workers} worker(s).')
        indices: range = range(cfg.num_trials)
        if cfg.workers == 1:
            outcomes: List[TrialOutcome] = []
            for t in indices:
                outcomes.append(self.run_trial(t))
                if progress:
                    progress(t)
        else:
            with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
                outcomes = list(executor.map(self.run_trial, indices))
            if progress:
                for t in indices:
                    progress(t)
        outcomes.sort(key=lambda o: o.index)
        result: AggregateResult = self.aggregate(outcomes)
        logger.info(f'Finished scenario:={cfg.name}.')
        return result

    def aggregate(self, outcomes: List[TrialOutcome]) -> AggregateResult:
        """
        Reduce trial outcomes to means and standard errors; attach power and energy efficiency.

        Parameters
        ----------
        outcomes: List[TrialOutcome]
            Trial outcomes ordered by trial index

        Returns
        -------
        result: `AggregateResult`
            Aggregated result
        """
        cfg: ExperimentConfig = self.__cfg
        stacked: np.ndarray = np.stack([o.spectral_efficiency for o in outcomes], axis=-1)
        sweep: List[float] = list(cfg.snr_sweep_db)
        entries: List[AggregateEntry] = []
        energy_efficiency: Dict[str, float] = {}
        for i, scheme_cfg in enumerate(cfg.schemes):
            power: float = scheme_power(scheme_cfg, self.__upa.num_elements, cfg.lens_power_elements,
                                        cfg.power_model)
            means: List[float] = []
            for j, snr in enumerate(sweep):
                mean, stderr = mean_and_stderr(stacked[i, j, :])
                means.append(mean)
                entries.append(AggregateEntry(scheme_cfg.label, scheme_cfg.scheme, self.resolved_m_rf(scheme_cfg),
                                              snr, mean, stderr, len(outcomes), power))
            order: np.ndarray = np.argsort(sweep)
            reference_se: float = float(np.interp(cfg.reference_snr_db, np.asarray(sweep)[order],
                                                  np.asarray(means)[order]))
            energy_efficiency[scheme_cfg.label] = safe_zero_div(reference_se, power)
        return AggregateResult(cfg, entries, energy_efficiency, [o.fingerprints for o in outcomes])


def run_experiment(cfg: ExperimentConfig) -> AggregateResult:
    """
    Run a Monte Carlo experiment. Every trial evaluates all schemes on the same channel realization; the output is
    fully determined by the configuration and its master seed.

    Parameters
    ----------
    cfg: `ExperimentConfig`
        Experiment configuration

    Returns
    -------
    result: `AggregateResult`
        Aggregated result

    Raises
    ------
    SimulationException
        If a trial fails
    """
    return ExperimentRunner(cfg).run()
