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
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import linalg

from lensmimo.model.arrays import ArrayGeometry, LensArrayGeometry, UpaGeometry
from lensmimo.model.base import SimulationException
from lensmimo.model.channel import DEFAULT_AZIMUTH_RANGE_DEG, DEFAULT_ELEVATION_RANGE_DEG, MultipathChannel, \
    effective_flat_channel, freq_response, leakage_ratio
from lensmimo.transceiver.codebook import DEFAULT_CODEBOOK_SIZE, Codebook, build_codebook
from lensmimo.transceiver.selection import AntennaSelection, rank_elements, select_antennas
from lensmimo.transceiver.waterfilling import WaterfillingResult, eigen_gains, waterfill

logger: logging.Logger = logging.getLogger(__name__)

DEFAULT_SUBCARRIERS: int = 512
"""Number of OFDM subcarriers N."""
DEFAULT_CP_LENGTH: int = 50
"""Cyclic prefix length mu in samples."""
DEFAULT_SNR_DB: float = 10.
"""SNR used when a scheme is configured without an explicit SNR."""
PROJECTION_TOLERANCE: float = 1e-12
"""Residual beam norm below which a beam adds no new direction to the RF span."""
DELAY_SAMPLE_TOLERANCE: float = 1e-9
"""Slack when converting the delay spread to cyclic prefix samples."""


class SchemeType(Enum):
    """
    SchemeType
    ==========
    Transmission schemes of the link simulator.
    """
    LENS_SC_PDM = 'lens-sc-pdm'
    """Lens array at the BS, antenna selection, path delay pre-compensation, single carrier."""
    LENS_DS_PDM = 'lens-ds-pdm'
    """Lens arrays at both ends, channel decoupled into parallel per-path channels."""
    UPA_DIGITAL_OFDM = 'upa-digital-ofdm'
    """Fully digital UPA with MIMO-OFDM."""
    UPA_HYBRID_OFDM = 'upa-hybrid-ofdm'
    """UPA with codebook based hybrid analog/digital precoding and MIMO-OFDM."""
    UPA_SELECTION_OFDM = 'upa-selection-ofdm'
    """UPA with power based antenna selection and MIMO-OFDM."""

    @property
    def uses_lens(self) -> bool:
        """Flag if the BS of the scheme is a lens array. (`bool`, read-only)"""
        return self in (SchemeType.LENS_SC_PDM, SchemeType.LENS_DS_PDM)

    @property
    def is_ofdm(self) -> bool:
        """Flag if the scheme transmits with OFDM and a cyclic prefix. (`bool`, read-only)"""
        return not self.uses_lens


def db2lin(value_db: float) -> float:
    """
    Convert decibel to a linear ratio.

    Parameters
    ----------
    value_db: float
        Value in dB

    Returns
    -------
    value: float
        Linear value
    """
    return 10. ** (value_db / 10.)


@dataclass(frozen=True)
class SchemeConfig:
    """
    SchemeConfig
    ============
    Configuration of a transmission scheme.

    Parameters
    ----------
    scheme: `SchemeType`
        Transmission scheme
    m_rf: Optional[int] (optional) [default: None]
        RF chains at the BS; for the fully digital scheme None resolves to the element count
    snr_db: Union[float, Tuple[float, ...]] (optional) [default: 10.0]
        Single SNR or SNR sweep in dB
    n_subcarriers: int (optional) [default: 512]
        Number of subcarriers N
    cp_len: int (optional) [default: 50]
        Cyclic prefix length mu
    codebook_size: int (optional) [default: 256]
        Size of the beamsteering codebook

    Raises
    ------
    SimulationException
        If one of the counts is out of range
    """
    scheme: SchemeType
    m_rf: Optional[int] = None
    snr_db: Union[float, Tuple[float, ...]] = DEFAULT_SNR_DB
    n_subcarriers: int = DEFAULT_SUBCARRIERS
    cp_len: int = DEFAULT_CP_LENGTH
    codebook_size: int = DEFAULT_CODEBOOK_SIZE

    def __post_init__(self):
        if not isinstance(self.scheme, SchemeType):
            raise SimulationException(f'Unknown scheme:={self.scheme}.')
        if self.m_rf is None and self.scheme != SchemeType.UPA_DIGITAL_OFDM:
            raise SimulationException(f'Scheme:={self.scheme.value} needs the number of RF chains.')
        if self.m_rf is not None and self.m_rf < 1:
            raise SimulationException(f'Number of RF chains m_rf:={self.m_rf} must be at least 1.')
        if self.n_subcarriers < 1:
            raise SimulationException(f'Number of subcarriers:={self.n_subcarriers} must be at least 1.')
        if self.cp_len < 0:
            raise SimulationException(f'Cyclic prefix length:={self.cp_len} must not be negative.')
        if self.codebook_size < 1:
            raise SimulationException(f'Codebook size:={self.codebook_size} must be at least 1.')
        if isinstance(self.snr_db, list):
            object.__setattr__(self, 'snr_db', tuple(self.snr_db))

    @property
    def snr_points(self) -> List[float]:
        """SNR points in dB. (`List[float]`, read-only)"""
        if isinstance(self.snr_db, tuple):
            return [float(s) for s in self.snr_db]
        return [float(self.snr_db)]

    @property
    def is_sweep(self) -> bool:
        """Flag if the SNR is given as a list. (`bool`, read-only)"""
        return isinstance(self.snr_db, tuple)

    @property
    def cp_factor(self) -> float:
        """Cyclic prefix overhead N / (N + mu), 1 for single carrier schemes. (`float`, read-only)"""
        if not self.scheme.is_ofdm:
            return 1.
        return self.n_subcarriers / (self.n_subcarriers + self.cp_len)

    @property
    def label(self) -> str:
        """Scheme name with its RF chain count. (`str`, read-only)"""
        return self.scheme.value if self.m_rf is None else f'{self.scheme.value}/{self.m_rf}'

    def with_snr(self, snr_db: Union[float, Sequence[float]]) -> 'SchemeConfig':
        """
        Copy of the configuration with other SNR points.

        Parameters
        ----------
        snr_db: Union[float, Sequence[float]]
            Single SNR or sweep in dB

        Returns
        -------
        config: `SchemeConfig`
            New configuration
        """
        value: Union[float, Tuple[float, ...]] = float(snr_db) if np.isscalar(snr_db) else tuple(snr_db)
        return SchemeConfig(self.scheme, self.m_rf, value, self.n_subcarriers, self.cp_len, self.codebook_size)

    def __json__(self):
        return {
            'scheme': self.scheme.value,
            'm_rf': self.m_rf,
            'snr_db': list(self.snr_db) if self.is_sweep else self.snr_db,
            'n_subcarriers': self.n_subcarriers,
            'cp_len': self.cp_len,
            'codebook_size': self.codebook_size
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> 'SchemeConfig':
        """
        Create the configuration from its JSON form.

        Parameters
        ----------
        data: Dict[str, Any]
            JSON dictionary; only `scheme` is mandatory

        Returns
        -------
        config: `SchemeConfig`
            Scheme configuration

        Raises
        ------
        SimulationException
            If the scheme name is unknown
        """
        try:
            scheme: SchemeType = SchemeType(data['scheme'])
        except (KeyError, ValueError) as e:
            raise SimulationException(f'Unknown scheme:={data.get("scheme")}.') from e
        snr: Any = data.get('snr_db', DEFAULT_SNR_DB)
        return cls(scheme=scheme, m_rf=data.get('m_rf'),
                   snr_db=tuple(float(s) for s in snr) if isinstance(snr, list) else float(snr),
                   n_subcarriers=int(data.get('n_subcarriers', DEFAULT_SUBCARRIERS)),
                   cp_len=int(data.get('cp_len', DEFAULT_CP_LENGTH)),
                   codebook_size=int(data.get('codebook_size', DEFAULT_CODEBOOK_SIZE)))


class SchemeResult:
    """
    SchemeResult
    ============
    Spectral efficiency of one scheme on one channel realization at one SNR.

    Parameters
    ----------
    scheme: `SchemeType`
        Transmission scheme
    m_rf: int
        RF chains in use
    snr_db: float
        SNR in dB
    spectral_efficiency: float
        Spectral efficiency in bits/s/Hz
    per_stream_power: List[float]
        Allocated power per stream, averaged over subcarriers for OFDM schemes
    selected_antennas: Optional[List[int]] (optional) [default: None]
        Selected BS elements of the selection schemes
    rf_beams: Optional[List[int]] (optional) [default: None]
        Selected codebook indices of the hybrid scheme
    leakage: Optional[float] (optional) [default: None]
        Inter-path leakage at the selected lens elements
    channel_fingerprint: Optional[str] (optional) [default: None]
        Fingerprint of the channel realization the scheme was evaluated on
    """

    def __init__(self, scheme: SchemeType, m_rf: int, snr_db: float, spectral_efficiency: float,
                 per_stream_power: List[float], selected_antennas: Optional[List[int]] = None,
                 rf_beams: Optional[List[int]] = None, leakage: Optional[float] = None,
                 channel_fingerprint: Optional[str] = None):
        self.__scheme: SchemeType = scheme
        self.__m_rf: int = m_rf
        self.__snr_db: float = snr_db
        self.__spectral_efficiency: float = max(0., spectral_efficiency)
        self.__per_stream_power: List[float] = per_stream_power
        self.__selected_antennas: List[int] = selected_antennas or []
        self.__rf_beams: List[int] = rf_beams or []
        self.__leakage: Optional[float] = leakage
        self.__channel_fingerprint: Optional[str] = channel_fingerprint

    @property
    def scheme(self) -> SchemeType:
        """Transmission scheme. (`SchemeType`, read-only)"""
        return self.__scheme

    @property
    def m_rf(self) -> int:
        """RF chains in use. (`int`, read-only)"""
        return self.__m_rf

    @property
    def snr_db(self) -> float:
        """SNR in dB. (`float`, read-only)"""
        return self.__snr_db

    @property
    def spectral_efficiency(self) -> float:
        """Spectral efficiency in bits/s/Hz. (`float`, read-only)"""
        return self.__spectral_efficiency

    @property
    def per_stream_power(self) -> List[float]:
        """Allocated power per stream. (`List[float]`, read-only)"""
        return self.__per_stream_power

    @property
    def selected_antennas(self) -> List[int]:
        """Selected BS elements. (`List[int]`, read-only)"""
        return self.__selected_antennas

    @property
    def rf_beams(self) -> List[int]:
        """Selected codebook beams. (`List[int]`, read-only)"""
        return self.__rf_beams

    @property
    def leakage(self) -> Optional[float]:
        """Inter-path leakage of the lens schemes. (`Optional[float]`, read-only)"""
        return self.__leakage

    @property
    def channel_fingerprint(self) -> Optional[str]:
        """Fingerprint of the evaluated channel realization. (`Optional[str]`, read-only)"""
        return self.__channel_fingerprint

    def __dict__(self):
        return {
            'scheme': self.scheme.value,
            'm_rf': self.m_rf,
            'snr_db': self.snr_db,
            'spectral_efficiency': self.spectral_efficiency,
            'per_stream_power': self.per_stream_power,
            'selected_antennas': self.selected_antennas,
            'rf_beams': self.rf_beams,
            'leakage': self.leakage,
            'channel_fingerprint': self.channel_fingerprint
        }

    def __json__(self):
        return self.__dict__()

    def __repr__(self):
        return f'<SchemeResult : [scheme:={self.scheme.value}, m_rf:={self.m_rf}, snr:={self.snr_db} dB, ' \
               f'se:={self.spectral_efficiency:.4f}]>'


class StreamGains:
    """
    StreamGains
    ===========
    SNR independent part of a scheme evaluation: the eigenmode gains of all subcarriers of one channel
    realization. The power budget is one per subcarrier, water-filled jointly over all (subcarrier, stream)
    pairs; the rate is normalized per subcarrier and scaled by the cyclic prefix overhead.

    Parameters
    ----------
    cfg: `SchemeConfig`
        Scheme configuration
    m_rf: int
        RF chains in use
    gains: np.ndarray
        Non-negative gains of shape (subcarriers, streams)
    selected_antennas: Optional[List[int]] (optional) [default: None]
        Selected BS elements
    rf_beams: Optional[List[int]] (optional) [default: None]
        Selected codebook beams
    leakage: Optional[float] (optional) [default: None]
        Inter-path leakage
    """

    def __init__(self, cfg: SchemeConfig, m_rf: int, gains: np.ndarray,
                 selected_antennas: Optional[List[int]] = None, rf_beams: Optional[List[int]] = None,
                 leakage: Optional[float] = None):
        gains = np.atleast_2d(np.asarray(gains, dtype=float))
        self.__cfg: SchemeConfig = cfg
        self.__m_rf: int = m_rf
        self.__gains: np.ndarray = np.clip(gains, 0., None)
        self.__selected_antennas: Optional[List[int]] = selected_antennas
        self.__rf_beams: Optional[List[int]] = rf_beams
        self.__leakage: Optional[float] = leakage

    @property
    def gains(self) -> np.ndarray:
        """Gains per subcarrier and stream. (`np.ndarray`, read-only)"""
        return self.__gains

    @property
    def num_streams(self) -> int:
        """Number of streams per subcarrier. (`int`, read-only)"""
        return self.__gains.shape[1]

    def evaluate(self, snr_db: float, channel_fingerprint: Optional[str] = None) -> SchemeResult:
        """
        Water-fill the gains at one SNR.

        Parameters
        ----------
        snr_db: float
            SNR in dB
        channel_fingerprint: Optional[str] (optional) [default: None]
            Fingerprint of the channel the gains were computed from

        Returns
        -------
        result: `SchemeResult`
            Spectral efficiency and allocation
        """
        carriers: int = self.__gains.shape[0]
        if self.num_streams == 0:
            allocation: WaterfillingResult = WaterfillingResult(np.zeros(0), 0., 0.)
        else:
            allocation = waterfill(self.__gains.ravel() * db2lin(snr_db), float(carriers))
        if allocation.powers.size == 0:
            per_stream: List[float] = [0.] * self.num_streams
        else:
            per_stream = np.mean(allocation.powers.reshape(self.__gains.shape), axis=0).tolist()
        se: float = self.__cfg.cp_factor * allocation.rate / carriers
        return SchemeResult(self.__cfg.scheme, self.__m_rf, float(snr_db), se, per_stream,
                            selected_antennas=self.__selected_antennas, rf_beams=self.__rf_beams,
                            leakage=self.__leakage, channel_fingerprint=channel_fingerprint)

    def __repr__(self):
        return f'<StreamGains : [scheme:={self.__cfg.label}, shape:={self.__gains.shape}]>'


def required_cp_length(bandwidth_hz: float, delay_s: float) -> int:
    """
    Cyclic prefix length ceil(B tau) in samples that covers a delay spread.

    Parameters
    ----------
    bandwidth_hz: float
        Signal bandwidth
    delay_s: float
        Largest path delay in seconds

    Returns
    -------
    samples: int
        Required cyclic prefix length
    """
    return max(0, math.ceil(bandwidth_hz * delay_s - DELAY_SAMPLE_TOLERANCE))


def check_cyclic_prefix(ch: MultipathChannel, cfg: SchemeConfig):
    """
    Check that the cyclic prefix covers the delay spread of the realization, mu >= ceil(B tau_max).

    Parameters
    ----------
    ch: `MultipathChannel`
        Channel realization
    cfg: `SchemeConfig`
        OFDM scheme configuration

    Raises
    ------
    SimulationException
        If the cyclic prefix is too short
    """
    needed: int = required_cp_length(ch.bandwidth_hz, float(np.max(ch.delays)))
    if cfg.cp_len < needed:
        raise SimulationException(f'Cyclic prefix:={cfg.cp_len} is shorter than the delay spread of {needed} '
                                  f'samples.')


def greedy_beam_selection(covariance: np.ndarray, codebook: Codebook, m_rf: int) -> List[int]:
    """
    Approximate Gram-Schmidt beam selection. In every step the codebook beam v with the largest energy
    v^H P R P v is chosen, where P projects onto the orthogonal complement of the beams chosen so far.
    Beams are never chosen twice; ties keep the codebook order.

    Parameters
    ----------
    covariance: np.ndarray
        Wideband transmit covariance R = sum_k H[k]^H H[k], shape (M, M)
    codebook: `Codebook`
        Analog beam codebook
    m_rf: int
        Number of beams to choose

    Returns
    -------
    beams: List[int]
        Chosen codebook indices in selection order
    """
    vectors: np.ndarray = codebook.vectors
    residual: np.ndarray = vectors.copy()
    chosen: List[int] = []
    for _ in range(m_rf):
        energies: np.ndarray = np.clip(np.real(np.sum(residual.conj() * (covariance @ residual), axis=0)), 0., None)
        remaining: np.ndarray = np.setdiff1d(np.arange(codebook.size), chosen)
        best: int = int(remaining[rank_elements(energies[remaining])[0]])
        chosen.append(best)
        direction: np.ndarray = residual[:, best]
        norm: float = float(np.linalg.norm(direction))
        if norm > PROJECTION_TOLERANCE:
            direction = direction / norm
            # deflate all candidates by the new orthonormal direction
            residual = residual - np.outer(direction, direction.conj() @ residual)
    return chosen


class TransmissionScheme(ABC):
    """
    TransmissionScheme
    ==================
    Abstract transmission scheme. A scheme reduces a channel realization to its stream gains once and evaluates
    the spectral efficiency at any number of SNR points.

    Parameters
    ----------
    cfg: `SchemeConfig`
        Scheme configuration
    """

    def __init__(self, cfg: SchemeConfig):
        self.__cfg: SchemeConfig = cfg

    @property
    def config(self) -> SchemeConfig:
        """Scheme configuration. (`SchemeConfig`, read-only)"""
        return self.__cfg

    @abstractmethod
    def stream_gains(self, ch: MultipathChannel, bs: ArrayGeometry, ms: ArrayGeometry) -> StreamGains:
        """
        Reduce a channel realization to the gains of the parallel streams.

        Parameters
        ----------
        ch: `MultipathChannel`
            Channel realization
        bs: `ArrayGeometry`
            BS array
        ms: `ArrayGeometry`
            MS array

        Returns
        -------
        gains: `StreamGains`
            Stream gains of the realization
        """
        pass

    def sweep(self, ch: MultipathChannel, bs: ArrayGeometry, ms: ArrayGeometry,
              snr_points: Optional[Sequence[float]] = None) -> List[SchemeResult]:
        """
        Evaluate the scheme over SNR points.

        Parameters
        ----------
        ch: `MultipathChannel`
            Channel realization
        bs: `ArrayGeometry`
            BS array
        ms: `ArrayGeometry`
            MS array
        snr_points: Optional[Sequence[float]] (optional) [default: None]
            SNR points in dB; the configured points if omitted

        Returns
        -------
        results: List[SchemeResult]
            One result per SNR point
        """
        gains: StreamGains = self.stream_gains(ch, bs, ms)
        points: Sequence[float] = self.config.snr_points if snr_points is None else snr_points
        fingerprint: str = ch.fingerprint
        return [gains.evaluate(snr, fingerprint) for snr in points]

    def rate(self, ch: MultipathChannel, bs: ArrayGeometry, ms: ArrayGeometry) \
            -> Union[SchemeResult, List[SchemeResult]]:
        """
        Evaluate at the configured SNR: a single result for a scalar SNR, a list for a sweep.
        """
        results: List[SchemeResult] = self.sweep(ch, bs, ms)
        return results if self.config.is_sweep else results[0]

    def __repr__(self):
        return f'<{self.__class__.__name__} : [scheme:={self.config.label}]>'


class LensPdmScheme(TransmissionScheme):
    """
    LensPdmScheme
    =============
    Single-sided path division multiplexing with a lens array at the BS. The m_rf strongest elements are selected,
    each is advanced by the delay of its strongest path and the resulting flat channel is used with eigenmode
    transmission over at most min(m_rf, M_ms, L) streams. No cyclic prefix is needed.
    """

    def stream_gains(self, ch: MultipathChannel, bs: ArrayGeometry, ms: ArrayGeometry) -> StreamGains:
        if not isinstance(bs, LensArrayGeometry):
            raise SimulationException(f'Scheme:={self.config.scheme.value} requires a lens array at the BS.')
        selection: AntennaSelection = select_antennas(ch, bs, self.config.m_rf)
        compensation: Dict[int, float] = {m: ch.paths[path].delay for m, path in selection.assignment.items()}
        matrix: np.ndarray = effective_flat_channel(ch, bs, ms, compensation)[:, selection.indices]
        streams: int = min(len(selection.indices), ms.num_elements, ch.num_paths)
        gains: np.ndarray = eigen_gains(matrix)[:streams]
        leakage: float = leakage_ratio(ch, bs, selection.indices, selection.assignment)
        logger.debug(f'Lens PDM with {len(selection.indices)} elements: streams:={streams}, leakage:={leakage:.3e}')
        return StreamGains(self.config, len(selection.indices), gains[np.newaxis, :],
                           selected_antennas=selection.indices, leakage=leakage)


class ParallelLensPdmScheme(TransmissionScheme):
    """
    ParallelLensPdmScheme
    =====================
    Double-sided path division multiplexing with lens arrays at the BS and the MS. Every selected BS element is
    advanced by the delay of its assigned path and every MS element is read by the path that dominates it. The
    transmission uses the flat channel between the selected BS elements and the MS elements of the served paths,
    so power that one path leaks onto the elements of another path stays part of the channel. On a one-hot
    separated channel the block decouples into one rank-one MIMO channel per path.
    """

    def stream_gains(self, ch: MultipathChannel, bs: ArrayGeometry, ms: ArrayGeometry) -> StreamGains:
        if not isinstance(bs, LensArrayGeometry) or not isinstance(ms, LensArrayGeometry):
            raise SimulationException(f'Scheme:={self.config.scheme.value} requires lens arrays at BS and MS.')
        selection: AntennaSelection = select_antennas(ch, bs, self.config.m_rf)
        served: List[int] = selection.paths_served()
        compensation: Dict[int, float] = {m: ch.paths[path].delay for m, path in selection.assignment.items()}
        ms_powers: np.ndarray = np.abs(ms.response_matrix([p.ms_dir for p in ch.paths])) ** 2 \
            * np.abs(ch.gains[np.newaxis, :]) ** 2
        rows: np.ndarray = np.flatnonzero(np.isin(np.argmax(ms_powers, axis=1), served))
        matrix: np.ndarray = effective_flat_channel(ch, bs, ms, compensation)[np.ix_(rows, selection.indices)]
        streams: int = min(len(served), len(rows), len(selection.indices))
        gains: np.ndarray = eigen_gains(matrix)[:streams]
        leakage: float = leakage_ratio(ch, bs, selection.indices, selection.assignment)
        logger.debug(f'Double-sided PDM with {len(selection.indices)} BS and {len(rows)} MS elements: '
                     f'streams:={streams}, leakage:={leakage:.3e}')
        return StreamGains(self.config, len(selection.indices), gains[np.newaxis, :],
                           selected_antennas=selection.indices, leakage=leakage)


class DigitalOfdmScheme(TransmissionScheme):
    """
    DigitalOfdmScheme
    =================
    Fully digital MIMO-OFDM with one RF chain per UPA element, eigenmode transmission and joint water-filling over
    all subcarriers.
    """

    def stream_gains(self, ch: MultipathChannel, bs: ArrayGeometry, ms: ArrayGeometry) -> StreamGains:
        m_rf: Optional[int] = self.config.m_rf
        if m_rf is not None and m_rf != bs.num_elements:
            raise SimulationException(f'Fully digital transmission needs m_rf:={m_rf} to equal the '
                                      f'{bs.num_elements} BS elements.')
        check_cyclic_prefix(ch, self.config)
        matrices: np.ndarray = freq_response(ch, bs, ms, self.config.n_subcarriers)
        return StreamGains(self.config, bs.num_elements, eigen_gains(matrices))


class SelectionOfdmScheme(TransmissionScheme):
    """
    SelectionOfdmScheme
    ===================
    MIMO-OFDM over the m_rf strongest UPA elements.
    """

    def stream_gains(self, ch: MultipathChannel, bs: ArrayGeometry, ms: ArrayGeometry) -> StreamGains:
        check_cyclic_prefix(ch, self.config)
        selection: AntennaSelection = select_antennas(ch, bs, self.config.m_rf)
        matrices: np.ndarray = freq_response(ch, bs, ms, self.config.n_subcarriers)[:, :, selection.indices]
        return StreamGains(self.config, len(selection.indices), eigen_gains(matrices),
                           selected_antennas=selection.indices)


class HybridOfdmScheme(TransmissionScheme):
    """
    HybridOfdmScheme
    ================
    Hybrid analog/digital MIMO-OFDM. The analog stage is a set of m_rf codebook beams chosen by greedy
    Gram-Schmidt selection on the wideband transmit covariance; the digital stage transmits over the eigenmodes of
    the effective channels H[k] F_RF. The MS is fully digital.

    Parameters
    ----------
    cfg: `SchemeConfig`
        Scheme configuration
    codebook: Optional[Codebook] (optional) [default: None]
        Analog codebook
    bs: Optional[ArrayGeometry] (optional) [default: None]
        BS array; without a codebook a beamsteering codebook over the default angle ranges is built for it here

    Raises
    ------
    SimulationException
        If a codebook has to be built for an array that is not a UPA
    """

    def __init__(self, cfg: SchemeConfig, codebook: Optional[Codebook] = None, bs: Optional[ArrayGeometry] = None):
        super().__init__(cfg)
        if codebook is None and bs is not None:
            codebook = self.default_codebook(bs)
        self.__codebook: Optional[Codebook] = codebook

    @property
    def codebook(self) -> Optional[Codebook]:
        """Configured or eagerly built codebook. (`Optional[Codebook]`, read-only)"""
        return self.__codebook

    def default_codebook(self, bs: ArrayGeometry) -> Codebook:
        """
        Beamsteering codebook of the configured size over the default angle ranges.

        Parameters
        ----------
        bs: `ArrayGeometry`
            BS array

        Returns
        -------
        codebook: `Codebook`
            Beamsteering codebook

        Raises
        ------
        SimulationException
            If the array is not a UPA
        """
        if not isinstance(bs, UpaGeometry):
            raise SimulationException('A beamsteering codebook can only be built for a UPA.')
        return build_codebook(self.config.codebook_size, DEFAULT_AZIMUTH_RANGE_DEG, DEFAULT_ELEVATION_RANGE_DEG, bs)

    def codebook_for(self, bs: ArrayGeometry) -> Codebook:
        """
        Codebook used with a BS array. The scheme object is not modified.

        Parameters
        ----------
        bs: `ArrayGeometry`
            BS array

        Returns
        -------
        codebook: `Codebook`
            Configured codebook, or a freshly built beamsteering codebook if none is configured
        """
        codebook: Codebook = self.default_codebook(bs) if self.__codebook is None else self.__codebook
        if codebook.num_elements != bs.num_elements:
            raise SimulationException(f'Codebook beams of length {codebook.num_elements} do not match the '
                                      f'{bs.num_elements} BS elements.')
        return codebook

    def stream_gains(self, ch: MultipathChannel, bs: ArrayGeometry, ms: ArrayGeometry) -> StreamGains:
        codebook: Codebook = self.codebook_for(bs)
        m_rf: int = self.config.m_rf
        if m_rf > codebook.size or m_rf > bs.num_elements:
            raise SimulationException(f'm_rf:={m_rf} exceeds the codebook size:={codebook.size} or the '
                                      f'{bs.num_elements} BS elements.')
        check_cyclic_prefix(ch, self.config)
        matrices: np.ndarray = freq_response(ch, bs, ms, self.config.n_subcarriers)
        covariance: np.ndarray = np.einsum('kri,krj->ij', matrices.conj(), matrices, optimize=True)
        beams: List[int] = greedy_beam_selection(covariance, codebook, m_rf)
        basis: np.ndarray = linalg.orth(codebook.vectors[:, beams])
        logger.debug(f'Hybrid precoding with beams:={beams}, rank:={basis.shape[1]}')
        return StreamGains(self.config, m_rf, eigen_gains(matrices @ basis), rf_beams=beams)


def create_scheme(cfg: SchemeConfig, codebook: Optional[Codebook] = None,
                  bs: Optional[ArrayGeometry] = None) -> TransmissionScheme:
    """
    Create the scheme object of a configuration.

    Parameters
    ----------
    cfg: `SchemeConfig`
        Scheme configuration
    codebook: Optional[Codebook] (optional) [default: None]
        Codebook of the hybrid scheme
    bs: Optional[ArrayGeometry] (optional) [default: None]
        BS array the hybrid scheme builds its default codebook for when no codebook is given

    Returns
    -------
    scheme: `TransmissionScheme`
        Scheme implementation
    """
    if cfg.scheme == SchemeType.LENS_SC_PDM:
        return LensPdmScheme(cfg)
    if cfg.scheme == SchemeType.LENS_DS_PDM:
        return ParallelLensPdmScheme(cfg)
    if cfg.scheme == SchemeType.UPA_DIGITAL_OFDM:
        return DigitalOfdmScheme(cfg)
    if cfg.scheme == SchemeType.UPA_HYBRID_OFDM:
        return HybridOfdmScheme(cfg, codebook, bs)
    return SelectionOfdmScheme(cfg)


def _require(cfg: SchemeConfig, scheme: SchemeType):
    if cfg.scheme != scheme:
        raise SimulationException(f'Configuration of scheme:={cfg.scheme.value} passed where '
                                  f'{scheme.value} is expected.')


def lens_sc_pdm_rate(ch: MultipathChannel, bs_geom: LensArrayGeometry, ms_geom: ArrayGeometry,
                     cfg: SchemeConfig) -> Union[SchemeResult, List[SchemeResult]]:
    """
    Spectral efficiency of single-sided lens path division multiplexing.

    Parameters
    ----------
    ch: `MultipathChannel`
        Channel realization
    bs_geom: `LensArrayGeometry`
        BS lens array
    ms_geom: `ArrayGeometry`
        MS array
    cfg: `SchemeConfig`
        Configuration of scheme lens-sc-pdm

    Returns
    -------
    result: Union[SchemeResult, List[SchemeResult]]
        Result, or one result per SNR point for an SNR sweep
    """
    _require(cfg, SchemeType.LENS_SC_PDM)
    return LensPdmScheme(cfg).rate(ch, bs_geom, ms_geom)


def lens_parallel_pdm_rate(ch: MultipathChannel, bs_geom: LensArrayGeometry, ms_geom: LensArrayGeometry,
                           cfg: SchemeConfig) -> Union[SchemeResult, List[SchemeResult]]:
    """
    Spectral efficiency of double-sided lens path division multiplexing.

    Parameters
    ----------
    ch: `MultipathChannel`
        Channel realization
    bs_geom: `LensArrayGeometry`
        BS lens array
    ms_geom: `LensArrayGeometry`
        MS lens array
    cfg: `SchemeConfig`
        Configuration of scheme lens-ds-pdm

    Returns
    -------
    result: Union[SchemeResult, List[SchemeResult]]
        Result, or one result per SNR point for an SNR sweep
    """
    _require(cfg, SchemeType.LENS_DS_PDM)
    return ParallelLensPdmScheme(cfg).rate(ch, bs_geom, ms_geom)


def ofdm_digital_rate(ch: MultipathChannel, bs_geom: UpaGeometry, ms_geom: ArrayGeometry,
                      cfg: SchemeConfig) -> Union[SchemeResult, List[SchemeResult]]:
    """
    Spectral efficiency of fully digital MIMO-OFDM,
    (N / (N + mu)) (1 / N) sum_k sum_s log2(1 + p_ks lambda_ks SNR) with joint water-filling.

    Parameters
    ----------
    ch: `MultipathChannel`
        Channel realization
    bs_geom: `UpaGeometry`
        BS array
    ms_geom: `ArrayGeometry`
        MS array
    cfg: `SchemeConfig`
        Configuration of scheme upa-digital-ofdm

    Returns
    -------
    result: Union[SchemeResult, List[SchemeResult]]
        Result, or one result per SNR point for an SNR sweep
    """
    _require(cfg, SchemeType.UPA_DIGITAL_OFDM)
    return DigitalOfdmScheme(cfg).rate(ch, bs_geom, ms_geom)


def hybrid_rate(ch: MultipathChannel, bs_geom: UpaGeometry, ms_geom: ArrayGeometry, cfg: SchemeConfig,
                codebook: Optional[Codebook] = None) -> Union[SchemeResult, List[SchemeResult]]:
    """
    Spectral efficiency of hybrid analog/digital MIMO-OFDM.

    Parameters
    ----------
    ch: `MultipathChannel`
        Channel realization
    bs_geom: `UpaGeometry`
        BS array
    ms_geom: `ArrayGeometry`
        MS array
    cfg: `SchemeConfig`
        Configuration of scheme upa-hybrid-ofdm
    codebook: Optional[Codebook] (optional) [default: None]
        Analog codebook; beamsteering codebook of size cfg.codebook_size if omitted

    Returns
    -------
    result: Union[SchemeResult, List[SchemeResult]]
        Result, or one result per SNR point for an SNR sweep
    """
    _require(cfg, SchemeType.UPA_HYBRID_OFDM)
    return HybridOfdmScheme(cfg, codebook, bs_geom).rate(ch, bs_geom, ms_geom)


def upa_selection_rate(ch: MultipathChannel, bs_geom: UpaGeometry, ms_geom: ArrayGeometry,
                       cfg: SchemeConfig) -> Union[SchemeResult, List[SchemeResult]]:
    """
    Spectral efficiency of MIMO-OFDM over the m_rf strongest UPA elements.

    Parameters
    ----------
    ch: `MultipathChannel`
        Channel realization
    bs_geom: `UpaGeometry`
        BS array
    ms_geom: `ArrayGeometry`
        MS array
    cfg: `SchemeConfig`
        Configuration of scheme upa-selection-ofdm

    Returns
    -------
    result: Union[SchemeResult, List[SchemeResult]]
        Result, or one result per SNR point for an SNR sweep
    """
    _require(cfg, SchemeType.UPA_SELECTION_OFDM)
    return SelectionOfdmScheme(cfg).rate(ch, bs_geom, ms_geom)
