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
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

from lensmimo.model.base import SimulationException, check_positive
from lensmimo.transceiver.schemes import SchemeConfig, SchemeType

logger: logging.Logger = logging.getLogger(__name__)

DEFAULT_P_RF: float = 0.25
"""Power of one RF chain in watts."""
DEFAULT_P_PS: float = 0.015
"""Power of one phase shifter in watts."""
DEFAULT_P_SW: float = 0.005
"""Power of one analog switch in watts."""
DEFAULT_UPA_ELEMENTS: int = 400
DEFAULT_LENS_ELEMENTS: int = 149
DEFAULT_TABLE_RF_CHAINS: List[int] = [3, 16]


@dataclass(frozen=True)
class PowerModel:
    """
    PowerModel
    ==========
    Hardware power constants of the base station. Radiated and baseband processing power are not modelled.

    Parameters
    ----------
    p_rf: float (optional) [default: 0.25]
        Watts per RF chain
    p_ps: float (optional) [default: 0.015]
        Watts per phase shifter
    p_sw: float (optional) [default: 0.005]
        Watts per analog switch

    Raises
    ------
    SimulationException
        If a constant is not strictly positive
    """
    p_rf: float = DEFAULT_P_RF
    p_ps: float = DEFAULT_P_PS
    p_sw: float = DEFAULT_P_SW

    def __post_init__(self):
        check_positive({'p_rf': self.p_rf, 'p_ps': self.p_ps, 'p_sw': self.p_sw})

    def scaled(self, factor: float) -> 'PowerModel':
        """
        Power model with all constants multiplied by a factor.

        Parameters
        ----------
        factor: float
            Positive factor

        Returns
        -------
        model: `PowerModel`
            Scaled model
        """
        return PowerModel(self.p_rf * factor, self.p_ps * factor, self.p_sw * factor)

    def __json__(self):
        return {'p_rf': self.p_rf, 'p_ps': self.p_ps, 'p_sw': self.p_sw}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> 'PowerModel':
        return cls(float(data.get('p_rf', DEFAULT_P_RF)), float(data.get('p_ps', DEFAULT_P_PS)),
                   float(data.get('p_sw', DEFAULT_P_SW)))


def _check_counts(m: int, m_rf: int):
    if m < 1:
        raise SimulationException(f'Antenna count:={m} must be at least 1.')
    if not 1 <= m_rf <= m:
        raise SimulationException(f'RF chains m_rf:={m_rf} must be between 1 and the antenna count:={m}.')


def power_digital(m: int, pm: PowerModel = PowerModel()) -> float:
    """
    Power of a fully digital array, M P_rf.

    Parameters
    ----------
    m: int
        Antenna count
    pm: `PowerModel` (optional) [default: PowerModel()]
        Power constants

    Returns
    -------
    power: float
        Power in watts

    Raises
    ------
    SimulationException
        If m < 1
    """
    _check_counts(m, m)
    return m * pm.p_rf


def power_hybrid(m: int, m_rf: int, pm: PowerModel = PowerModel()) -> float:
    """
    Power of a fully connected hybrid array, M_rf P_rf + M M_rf P_ps.

    Parameters
    ----------
    m: int
        Antenna count
    m_rf: int
        RF chains
    pm: `PowerModel` (optional) [default: PowerModel()]
        Power constants

    Returns
    -------
    power: float
        Power in watts

    Raises
    ------
    SimulationException
        If the counts are out of range
    """
    _check_counts(m, m_rf)
    return m_rf * pm.p_rf + m * m_rf * pm.p_ps


def power_lens(m_lens: int, m_rf: int, pm: PowerModel = PowerModel()) -> float:
    """
    Power of a lens array with a switching network, M_rf P_rf + M_lens M_rf P_sw.

    Parameters
    ----------
    m_lens: int
        Lens antenna count
    m_rf: int
        RF chains
    pm: `PowerModel` (optional) [default: PowerModel()]
        Power constants

    Returns
    -------
    power: float
        Power in watts

    Raises
    ------
    SimulationException
        If the counts are out of range
    """
    _check_counts(m_lens, m_rf)
    return m_rf * pm.p_rf + m_lens * m_rf * pm.p_sw


def power_selection(m: int, m_rf: int, pm: PowerModel = PowerModel()) -> float:
    """
    Power of a UPA with antenna selection through a switching network, M_rf P_rf + M M_rf P_sw.
    """
    _check_counts(m, m_rf)
    return m_rf * pm.p_rf + m * m_rf * pm.p_sw


def scheme_power(cfg: SchemeConfig, upa_elements: int = DEFAULT_UPA_ELEMENTS,
                 lens_elements: int = DEFAULT_LENS_ELEMENTS, pm: PowerModel = PowerModel()) -> float:
    """
    BS power consumption of a configured scheme.

    Parameters
    ----------
    cfg: `SchemeConfig`
        Scheme configuration
    upa_elements: int (optional) [default: 400]
        UPA antenna count
    lens_elements: int (optional) [default: 149]
        Lens antenna count
    pm: `PowerModel` (optional) [default: PowerModel()]
        Power constants

    Returns
    -------
    power: float
        Power in watts
    """
    if cfg.scheme == SchemeType.UPA_DIGITAL_OFDM:
        return power_digital(upa_elements, pm)
    if cfg.scheme == SchemeType.UPA_HYBRID_OFDM:
        return power_hybrid(upa_elements, cfg.m_rf, pm)
    if cfg.scheme == SchemeType.UPA_SELECTION_OFDM:
        return power_selection(upa_elements, cfg.m_rf, pm)
    return power_lens(lens_elements, cfg.m_rf, pm)


class PowerTable:
    """
    PowerTable
    ==========
    Power consumption of the fully digital, hybrid and lens architectures for a list of RF chain counts.

    Parameters
    ----------
    upa_elements: int
        UPA antenna count
    lens_elements: int
        Lens antenna count
    rf_chains: List[int]
        RF chain counts of the hybrid and lens columns
    pm: `PowerModel`
        Power constants
    """

    def __init__(self, upa_elements: int, lens_elements: int, rf_chains: List[int], pm: PowerModel):
        self.__upa_elements: int = upa_elements
        self.__lens_elements: int = lens_elements
        self.__rf_chains: List[int] = rf_chains
        self.__pm: PowerModel = pm
        self.__digital: float = power_digital(upa_elements, pm)
        self.__hybrid: List[float] = [power_hybrid(upa_elements, m_rf, pm) for m_rf in rf_chains]
        self.__lens: List[float] = [power_lens(lens_elements, m_rf, pm) for m_rf in rf_chains]

    @property
    def upa_elements(self) -> int:
        """UPA antenna count. (`int`, read-only)"""
        return self.__upa_elements

    @property
    def lens_elements(self) -> int:
        """Lens antenna count. (`int`, read-only)"""
        return self.__lens_elements

    @property
    def rf_chains(self) -> List[int]:
        """RF chain counts. (`List[int]`, read-only)"""
        return self.__rf_chains

    @property
    def power_model(self) -> PowerModel:
        """Power constants. (`PowerModel`, read-only)"""
        return self.__pm

    @property
    def digital(self) -> float:
        """Fully digital power in watts. (`float`, read-only)"""
        return self.__digital

    @property
    def hybrid(self) -> List[float]:
        """Hybrid power per RF chain count. (`List[float]`, read-only)"""
        return self.__hybrid

    @property
    def lens(self) -> List[float]:
        """Lens power per RF chain count. (`List[float]`, read-only)"""
        return self.__lens

    def rows(self) -> List[List[Any]]:
        """
        Rows (architecture, antennas, m_rf, watts) of the table.

        Returns
        -------
        rows: List[List[Any]]
            One row per table cell
        """
        rows: List[List[Any]] = [['digital', self.upa_elements, self.upa_elements, self.digital]]
        rows.extend(['hybrid', self.upa_elements, m_rf, w] for m_rf, w in zip(self.rf_chains, self.hybrid))
        rows.extend(['lens', self.lens_elements, m_rf, w] for m_rf, w in zip(self.rf_chains, self.lens))
        return rows

    def __json__(self):
        return {
            'power_model': self.power_model.__json__(),
            'upa_elements': self.upa_elements,
            'lens_elements': self.lens_elements,
            'rf_chains': self.rf_chains,
            'digital': self.digital,
            'hybrid': self.hybrid,
            'lens': self.lens
        }

    def __repr__(self):
        return f'<PowerTable : [M_upa:={self.upa_elements}, M_lens:={self.lens_elements}, ' \
               f'm_rf:={self.rf_chains}]>'


def power_table(upa_elements: int = DEFAULT_UPA_ELEMENTS, lens_elements: int = DEFAULT_LENS_ELEMENTS,
                rf_chains: Optional[Sequence[int]] = None, pm: PowerModel = PowerModel()) -> PowerTable:
    """
    Power consumption grid of the three architectures.

    Parameters
    ----------
    upa_elements: int (optional) [default: 400]
        UPA antenna count
    lens_elements: int (optional) [default: 149]
        Lens antenna count
    rf_chains: Optional[Sequence[int]] (optional) [default: [3, 16]]
        RF chain counts
    pm: `PowerModel` (optional) [default: PowerModel()]
        Power constants

    Returns
    -------
    table: `PowerTable`
        Power grid

    Raises
    ------
    SimulationException
        If no RF chain count is given or a count is out of range
    """
    chains: List[int] = list(DEFAULT_TABLE_RF_CHAINS if rf_chains is None else rf_chains)
    if len(chains) == 0:
        raise SimulationException('The power table needs at least one RF chain count.')
    return PowerTable(upa_elements, lens_elements, chains, pm)


def format_power_table(table: PowerTable) -> str:
    """
    Render the power grid as aligned text, one column per architecture and RF chain count.

    Parameters
    ----------
    table: `PowerTable`
        Power grid

    Returns
    -------
    text: str
        Aligned table
    """
    header: List[str] = ['', 'Fully digital'] + [f'Hybrid M_rf={m}' for m in table.rf_chains] + \
                        [f'Lens M_rf={m}' for m in table.rf_chains]
    values: List[str] = ['Power (W)'] + [f'{w:g}' for w in [table.digital] + table.hybrid + table.lens]
    widths: List[int] = [max(len(h), len(v)) for h, v in zip(header, values)]
    lines: List[str] = [
        ' | '.join(h.ljust(w) for h, w in zip(header, widths)),
        '-+-'.join('-' * w for w in widths),
        ' | '.join(v.ljust(w) for v, w in zip(values, widths))
    ]
    return '\n'.join(lines)
