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
from typing import List, Dict

import numpy as np

from lensmimo.model.arrays import ArrayGeometry
from lensmimo.model.base import SimulationException
from lensmimo.model.channel import MultipathChannel, element_path_powers

logger: logging.Logger = logging.getLogger(__name__)

RANKING_DECIMALS: int = 12
"""Element powers are compared after rounding their ratio to the strongest element to this many decimals."""


class AntennaSelection:
    """
    AntennaSelection
    ================
    Result of the power based antenna selection.

    Parameters
    ----------
    indices: List[int]
        Selected element indices, strongest first
    assignment: Dict[int, int]
        Selected element index to the index of its strongest path
    element_powers: np.ndarray
        Received power per element summed over all paths
    """

    def __init__(self, indices: List[int], assignment: Dict[int, int], element_powers: np.ndarray):
        self.__indices: List[int] = indices
        self.__assignment: Dict[int, int] = assignment
        self.__element_powers: np.ndarray = element_powers

    @property
    def indices(self) -> List[int]:
        """Selected element indices, strongest first. (`List[int]`, read-only)"""
        return self.__indices

    @property
    def assignment(self) -> Dict[int, int]:
        """Element to path assignment. (`Dict[int, int]`, read-only)"""
        return self.__assignment

    @property
    def element_powers(self) -> np.ndarray:
        """Total power per element. (`np.ndarray`, read-only)"""
        return self.__element_powers

    @property
    def captured_fraction(self) -> float:
        """Share of the total element power captured by the selection. (`float`, read-only)"""
        total: float = float(np.sum(self.__element_powers))
        if total <= 0.:
            return 0.
        return float(np.sum(self.__element_powers[self.__indices]) / total)

    def paths_served(self) -> List[int]:
        """
        Paths that are assigned to at least one selected element.

        Returns
        -------
        paths: List[int]
            Sorted path indices
        """
        return sorted(set(self.__assignment.values()))

    def __json__(self):
        return {'indices': self.indices, 'assignment': {str(k): v for k, v in self.assignment.items()},
                'captured_fraction': self.captured_fraction}

    def __repr__(self):
        return f'<AntennaSelection : [indices:={self.indices}, captured:={self.captured_fraction:.4f}]>'


def rank_elements(element_powers: np.ndarray) -> np.ndarray:
    """
    Order elements by decreasing power; equal powers keep the lexicographic element order.

    Parameters
    ----------
    element_powers: np.ndarray
        Power per element

    Returns
    -------
    order: np.ndarray
        Element indices, strongest first
    """
    strongest: float = float(np.max(element_powers)) if element_powers.size else 0.
    key: np.ndarray = np.round(element_powers / strongest, RANKING_DECIMALS) if strongest > 0 else \
        np.zeros_like(element_powers)
    return np.lexsort((np.arange(element_powers.size), -key))


def select_antennas(ch: MultipathChannel, geom: ArrayGeometry, m_rf: int) -> AntennaSelection:
    """
    Power based antenna selection: the m_rf elements with the largest received power
    sum_l |alpha_l|^2 |a_m(bs_l)|^2 are selected and every selected element is assigned to its strongest path.

    Parameters
    ----------
    ch: `MultipathChannel`
        Channel realization
    geom: `ArrayGeometry`
        BS array, usually a lens array
    m_rf: int
        Number of RF chains

    Returns
    -------
    selection: `AntennaSelection`
        Selected elements and element to path assignment

    Raises
    ------
    SimulationException
        If m_rf < 1
    """
    if m_rf < 1:
        raise SimulationException(f'Number of RF chains m_rf:={m_rf} must be at least 1.')
    if m_rf > geom.num_elements:
        logger.warning(f'm_rf:={m_rf} exceeds the {geom.num_elements} array elements; selecting all elements.')
        m_rf = geom.num_elements
    per_path: np.ndarray = element_path_powers(ch, geom)
    totals: np.ndarray = np.sum(per_path, axis=1)
    indices: List[int] = [int(i) for i in rank_elements(totals)[:m_rf]]
    assignment: Dict[int, int] = {m: int(np.argmax(per_path[m, :])) for m in indices}
    return AntennaSelection(indices, assignment, totals)
