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
from typing import Any

import numpy as np
from scipy import optimize

from lensmimo.model.base import SimulationException, check_positive

logger: logging.Logger = logging.getLogger(__name__)

POWER_TOLERANCE: float = 1e-9
"""Relative tolerance of the power constraint."""


class WaterfillingResult:
    """
    WaterfillingResult
    ==================
    Power allocation over parallel Gaussian channels.

    Parameters
    ----------
    powers: np.ndarray
        Power per channel, in the order of the input gains
    water_level: float
        Water level nu
    rate: float
        Sum rate sum_i log2(1 + p_i g_i) in bits per channel use
    """

    def __init__(self, powers: np.ndarray, water_level: float, rate: float):
        self.__powers: np.ndarray = powers
        self.__water_level: float = water_level
        self.__rate: float = rate

    @property
    def powers(self) -> np.ndarray:
        """Power allocation. (`np.ndarray`, read-only)"""
        return self.__powers

    @property
    def water_level(self) -> float:
        """Water level. (`float`, read-only)"""
        return self.__water_level

    @property
    def rate(self) -> float:
        """Achieved sum rate in bits. (`float`, read-only)"""
        return self.__rate

    def __json__(self):
        return {'powers': self.powers.tolist(), 'water_level': self.water_level, 'rate': self.rate}

    def __repr__(self):
        return f'<WaterfillingResult : [#channels:={len(self.powers)}, rate:={self.rate:.6f}]>'


def sum_rate(powers: np.ndarray, gains: np.ndarray) -> float:
    """
    Sum rate of parallel Gaussian channels.

    Parameters
    ----------
    powers: np.ndarray
        Power per channel
    gains: np.ndarray
        Gain per channel

    Returns
    -------
    rate: float
        sum_i log2(1 + p_i g_i)
    """
    return float(np.sum(np.log1p(np.asarray(powers) * np.asarray(gains))) / np.log(2.))


def waterfill(gains: Any, total_power: float) -> WaterfillingResult:
    """
    Water-filling power allocation p_i = max(0, nu - 1 / g_i) with sum_i p_i = total_power.

    The water level is located by bisection; once the set of active channels is known the level is refined to the
    closed form (P + sum_active 1 / g_i) / |active|.

    Parameters
    ----------
    gains: array-like
        Non-negative channel gains
    total_power: float
        Power budget P

    Returns
    -------
    result: `WaterfillingResult`
        Allocation, water level and rate; an empty allocation with zero rate if no gain is positive

    Raises
    ------
    SimulationException
        If the budget is not positive or a gain is negative
    """
    check_positive({'total_power': total_power})
    g: np.ndarray = np.asarray(gains, dtype=float).ravel()
    if np.any(g < 0) or not np.all(np.isfinite(g)):
        raise SimulationException('Channel gains must be finite and non-negative.')
    active: np.ndarray = g > 0
    if not np.any(active):
        logger.debug('Water-filling over channels without gain.')
        return WaterfillingResult(np.zeros(0), 0., 0.)
    inverse: np.ndarray = np.full(g.shape, np.inf)
    inverse[active] = 1. / g[active]
    # level is measured above the strongest channel, within [0, P]
    floor: float = float(np.min(inverse))
    relative: np.ndarray = inverse - floor
    high: float = total_power

    def excess(level: float) -> float:
        return float(np.sum(np.maximum(0., level - relative))) - total_power

    if excess(high) > 0:
        level: float = optimize.bisect(excess, 0., high, xtol=POWER_TOLERANCE * total_power / g.size,
                                       maxiter=500)
    else:
        level = high
    used: np.ndarray = relative < level
    level = (total_power + float(np.sum(relative[used]))) / int(np.sum(used))
    powers: np.ndarray = np.maximum(0., level - relative)
    powers[~np.isfinite(relative)] = 0.
    assert abs(np.sum(powers) - total_power) <= POWER_TOLERANCE * total_power, 'Power constraint violated.'
    return WaterfillingResult(powers, floor + level, sum_rate(powers, g))


def eigen_gains(matrix: np.ndarray) -> np.ndarray:
    """
    Squared singular values of one matrix or of a stack of matrices.

    Parameters
    ----------
    matrix: np.ndarray
        Complex matrix (..., M_rx, M_tx)

    Returns
    -------
    gains: np.ndarray
        Eigenvalues of H^H H in descending order along the last axis, (..., min(M_rx, M_tx))
    """
    if min(matrix.shape[-2:]) == 0:
        return np.zeros(matrix.shape[:-2] + (0,))
    return np.linalg.svd(matrix, compute_uv=False) ** 2


def capacity_logdet(matrix: np.ndarray, snr: float, total_power: float = 1.) -> float:
    """
    Water-filled capacity of a flat MIMO channel evaluated as log2 det(I + snr H Q H^H), with the covariance Q
    built from the eigenvectors of H^H H and the water-filling powers.

    Parameters
    ----------
    matrix: np.ndarray
        Complex channel matrix (M_rx, M_tx)
    snr: float
        Linear SNR
    total_power: float (optional) [default: 1.0]
        Power budget

    Returns
    -------
    capacity: float
        Capacity in bits per channel use
    """
    gram: np.ndarray = matrix.conj().T @ matrix
    eigenvalues, vectors = np.linalg.eigh(gram)
    eigenvalues = np.clip(eigenvalues, 0., None)
    allocation: WaterfillingResult = waterfill(eigenvalues * snr, total_power)
    if allocation.powers.size == 0:
        return 0.
    covariance: np.ndarray = (vectors * allocation.powers[np.newaxis, :]) @ vectors.conj().T
    identity: np.ndarray = np.eye(matrix.shape[0])
    _, logdet = np.linalg.slogdet(identity + snr * matrix @ covariance @ matrix.conj().T)
    return float(logdet / np.log(2.))
