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
from typing import List, Optional, Tuple

import numpy as np

from lensmimo.model.arrays import UpaGeometry
from lensmimo.model.base import Direction, SimulationException, deg2rad

logger: logging.Logger = logging.getLogger(__name__)

DEFAULT_CODEBOOK_SIZE: int = 256
"""Number of beams of the beamsteering codebook."""


class Codebook:
    """
    Codebook
    ========
    Analog beamforming codebook. Every entry is a unit-norm beam vector; for a beamsteering codebook it is the
    conjugate steering vector a(d)* / ||a(d)|| of a grid direction d, i.e. the beam that is matched to a path
    departing towards d under the channel convention H = alpha a_rx a_tx^T.

    Parameters
    ----------
    vectors: np.ndarray
        Beam vectors as columns, shape (M, size)
    directions: Optional[List[Direction]] (optional) [default: None]
        Steering direction per beam, if the beams are steering vectors

    Raises
    ------
    SimulationException
        If the codebook is empty or a beam does not have unit norm
    """

    def __init__(self, vectors: np.ndarray, directions: Optional[List[Direction]] = None):
        vectors = np.asarray(vectors, dtype=complex)
        if vectors.ndim != 2 or vectors.shape[1] == 0:
            raise SimulationException('A codebook needs a non-empty matrix of beam vectors.')
        if not np.allclose(np.linalg.norm(vectors, axis=0), 1., rtol=0., atol=1e-12):
            raise SimulationException('Codebook beams must have unit norm.')
        if directions is not None and len(directions) != vectors.shape[1]:
            raise SimulationException('Codebook needs one direction per beam.')
        self.__vectors: np.ndarray = vectors
        self.__directions: Optional[List[Direction]] = directions

    @classmethod
    def canonical(cls, num_elements: int) -> 'Codebook':
        """
        Codebook of the canonical basis vectors, i.e. every beam drives a single element.

        Parameters
        ----------
        num_elements: int
            Number of array elements

        Returns
        -------
        codebook: `Codebook`
            Identity codebook
        """
        return cls(np.eye(num_elements, dtype=complex))

    @property
    def vectors(self) -> np.ndarray:
        """Beam vectors as columns. (`np.ndarray`, read-only)"""
        return self.__vectors

    @property
    def directions(self) -> Optional[List[Direction]]:
        """Steering direction per beam or None. (`Optional[List[Direction]]`, read-only)"""
        return self.__directions

    @property
    def size(self) -> int:
        """Number of beams. (`int`, read-only)"""
        return self.__vectors.shape[1]

    @property
    def num_elements(self) -> int:
        """Length of the beam vectors. (`int`, read-only)"""
        return self.__vectors.shape[0]

    def __len__(self):
        return self.size

    def __repr__(self):
        return f'<Codebook : [size:={self.size}, #elements:={self.num_elements}]>'


def grid_shape(size: int, n_az: Optional[int] = None) -> Tuple[int, int]:
    """
    Split a codebook size into azimuth x elevation grid points.

    Parameters
    ----------
    size: int
        Codebook size
    n_az: Optional[int] (optional) [default: None]
        Number of azimuth points; a square grid is used if omitted

    Returns
    -------
    shape: Tuple[int, int]
        (n_az, n_el)

    Raises
    ------
    SimulationException
        If the size cannot be factored as requested
    """
    if size < 1:
        raise SimulationException(f'Codebook size:={size} must be at least 1.')
    if n_az is None:
        n_az = math.isqrt(size)
        if n_az * n_az != size:
            raise SimulationException(f'Codebook size:={size} is not a square; pass the azimuth grid size.')
    if n_az < 1 or size % n_az != 0:
        raise SimulationException(f'Codebook size:={size} cannot be split into {n_az} azimuth points.')
    return n_az, size // n_az


def interval_midpoints(low: float, high: float, count: int) -> np.ndarray:
    """
    Midpoints of `count` equal sub-intervals of [low, high].

    Parameters
    ----------
    low: float
        Lower bound
    high: float
        Upper bound
    count: int
        Number of sub-intervals

    Returns
    -------
    points: np.ndarray
        Grid points
    """
    step: float = (high - low) / count
    return low + step * (np.arange(count) + 0.5)


def build_codebook(size: int, az_range_deg: Tuple[float, float], el_range_deg: Tuple[float, float],
                   geom: UpaGeometry, n_az: Optional[int] = None) -> Codebook:
    """
    Beamsteering codebook obtained by uniformly quantizing the azimuth and elevation intervals.

    Grid points sit at the midpoints of the sub-intervals; beams are ordered elevation-major.

    Parameters
    ----------
    size: int
        Number of beams
    az_range_deg: Tuple[float, float]
        Azimuth interval in degrees
    el_range_deg: Tuple[float, float]
        Elevation interval in degrees
    geom: `UpaGeometry`
        BS array
    n_az: Optional[int] (optional) [default: None]
        Number of azimuth grid points; square grid if omitted

    Returns
    -------
    codebook: `Codebook`
        Codebook of unit-norm steering beams

    Raises
    ------
    SimulationException
        If the size is not factorable
    """
    n_az, n_el = grid_shape(size, n_az)
    azimuths: np.ndarray = interval_midpoints(az_range_deg[0], az_range_deg[1], n_az)
    elevations: np.ndarray = interval_midpoints(el_range_deg[0], el_range_deg[1], n_el)
    directions: List[Direction] = [Direction(deg2rad(el), deg2rad(az)) for el in elevations for az in azimuths]
    steering: np.ndarray = geom.response_matrix(directions)
    vectors: np.ndarray = steering.conj() / np.linalg.norm(steering, axis=0, keepdims=True)
    logger.debug(f'Codebook with {n_az} x {n_el} beams for {geom}.')
    return Codebook(vectors, directions)
