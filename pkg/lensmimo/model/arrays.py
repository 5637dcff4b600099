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
from typing import List, Any, Sequence, Dict, Tuple, Optional

import numpy as np

from lensmimo.model.base import Direction, SimulationException, check_positive, rad2deg

logger: logging.Logger = logging.getLogger(__name__)

SINC_ZERO_THRESHOLD: float = 1e-12
"""Below this magnitude sinc(x) is evaluated by its Taylor expansion."""
SINC_INTEGER_TOLERANCE: float = 1e-9
"""Arguments this close to a non-zero integer evaluate to an exact zero."""
FLOOR_TOLERANCE: float = 1e-9
"""Slack for the placement rule, so that products like 10 * sin(30°) floor to 5."""
DEFAULT_SPACING: float = 0.5
"""UPA element spacing in wavelengths."""


def sinc(x: np.ndarray) -> np.ndarray:
    """
    Normalized sinc function sin(pi x) / (pi x).

    The value at zero is 1; arguments within `SINC_ZERO_THRESHOLD` of zero use the expansion 1 - (pi x)^2 / 6 and
    arguments within `SINC_INTEGER_TOLERANCE` of a non-zero integer are exactly zero.

    Parameters
    ----------
    x: np.ndarray
        Arguments

    Returns
    -------
    values: np.ndarray
        sinc(x) element-wise
    """
    x = np.asarray(x, dtype=float)
    px: np.ndarray = np.pi * x
    small: np.ndarray = np.abs(x) < SINC_ZERO_THRESHOLD
    nearest: np.ndarray = np.round(x)
    on_zero: np.ndarray = (np.abs(x - nearest) < SINC_INTEGER_TOLERANCE) & (nearest != 0)
    with np.errstate(divide='ignore', invalid='ignore'):
        values: np.ndarray = np.where(small, 1. - px ** 2 / 6., np.sin(px) / px)
    return np.where(on_zero, 0., values)


class ArrayGeometry(ABC):
    """
    ArrayGeometry
    =============
    Abstract antenna array with direction-dependent response vectors.
    """

    @property
    @abstractmethod
    def num_elements(self) -> int:
        """Number of antenna elements. (`int`, read-only)"""

    @property
    @abstractmethod
    def kind(self) -> str:
        """Geometry kind, either 'lens' or 'upa'. (`str`, read-only)"""

    @abstractmethod
    def response(self, direction: Direction) -> np.ndarray:
        """
        Array response vector for a direction.

        Parameters
        ----------
        direction: `Direction`
            Signal direction

        Returns
        -------
        response: np.ndarray
            Complex vector of length `num_elements`
        """

    def response_matrix(self, directions: Sequence[Direction]) -> np.ndarray:
        """
        Stack the response vectors of several directions as columns.

        Parameters
        ----------
        directions: Sequence[Direction]
            Signal directions

        Returns
        -------
        responses: np.ndarray
            Complex matrix of shape (num_elements, len(directions))
        """
        if len(directions) == 0:
            return np.zeros((self.num_elements, 0), dtype=complex)
        matrix: np.ndarray = np.stack([self.response(d) for d in directions], axis=1)
        assert matrix.shape == (self.num_elements, len(directions)), 'Response size does not match geometry.'
        return matrix


class LensElement:
    """
    LensElement
    ===========
    Antenna element in the focal surface of an EM lens, parameterized by its elevation and azimuth indices.

    Parameters
    ----------
    m_e: int
        Elevation index
    m_a: int
        Azimuth index
    theta: float
        Elevation angle of the element position in radians
    phi: float
        Azimuth angle of the element position in radians
    """

    def __init__(self, m_e: int, m_a: int, theta: float, phi: float):
        self.__m_e: int = m_e
        self.__m_a: int = m_a
        self.__theta: float = theta
        self.__phi: float = phi

    @property
    def m_e(self) -> int:
        """Elevation index. (`int`, read-only)"""
        return self.__m_e

    @property
    def m_a(self) -> int:
        """Azimuth index. (`int`, read-only)"""
        return self.__m_a

    @property
    def theta(self) -> float:
        """Elevation angle in radians. (`float`, read-only)"""
        return self.__theta

    @property
    def phi(self) -> float:
        """Azimuth angle in radians. (`float`, read-only)"""
        return self.__phi

    @property
    def direction(self) -> Direction:
        """Direction whose focal point is this element. (`Direction`, read-only)"""
        return Direction(self.__theta, self.__phi)

    def __dict__(self):
        return {
            'm_e': self.m_e,
            'm_a': self.m_a,
            'theta_deg': rad2deg(self.theta),
            'phi_deg': rad2deg(self.phi)
        }

    def __json__(self):
        return self.__dict__()

    def __eq__(self, other: Any):
        if not isinstance(other, LensElement):
            return False
        return (self.m_e, self.m_a, self.theta, self.phi) == (other.m_e, other.m_a, other.theta, other.phi)

    def __repr__(self):
        return f'<LensElement : [m_e:={self.m_e}, m_a:={self.m_a}]>'


class LensArrayGeometry(ArrayGeometry):
    """
    LensArrayGeometry
    =================
    Full-dimensional lens antenna array: a planar EM lens of electric dimension d_y x d_z (normalized by the
    wavelength) with antenna elements placed on its focal surface.

    Elements are placed such that sin(theta_m) = m_e / d_z and sin(phi_m) = m_a / (d_y cos(theta_m)) with
    |m_e| <= floor(d_z sin(theta_cov / 2)) and |m_a| <= floor(d_y cos(theta_m) sin(phi_cov / 2)).
    Use `build_lens_geometry` to enumerate the elements.

    Parameters
    ----------
    d_y: float
        Electric aperture width in wavelengths
    d_z: float
        Electric aperture height in wavelengths
    theta_cov: float
        Elevation coverage angle in radians
    phi_cov: float
        Azimuth coverage angle in radians
    elements: List[LensElement]
        Elements sorted by (m_e, m_a)
    """

    def __init__(self, d_y: float, d_z: float, theta_cov: float, phi_cov: float, elements: List[LensElement]):
        self.__d_y: float = d_y
        self.__d_z: float = d_z
        self.__theta_cov: float = theta_cov
        self.__phi_cov: float = phi_cov
        self.__elements: List[LensElement] = elements
        self.__index_map: Dict[Tuple[int, int], int] = {(e.m_e, e.m_a): i for i, e in enumerate(elements)}
        if len(self.__index_map) != len(elements):
            raise SimulationException('Element index pairs (m_e, m_a) must be unique.')
        self.__m_e: np.ndarray = np.array([e.m_e for e in elements], dtype=float)
        self.__m_a: np.ndarray = np.array([e.m_a for e in elements], dtype=float)

    @property
    def kind(self) -> str:
        return 'lens'

    @property
    def d_y(self) -> float:
        """Electric aperture width in wavelengths. (`float`, read-only)"""
        return self.__d_y

    @property
    def d_z(self) -> float:
        """Electric aperture height in wavelengths. (`float`, read-only)"""
        return self.__d_z

    @property
    def theta_cov(self) -> float:
        """Elevation coverage angle in radians. (`float`, read-only)"""
        return self.__theta_cov

    @property
    def phi_cov(self) -> float:
        """Azimuth coverage angle in radians. (`float`, read-only)"""
        return self.__phi_cov

    @property
    def elements(self) -> List[LensElement]:
        """Elements sorted by (m_e, m_a). (`List[LensElement]`, read-only)"""
        return self.__elements

    @property
    def num_elements(self) -> int:
        return len(self.__elements)

    @property
    def aperture_gain(self) -> float:
        """Squared norm d_y * d_z of a perfectly focused response. (`float`, read-only)"""
        return self.__d_y * self.__d_z

    def element_index(self, m_e: int, m_a: int) -> int:
        """
        Position of an element in the response vector.

        Parameters
        ----------
        m_e: int
            Elevation index
        m_a: int
            Azimuth index

        Returns
        -------
        index: int
            Index into `elements`

        Raises
        ------
        SimulationException
            If the geometry has no element (m_e, m_a)
        """
        try:
            return self.__index_map[(m_e, m_a)]
        except KeyError as e:
            raise SimulationException(f'No lens element with (m_e:={m_e}, m_a:={m_a}).') from e

    def covers(self, direction: Direction) -> bool:
        """
        Check whether a direction is inside the coverage angles.

        Parameters
        ----------
        direction: `Direction`
            Signal direction

        Returns
        -------
        flag: bool
            True if |theta| <= theta_cov / 2 and |phi| <= phi_cov / 2
        """
        return (abs(direction.theta) <= self.__theta_cov / 2 + FLOOR_TOLERANCE and
                abs(direction.phi) <= self.__phi_cov / 2 + FLOOR_TOLERANCE)

    def focal_offsets(self, direction: Direction) -> Tuple[float, float]:
        """
        Continuous focal position (d_z sin(theta), d_y cos(theta) sin(phi)) in index units.

        Parameters
        ----------
        direction: `Direction`
            Signal direction

        Returns
        -------
        offsets: Tuple[float, float]
            Elevation and azimuth focal offsets
        """
        return (self.__d_z * math.sin(direction.theta),
                self.__d_y * math.cos(direction.theta) * math.sin(direction.phi))

    def real_response(self, direction: Direction) -> np.ndarray:
        """
        Real-valued sinc-type response of the lens array.

        Parameters
        ----------
        direction: `Direction`
            Signal direction

        Returns
        -------
        response: np.ndarray
            Real vector of length `num_elements`
        """
        if not self.covers(direction):
            logger.debug(f'Direction {direction} is outside the lens coverage.')
        x_e, x_a = self.focal_offsets(direction)
        return math.sqrt(self.aperture_gain) * sinc(self.__m_e - x_e) * sinc(self.__m_a - x_a)

    def response(self, direction: Direction) -> np.ndarray:
        return self.real_response(direction).astype(complex)

    def __dict__(self):
        return {
            'kind': self.kind,
            'd_y': self.d_y,
            'd_z': self.d_z,
            'theta_cov_deg': rad2deg(self.theta_cov),
            'phi_cov_deg': rad2deg(self.phi_cov),
            'num_elements': self.num_elements
        }

    def __json__(self):
        return self.__dict__()

    def __eq__(self, other: Any):
        if not isinstance(other, LensArrayGeometry):
            return False
        return (self.d_y == other.d_y and self.d_z == other.d_z and self.theta_cov == other.theta_cov and
                self.phi_cov == other.phi_cov and self.elements == other.elements)

    def __repr__(self):
        return (f'<LensArrayGeometry : [d_y:={self.d_y}, d_z:={self.d_z}, '
                f'theta_cov:={rad2deg(self.theta_cov):.1f}°, phi_cov:={rad2deg(self.phi_cov):.1f}°, '
                f'#elements:={self.num_elements}]>')


class UpaGeometry(ArrayGeometry):
    """
    UpaGeometry
    ===========
    Uniform planar array in the y-z plane with n_rows elements along z (elevation) and n_cols along y (azimuth).

    Entry (p, q), stored at index p * n_cols + q, of the steering vector is
    amplitude_scale * exp(j 2 pi spacing (p sin(theta) + q cos(theta) sin(phi))).

    Parameters
    ----------
    n_rows: int
        Number of rows (elevation direction)
    n_cols: int
        Number of columns (azimuth direction)
    spacing: float (optional) [default: 0.5]
        Element spacing in wavelengths
    amplitude_scale: float (optional) [default: 1.0]
        Real amplitude of every element

    Raises
    ------
    SimulationException
        If one of the parameters is not strictly positive
    """

    def __init__(self, n_rows: int, n_cols: int, spacing: float = DEFAULT_SPACING, amplitude_scale: float = 1.):
        check_positive({'n_rows': n_rows, 'n_cols': n_cols, 'spacing': spacing, 'amplitude_scale': amplitude_scale})
        self.__n_rows: int = int(n_rows)
        self.__n_cols: int = int(n_cols)
        self.__spacing: float = spacing
        self.__amplitude_scale: float = amplitude_scale
        rows, cols = np.meshgrid(np.arange(self.__n_rows), np.arange(self.__n_cols), indexing='ij')
        self.__rows: np.ndarray = rows.ravel().astype(float)
        self.__cols: np.ndarray = cols.ravel().astype(float)

    @classmethod
    def with_aperture(cls, d_y: float, d_z: float, spacing: float = DEFAULT_SPACING) -> 'UpaGeometry':
        """
        UPA filling an aperture of d_y x d_z wavelengths with an aperture-equalizing amplitude, so that the squared
        norm of every steering vector equals d_y * d_z.

        Parameters
        ----------
        d_y: float
            Aperture width in wavelengths
        d_z: float
            Aperture height in wavelengths
        spacing: float (optional) [default: 0.5]
            Element spacing in wavelengths

        Returns
        -------
        geometry: `UpaGeometry`
            Geometry with round(d_z / spacing) rows and round(d_y / spacing) columns
        """
        check_positive({'d_y': d_y, 'd_z': d_z, 'spacing': spacing})
        n_rows: int = max(1, int(round(d_z / spacing)))
        n_cols: int = max(1, int(round(d_y / spacing)))
        return cls(n_rows, n_cols, spacing, math.sqrt(d_y * d_z / (n_rows * n_cols)))

    @property
    def kind(self) -> str:
        return 'upa'

    @property
    def n_rows(self) -> int:
        """Number of rows. (`int`, read-only)"""
        return self.__n_rows

    @property
    def n_cols(self) -> int:
        """Number of columns. (`int`, read-only)"""
        return self.__n_cols

    @property
    def spacing(self) -> float:
        """Element spacing in wavelengths. (`float`, read-only)"""
        return self.__spacing

    @property
    def amplitude_scale(self) -> float:
        """Per-element amplitude. (`float`, read-only)"""
        return self.__amplitude_scale

    @property
    def num_elements(self) -> int:
        return self.__n_rows * self.__n_cols

    def response(self, direction: Direction) -> np.ndarray:
        phase: np.ndarray = 2 * np.pi * self.__spacing * (
                self.__rows * math.sin(direction.theta) +
                self.__cols * math.cos(direction.theta) * math.sin(direction.phi))
        return self.__amplitude_scale * np.exp(1j * phase)

    def __dict__(self):
        return {
            'kind': self.kind,
            'rows': self.n_rows,
            'cols': self.n_cols,
            'spacing': self.spacing,
            'amplitude_scale': self.amplitude_scale
        }

    def __json__(self):
        return self.__dict__()

    def __eq__(self, other: Any):
        if not isinstance(other, UpaGeometry):
            return False
        return (self.n_rows == other.n_rows and self.n_cols == other.n_cols and self.spacing == other.spacing and
                self.amplitude_scale == other.amplitude_scale)

    def __repr__(self):
        return (f'<UpaGeometry : [rows:={self.n_rows}, cols:={self.n_cols}, spacing:={self.spacing}, '
                f'amplitude:={self.amplitude_scale:.4f}]>')


def _clipped_asin(value: float) -> float:
    return math.asin(min(1., max(-1., value)))


def build_lens_geometry(d_y: float, d_z: float, theta_cov: float, phi_cov: float) -> LensArrayGeometry:
    """
    Enumerate the elements of a lens antenna array.

    Parameters
    ----------
    d_y: float
        Electric aperture width in wavelengths
    d_z: float
        Electric aperture height in wavelengths
    theta_cov: float
        Elevation coverage angle in radians, within [0, pi]
    phi_cov: float
        Azimuth coverage angle in radians, within [0, pi]

    Returns
    -------
    geometry: `LensArrayGeometry`
        Geometry with all valid (m_e, m_a) elements sorted lexicographically

    Raises
    ------
    SimulationException
        If the aperture is not positive or a coverage angle is outside [0, pi]
    """
    check_positive({'d_y': d_y, 'd_z': d_z})
    for name, value in (('theta_cov', theta_cov), ('phi_cov', phi_cov)):
        if not 0. <= value <= math.pi:
            raise SimulationException(f'Coverage angle {name}:={value} must be within [0, pi].')
    elements: List[LensElement] = []
    max_m_e: int = math.floor(d_z * math.sin(theta_cov / 2) + FLOOR_TOLERANCE)
    for m_e in range(-max_m_e, max_m_e + 1):
        theta: float = _clipped_asin(m_e / d_z)
        cos_theta: float = math.cos(theta)
        max_m_a: int = math.floor(d_y * cos_theta * math.sin(phi_cov / 2) + FLOOR_TOLERANCE)
        for m_a in range(-max_m_a, max_m_a + 1):
            elements.append(LensElement(m_e, m_a, theta, _clipped_asin(m_a / (d_y * cos_theta))))
    logger.debug(f'Lens geometry (d_y:={d_y}, d_z:={d_z}) has {len(elements)} elements.')
    return LensArrayGeometry(d_y, d_z, theta_cov, phi_cov, elements)


def lens_response(geom: LensArrayGeometry, direction: Direction) -> np.ndarray:
    """
    Array response of a lens antenna array,
    sqrt(d_y d_z) sinc(m_e - d_z sin(theta)) sinc(m_a - d_y cos(theta) sin(phi)) per element.

    Parameters
    ----------
    geom: `LensArrayGeometry`
        Lens geometry
    direction: `Direction`
        Signal direction; directions outside the coverage are evaluated by the same formula

    Returns
    -------
    response: np.ndarray
        Real vector of length `geom.num_elements`
    """
    return geom.real_response(direction)


def upa_response(geom: UpaGeometry, direction: Direction) -> np.ndarray:
    """
    Steering vector of a uniform planar array.

    Parameters
    ----------
    geom: `UpaGeometry`
        UPA geometry
    direction: `Direction`
        Signal direction

    Returns
    -------
    response: np.ndarray
        Complex vector of length `geom.num_elements`
    """
    return geom.response(direction)


class PowerResponse:
    """
    PowerResponse
    =============
    Per-element power response |a_m|^2 of a lens array for one direction.

    Parameters
    ----------
    direction: `Direction`
        Signal direction
    powers: np.ndarray
        Power per element, ordered as the geometry's elements
    geometry: `LensArrayGeometry`
        Lens geometry
    """

    def __init__(self, direction: Direction, powers: np.ndarray, geometry: LensArrayGeometry):
        self.__direction: Direction = direction
        self.__powers: np.ndarray = powers
        self.__geometry: LensArrayGeometry = geometry
        self.__argmax: int = int(np.argmax(powers))

    @property
    def direction(self) -> Direction:
        """Signal direction. (`Direction`, read-only)"""
        return self.__direction

    @property
    def powers(self) -> np.ndarray:
        """Power per element. (`np.ndarray`, read-only)"""
        return self.__powers

    @property
    def argmax(self) -> Tuple[int, int]:
        """(m_e, m_a) of the element with the largest power; ties resolve to the lowest index. (read-only)"""
        element: LensElement = self.__geometry.elements[self.__argmax]
        return element.m_e, element.m_a

    @property
    def argmax_fraction(self) -> float:
        """Power of the strongest element relative to d_y d_z. (`float`, read-only)"""
        return float(self.__powers[self.__argmax] / self.__geometry.aperture_gain)

    @property
    def total_fraction(self) -> float:
        """Total power over all elements relative to d_y d_z. (`float`, read-only)"""
        return float(np.sum(self.__powers) / self.__geometry.aperture_gain)

    @property
    def in_coverage(self) -> bool:
        """True if the direction lies inside the coverage angles. (`bool`, read-only)"""
        return self.__geometry.covers(self.__direction)

    def rows(self) -> List[Tuple[int, int, float]]:
        """
        Table rows for contour plotting.

        Returns
        -------
        rows: List[Tuple[int, int, float]]
            (m_e, m_a, power) per element
        """
        return [(e.m_e, e.m_a, float(p)) for e, p in zip(self.__geometry.elements, self.__powers)]

    def __dict__(self):
        return {
            'direction': self.direction.__json__(),
            'argmax': list(self.argmax),
            'argmax_fraction': self.argmax_fraction,
            'total_fraction': self.total_fraction,
            'in_coverage': self.in_coverage
        }

    def __json__(self):
        return self.__dict__()

    def __repr__(self):
        return (f'<PowerResponse : [direction:={self.direction}, argmax:={self.argmax}, '
                f'fraction:={self.argmax_fraction:.4f}]>')


def power_response_map(geom: LensArrayGeometry, directions: Sequence[Direction]) -> List[PowerResponse]:
    """
    Per-element power response maps for several directions.

    Parameters
    ----------
    geom: `LensArrayGeometry`
        Lens geometry
    directions: Sequence[Direction]
        Non-empty list of directions

    Returns
    -------
    maps: List[PowerResponse]
        One power map per direction

    Raises
    ------
    SimulationException
        If no direction is given
    """
    if len(directions) == 0:
        raise SimulationException('At least one direction is required for a power response map.')
    maps: List[PowerResponse] = []
    for direction in directions:
        if not geom.covers(direction):
            logger.warning(f'Direction {direction} is outside the lens coverage.')
        maps.append(PowerResponse(direction, lens_response(geom, direction) ** 2, geom))
    return maps


def geometry_from_json(spec: Dict[str, Any]) -> ArrayGeometry:
    """
    Build an array geometry from its JSON description.

    Lens arrays: {"kind": "lens", "d_y", "d_z", "theta_cov_deg", "phi_cov_deg"}.
    UPAs: {"kind": "upa", "rows", "cols", "spacing", "amplitude_scale"} or, for an aperture-equalized UPA,
    {"kind": "upa", "d_y", "d_z", "spacing"}.

    Parameters
    ----------
    spec: Dict[str, Any]
        Geometry description

    Returns
    -------
    geometry: `ArrayGeometry`
        Lens or UPA geometry

    Raises
    ------
    SimulationException
        If the description is incomplete or of unknown kind
    """
    kind: Optional[str] = spec.get('kind')
    try:
        if kind == 'lens':
            return build_lens_geometry(float(spec['d_y']), float(spec['d_z']),
                                       math.radians(float(spec['theta_cov_deg'])),
                                       math.radians(float(spec['phi_cov_deg'])))
        if kind == 'upa':
            spacing: float = float(spec.get('spacing', DEFAULT_SPACING))
            if 'd_y' in spec:
                return UpaGeometry.with_aperture(float(spec['d_y']), float(spec['d_z']), spacing)
            return UpaGeometry(int(spec['rows']), int(spec['cols']), spacing,
                               float(spec.get('amplitude_scale', 1.)))
    except KeyError as e:
        raise SimulationException(f'Geometry description {spec} misses key {e}.') from e
    raise SimulationException(f'Unknown geometry kind:={kind}.')
