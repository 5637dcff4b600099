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
import hashlib
import math
from abc import ABC, abstractmethod
from enum import Enum
from typing import List, Any, Dict

# Tolerance for angles that sit on the boundary of [-pi/2, pi/2]
ANGLE_TOLERANCE: float = 1e-12


class SimulationException(Exception):
    """
    SimulationException
    ===================
    Exception raised for invalid arguments and failed operations of the simulator.
    """


def deg2rad(value: float) -> float:
    """
    Convert degrees to radians.

    Parameters
    ----------
    value: float
        Angle in degrees

    Returns
    -------
    angle: float
        Angle in radians
    """
    return math.radians(value)


def rad2deg(value: float) -> float:
    """
    Convert radians to degrees.

    Parameters
    ----------
    value: float
        Angle in radians

    Returns
    -------
    angle: float
        Angle in degrees
    """
    return math.degrees(value)


class Direction:
    """
    Direction
    =========
    Elevation and azimuth angle of a plane wave, both in radians.

    The elevation angle is measured from the x-y plane towards the z axis, the azimuth angle within the x-y plane
    from the x axis (the array broadside) towards the y axis.

    Parameters
    ----------
    theta: float
        Elevation angle in radians, within [-pi/2, pi/2]
    phi: float
        Azimuth angle in radians, within [-pi/2, pi/2]

    Raises
    ------
    SimulationException
        If one of the angles is outside [-pi/2, pi/2]
    """

    def __init__(self, theta: float, phi: float):
        for name, value in (('theta', theta), ('phi', phi)):
            if not math.isfinite(value) or abs(value) > math.pi / 2 + ANGLE_TOLERANCE:
                raise SimulationException(f'Angle {name}:={value} is outside [-pi/2, pi/2].')
        self.__theta: float = float(theta)
        self.__phi: float = float(phi)

    @classmethod
    def from_degrees(cls, theta: float, phi: float) -> 'Direction':
        """
        Create a direction from angles given in degrees.

        Parameters
        ----------
        theta: float
            Elevation angle in degrees
        phi: float
            Azimuth angle in degrees

        Returns
        -------
        direction: `Direction`
            Direction with angles in radians
        """
        return cls(deg2rad(theta), deg2rad(phi))

    @property
    def theta(self) -> float:
        """Elevation angle in radians. (`float`, read-only)"""
        return self.__theta

    @property
    def phi(self) -> float:
        """Azimuth angle in radians. (`float`, read-only)"""
        return self.__phi

    @property
    def theta_deg(self) -> float:
        """Elevation angle in degrees. (`float`, read-only)"""
        return rad2deg(self.__theta)

    @property
    def phi_deg(self) -> float:
        """Azimuth angle in degrees. (`float`, read-only)"""
        return rad2deg(self.__phi)

    def __dict__(self):
        return {
            'theta_deg': self.theta_deg,
            'phi_deg': self.phi_deg
        }

    def __json__(self):
        return self.__dict__()

    def __eq__(self, other: Any):
        if not isinstance(other, Direction):
            return False
        return self.theta == other.theta and self.phi == other.phi

    def __hash__(self):
        return hash((self.theta, self.phi))

    def __repr__(self):
        return f'<Direction : [theta:={self.theta_deg:.4f}°, phi:={self.phi_deg:.4f}°]>'


class HashFingerprint(ABC):
    """
    Hash Fingerprint
    ================
    MD5-hash based fingerprint of a simulation object.

    The subclass provides an ordered list of tokens. Each token is rendered to text and the tokens are joined with
    a separator before hashing. Floating-point numbers are rendered with `repr`, so two objects share a fingerprint
    only if all their numbers are bit-identical.

    The supported token types are:
        - Integer number
        - Floating-point number
        - Complex number
        - Enum
        - String
        - Nested lists of the above
    """
    SEPARATOR: str = "\n"

    @abstractmethod
    def __tokenize__(self) -> List[Any]:
        """
        Generates a list of tokens which identify the object. The subclass defines the order of tokens.

        Returns
        -------
        tokens: `List[Any]`
            List of tokenized items
        """

    @staticmethod
    def __render__(token: Any) -> str:
        if token is None:
            return ''
        if isinstance(token, Enum):
            return str(token.name)
        if isinstance(token, (list, tuple)):
            return HashFingerprint.SEPARATOR.join(HashFingerprint.__render__(t) for t in token)
        if isinstance(token, (float, complex)):
            return repr(token)
        return str(token)

    @property
    def fingerprint(self) -> str:
        """MD5 fingerprint in hexadecimal form. (`str`, read-only)"""
        message: str = ''
        for t in self.__tokenize__():
            message += HashFingerprint.__render__(t)
            message += HashFingerprint.SEPARATOR
        return hashlib.md5(message.encode(encoding='UTF-8', errors='strict')).hexdigest()


def check_positive(values: Dict[str, float]):
    """
    Check that all values are strictly positive.

    Parameters
    ----------
    values: Dict[str, float]
        Mapping from parameter name to value

    Raises
    ------
    SimulationException
        If one of the values is not strictly positive
    """
    for name, value in values.items():
        if not value > 0:
            raise SimulationException(f'Parameter {name}:={value} must be strictly positive.')
