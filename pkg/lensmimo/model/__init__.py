# -*- coding: utf-8 -*-
"""
Package for the simulation model.
This package contains the antenna array geometries and the multipath channel model.
"""
from lensmimo.model.base import Direction, SimulationException
__all__ = ['base', 'arrays', 'channel', 'Direction', 'SimulationException']

import lensmimo.model.base
import lensmimo.model.arrays
import lensmimo.model.channel
