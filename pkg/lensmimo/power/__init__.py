# -*- coding: utf-8 -*-
"""
Package for the base station power consumption models.
"""
from lensmimo.power.consumption import PowerModel
__all__ = ['consumption', 'PowerModel']

import lensmimo.power.consumption
