# -*- coding: utf-8 -*-
"""
Package for the transceiver architectures.
This package contains water-filling, antenna selection, the analog beam codebook and the transmission schemes.
"""
from lensmimo.transceiver.schemes import SchemeConfig, SchemeResult, SchemeType
__all__ = ['waterfilling', 'selection', 'codebook', 'schemes', 'SchemeConfig', 'SchemeResult', 'SchemeType']

import lensmimo.transceiver.waterfilling
import lensmimo.transceiver.selection
import lensmimo.transceiver.codebook
import lensmimo.transceiver.schemes
