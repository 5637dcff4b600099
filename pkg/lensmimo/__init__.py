# -*- coding: utf-8 -*-
"""
    Lens MIMO Link Simulator
    ========================
    This Python library simulates wideband millimeter-wave MIMO links built around lens antenna arrays.

    A lens antenna array focuses plane waves arriving from different directions onto different elements of the
    array. Together with the angular sparsity of mmWave channels this allows a base station to serve every
    propagation path with its own small set of antennas.

    The main aspects of the library are:

    - Array models for full-dimensional lens arrays (sinc-type response) and half-wavelength UPAs
    - Random wideband multipath channels, frequency-domain synthesis and delay pre-compensated flat channels
    - Spectral efficiency of lens single-carrier path division multiplexing, fully digital MIMO-OFDM and hybrid
      analog/digital precoding
    - RF-chain power consumption models of the three base station architectures
    - A seeded Monte Carlo harness with CSV/JSON output and a command line interface
"""
__author__ = "Lens MIMO Authors"
__copyright__ = "Copyright 2026 Lens MIMO Authors. All rights reserved."
__license__ = "Apache 2.0 License"
__status__ = "beta"
__version__ = "1.0.0"

import logging
from typing import Optional

logger: Optional[logging.Logger] = None

if logger is None:
    logger: logging.Logger = logging.getLogger(__name__)
    logger.setLevel(logging.DEBUG)

    ch = logging.StreamHandler()
    ch.setLevel(logging.INFO)
    # create formatter and add it to the handlers
    formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    ch.setFormatter(formatter)
    # add the handlers to the logger
    logger.addHandler(ch)

__all__ = ['model', 'transceiver', 'power', 'simulation', 'utils', 'logger']

from lensmimo import model
from lensmimo import transceiver
from lensmimo import power
from lensmimo import simulation
from lensmimo import utils
