# -*- coding: utf-8 -*-
"""
Package for the Monte Carlo experiments.
This package contains the experiment configuration and the paired-trial experiment driver.
"""
from lensmimo.simulation.config import ConfigurationException, ExperimentConfig
__all__ = ['config', 'experiment', 'ConfigurationException', 'ExperimentConfig']

import lensmimo.simulation.config
import lensmimo.simulation.experiment
