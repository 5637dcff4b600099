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
import math
from typing import Sequence, Tuple

import numpy as np


def safe_zero_div(x: float, y: float) -> float:
    """
    Safely divide two numbers. If the denominator is zero, return zero.

    Parameters
    ----------
    x: float
        Numerator
    y: float
        Denominator

    Returns
    -------
    division: float
        x / y or 0. if y == 0.
    """
    try:
        return x / y
    except ZeroDivisionError:
        return 0.


def mean_and_stderr(values: Sequence[float]) -> Tuple[float, float]:
    """
    Sample mean and standard error of the mean, s / sqrt(n) with the unbiased sample deviation s.
    A single sample has a standard error of zero.

    Parameters
    ----------
    values: Sequence[float]
        Non-empty samples

    Returns
    -------
    statistics: Tuple[float, float]
        Mean and standard error
    """
    samples: np.ndarray = np.asarray(values, dtype=float)
    if samples.size == 0:
        raise ValueError('Statistics need at least one sample.')
    mean: float = float(np.mean(samples))
    if samples.size == 1:
        return mean, 0.
    return mean, float(np.std(samples, ddof=1)) / math.sqrt(samples.size)
