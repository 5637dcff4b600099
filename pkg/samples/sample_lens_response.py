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
from typing import List

from lensmimo.model.arrays import LensArrayGeometry, PowerResponse, build_lens_geometry, power_response_map
from lensmimo.model.base import Direction


def print_response(response: PowerResponse):
    """
    Print the strongest elements of a power response map.

    Parameters
    ----------
    response: `PowerResponse`
        Power response of one direction
    """
    print(f'{response.direction}: argmax {response.argmax}, captured {response.argmax_fraction:.3f}, '
          f'total {response.total_fraction:.3f}')
    for m_e, m_a, power in sorted(response.rows(), key=lambda r: -r[2])[:5]:
        print(f'  ({m_e:+d}, {m_a:+d}): {power:.4f}')


if __name__ == '__main__':
    lens: LensArrayGeometry = build_lens_geometry(10., 10., math.radians(60.), math.radians(120.))
    print(f'Lens array with {lens.num_elements} elements')
    directions: List[Direction] = [
        Direction(0., 0.),                   # on the element grid
        Direction.from_degrees(8.6, 17.5),   # between elements
        Direction.from_degrees(40., 0.)      # outside the elevation coverage
    ]
    for r in power_response_map(lens, directions):
        print_response(r)
