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
from lensmimo.power.consumption import PowerModel, PowerTable, format_power_table, power_table


if __name__ == '__main__':
    # Base station power for 400 UPA and 149 lens antennas
    table: PowerTable = power_table()
    print(format_power_table(table))
    # Cheaper phase shifters move the hybrid cross-over towards more RF chains
    cheap: PowerTable = power_table(rf_chains=[3, 16, 32], pm=PowerModel(p_ps=0.005))
    print(format_power_table(cheap))
