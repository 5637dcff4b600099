# -*- coding: utf-8 -*-
"""
Copyright © 2026 Lens MIMO Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
import pytest

from lensmimo.model.base import SimulationException
from lensmimo.power.consumption import PowerModel, PowerTable, format_power_table, power_digital, power_hybrid, \
    power_lens, power_selection, power_table, scheme_power
from lensmimo.transceiver.schemes import SchemeConfig, SchemeType


def test_power_table_defaults():
    """
    Test the power grid for 400 UPA and 149 lens antennas with 3 and 16 RF chains.
    """
    table: PowerTable = power_table()
    assert table.digital == pytest.approx(100., rel=1e-12)
    assert table.hybrid == pytest.approx([18.75, 100.], rel=1e-12)
    assert table.lens == pytest.approx([2.985, 15.92], rel=1e-12)
    assert power_lens(149, 1) == pytest.approx(0.995)
    assert table.rows()[0] == ['digital', 400, 400, pytest.approx(100.)]
    assert [r[0] for r in table.rows()] == ['digital', 'hybrid', 'hybrid', 'lens', 'lens']
    assert table.__json__()['rf_chains'] == [3, 16]


def test_power_formulas():
    """
    Test linearity of the power formulas in the RF chain count and in the hardware constants.
    """
    pm: PowerModel = PowerModel(0.3, 0.02, 0.004)
    assert power_digital(64, pm) == pytest.approx(64 * 0.3)
    assert power_hybrid(64, 4, pm) == pytest.approx(4 * 0.3 + 64 * 4 * 0.02)
    assert power_lens(50, 4, pm) == pytest.approx(4 * 0.3 + 50 * 4 * 0.004)
    assert power_selection(64, 4, pm) == pytest.approx(4 * 0.3 + 64 * 4 * 0.004)
    for m_rf in range(1, 8):
        assert power_lens(149, m_rf + 1) - power_lens(149, m_rf) == pytest.approx(0.25 + 149 * 0.005)
    assert power_hybrid(400, 3, pm.scaled(2.)) == pytest.approx(2 * power_hybrid(400, 3, pm))
    assert PowerModel.from_json(pm.__json__()) == pm


def test_hybrid_cross_over():
    """
    Test that the hybrid array reaches the fully digital power at M_rf = P_rf M / (P_rf + M P_ps).
    """
    cross_over: float = 0.25 * 400 / (0.25 + 400 * 0.015)
    assert cross_over == pytest.approx(16.)
    assert power_hybrid(400, 16) == pytest.approx(power_digital(400))
    assert power_hybrid(400, 15) < power_digital(400) < power_hybrid(400, 17)


def test_power_errors():
    """
    Test that invalid counts and constants are rejected.
    """
    with pytest.raises(SimulationException):
        power_digital(0)
    with pytest.raises(SimulationException):
        power_hybrid(400, 0)
    with pytest.raises(SimulationException):
        power_lens(149, 150)
    with pytest.raises(SimulationException):
        PowerModel(p_rf=0.)
    with pytest.raises(SimulationException):
        power_table(rf_chains=[])


def test_scheme_power():
    """
    Test the mapping from scheme configurations to architecture power.
    """
    assert scheme_power(SchemeConfig(SchemeType.UPA_DIGITAL_OFDM)) == pytest.approx(100.)
    assert scheme_power(SchemeConfig(SchemeType.UPA_HYBRID_OFDM, m_rf=3)) == pytest.approx(18.75)
    assert scheme_power(SchemeConfig(SchemeType.LENS_SC_PDM, m_rf=16)) == pytest.approx(15.92)
    assert scheme_power(SchemeConfig(SchemeType.LENS_DS_PDM, m_rf=3)) == pytest.approx(2.985)
    assert scheme_power(SchemeConfig(SchemeType.UPA_SELECTION_OFDM, m_rf=3)) == pytest.approx(0.75 + 400 * 3 * 0.005)
    assert scheme_power(SchemeConfig(SchemeType.UPA_DIGITAL_OFDM), upa_elements=16) == pytest.approx(4.)


def test_format_power_table():
    """
    Test the text rendering of the power grid.
    """
    text: str = format_power_table(power_table())
    lines = text.splitlines()
    assert 'Fully digital' in lines[0]
    assert 'Hybrid M_rf=3' in lines[0]
    assert 'Lens M_rf=16' in lines[0]
    for value in ('100', '18.75', '2.985', '15.92'):
        assert value in lines[-1]
