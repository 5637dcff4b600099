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
import json
import os
from pathlib import Path
from typing import List

import numpy as np
import pytest

from lensmimo.model.base import SimulationException
from lensmimo.model.channel import ChannelSamplingParams, sample_channel, trial_generator
from lensmimo.power.consumption import power_lens
from lensmimo.simulation.config import ConfigurationException, ExperimentConfig, default_config, load_config
from lensmimo.simulation.experiment import AggregateResult, ExperimentRunner, run_experiment
from lensmimo.transceiver.schemes import DigitalOfdmScheme, SchemeConfig, SchemeType, TransmissionScheme, \
    lens_sc_pdm_rate
from lensmimo.utils.serialize import emit_results, load_results, summary_text

LENS: SchemeConfig = SchemeConfig(SchemeType.LENS_SC_PDM, m_rf=2)
OFDM = dict(n_subcarriers=16, cp_len=8)
SMALL_SCHEMES: List[SchemeConfig] = [
    LENS,
    SchemeConfig(SchemeType.UPA_HYBRID_OFDM, m_rf=2, codebook_size=16, **OFDM),
    SchemeConfig(SchemeType.UPA_SELECTION_OFDM, m_rf=2, **OFDM),
    SchemeConfig(SchemeType.UPA_DIGITAL_OFDM, **OFDM)
]


def small_config(num_trials: int = 6, workers: int = 1, schemes=None, **kwargs) -> ExperimentConfig:
    return ExperimentConfig(schemes=tuple(schemes or SMALL_SCHEMES), name='small',
                            channel=ChannelSamplingParams(delay_max=10e-9),
                            bs_lens={'kind': 'lens', 'd_y': 4., 'd_z': 4., 'theta_cov_deg': 60.,
                                     'phi_cov_deg': 120.},
                            bs_upa={'kind': 'upa', 'd_y': 2., 'd_z': 2.},
                            snr_sweep_db=(0., 10., 20.), num_trials=num_trials, master_seed=7, workers=workers,
                            **kwargs)


def test_single_trial_matches_direct_evaluation():
    """
    Test that a one-trial experiment reproduces the direct scheme evaluation on the trial channel.
    """
    cfg: ExperimentConfig = small_config(num_trials=1)
    res: AggregateResult = run_experiment(cfg)
    ch = sample_channel(cfg.channel, trial_generator(7, 0))
    direct: float = lens_sc_pdm_rate(ch, cfg.lens_geometry(), cfg.ms_geometry(),
                                     LENS.with_snr(10.)).spectral_efficiency
    entry = res.entry('lens-sc-pdm/2', 10.)
    assert entry.mean_se == pytest.approx(direct, rel=1e-12)
    assert entry.stderr_se == 0.
    assert entry.trials == 1
    assert entry.power_w == pytest.approx(power_lens(149, 2))
    assert res.energy_efficiency['lens-sc-pdm/2'] == pytest.approx(direct / power_lens(149, 2))
    assert res.entry('upa-digital-ofdm', 0.).m_rf == 16


def test_paired_trials():
    """
    Test that all schemes of a trial see the same channel realization and that trials differ.
    """
    res: AggregateResult = run_experiment(small_config())
    assert len(res.fingerprints) == 6
    for per_scheme in res.fingerprints:
        assert len(set(per_scheme)) == 1
    assert len({f[0] for f in res.fingerprints}) == 6
    runner: ExperimentRunner = ExperimentRunner(small_config())
    assert runner.channel(3).fingerprint == res.fingerprints[3][0]


def test_trial_fingerprints_come_from_scheme_results():
    """
    Test that the fingerprints of a trial are those of the channels the schemes were evaluated on.
    """
    runner: ExperimentRunner = ExperimentRunner(small_config())
    outcome = runner.run_trial(2)
    assert outcome.fingerprints == [runner.channel(2).fingerprint] * len(SMALL_SCHEMES)


def test_diverging_trial_channels_are_rejected(monkeypatch):
    """
    Test that a trial fails when one scheme is evaluated on another channel than the rest.
    """
    def sweep_flattened(self, ch, bs, ms, snr_points=None):
        return TransmissionScheme.sweep(self, ch.with_zero_delays(), bs, ms, snr_points)

    monkeypatch.setattr(DigitalOfdmScheme, 'sweep', sweep_flattened)
    runner: ExperimentRunner = ExperimentRunner(small_config())
    with pytest.raises(SimulationException):
        runner.run_trial(0)


def test_experiment_determinism(tmp_path: Path):
    """
    Test that equal configurations produce byte-identical CSV output, with any number of workers.
    """
    first: AggregateResult = run_experiment(small_config())
    second: AggregateResult = run_experiment(small_config())
    threaded: AggregateResult = run_experiment(small_config(workers=3))
    assert first == second
    assert first == threaded
    a: Path = emit_results(first, 'csv', tmp_path / 'a')
    b: Path = emit_results(threaded, 'csv', tmp_path / 'b')
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0] == 'scheme,m_rf,snr_db,mean_se,stderr_se,power_w'
    assert len(a.read_text().splitlines()) == 1 + 4 * 3
    other: AggregateResult = run_experiment(small_config().with_overrides(master_seed=8))
    assert other.fingerprints != first.fingerprints


def test_scheme_ordering():
    """
    Test the ordering of the schemes on paired trials.
    """
    res: AggregateResult = run_experiment(small_config(num_trials=4))
    for j, snr in enumerate(res.config.snr_sweep_db):
        digital: float = res.entry('upa-digital-ofdm', snr).mean_se
        assert res.entry('upa-hybrid-ofdm/2', snr).mean_se <= digital + 1e-9
        assert res.entry('upa-selection-ofdm/2', snr).mean_se <= digital + 1e-9
    for label in res.labels:
        curve: List[float] = res.mean_curve(label)
        assert all(b >= a - 1e-12 for a, b in zip(curve, curve[1:]))
    assert res.ratio('upa-digital-ofdm', 'upa-digital-ofdm') == pytest.approx([1., 1., 1.])


def test_standard_error_scaling():
    """
    Test that the standard error shrinks roughly with the square root of the trial count.
    """
    ratios: List[float] = []
    for snr in (0., 10., 20.):
        few = run_experiment(small_config(num_trials=64, schemes=[LENS])).entry('lens-sc-pdm/2', snr)
        many = run_experiment(small_config(num_trials=256, schemes=[LENS])).entry('lens-sc-pdm/2', snr)
        ratios.append(few.stderr_se / many.stderr_se)
    assert 1.3 <= float(np.median(ratios)) <= 3.0


def test_result_json_round_trip(tmp_path: Path):
    """
    Test that the JSON result reproduces the aggregated result and carries the configuration.
    """
    res: AggregateResult = run_experiment(small_config(num_trials=3))
    path: Path = emit_results(res, 'json', tmp_path)
    assert load_results(path) == res
    data = json.loads(path.read_text(encoding='utf-8'))
    assert data['config']['master_seed'] == 7
    assert data['config']['channel']['delay_max_ns'] == pytest.approx(10.)
    assert 'lens-sc-pdm/2' in summary_text(res)
    with pytest.raises(SimulationException):
        load_results(tmp_path / 'missing.json')
    with pytest.raises(SimulationException):
        emit_results(res, 'xml', tmp_path)


def test_config_validation(tmp_path: Path):
    """
    Test that inconsistent configurations are rejected.
    """
    with pytest.raises(ConfigurationException):
        ExperimentConfig(schemes=())
    with pytest.raises(ConfigurationException):
        small_config(num_trials=0)
    with pytest.raises(ConfigurationException):
        small_config(schemes=[LENS, LENS])
    with pytest.raises(ConfigurationException):
        small_config(schemes=[SchemeConfig(SchemeType.LENS_DS_PDM, m_rf=2)])
    with pytest.raises(ConfigurationException):
        ExperimentConfig(schemes=(LENS,), master_seed=-1)
    with pytest.raises(ConfigurationException):
        ExperimentConfig.from_json({'name': 'no schemes'})
    with pytest.raises(ConfigurationException):
        ExperimentConfig.from_json({'schemes': [{'scheme': 'lens-sc-pdm'}]})
    broken: Path = tmp_path / 'broken.json'
    broken.write_text('{"schemes": [', encoding='utf-8')
    with pytest.raises(ConfigurationException):
        load_config(broken)
    with pytest.raises(SimulationException):
        load_config(tmp_path / 'missing.json')


def test_config_checks_cyclic_prefix_and_coverage():
    """
    Test that a too short cyclic prefix and path angles outside the lens coverage are rejected when the
    configuration is created.
    """
    with pytest.raises(ConfigurationException):
        small_config(schemes=[SchemeConfig(SchemeType.UPA_DIGITAL_OFDM, n_subcarriers=16, cp_len=4)])
    shortest: SchemeConfig = SchemeConfig(SchemeType.UPA_DIGITAL_OFDM, n_subcarriers=16, cp_len=5)
    assert small_config(schemes=[shortest]).schemes == (shortest,)
    with pytest.raises(ConfigurationException):
        ExperimentConfig(schemes=(SchemeConfig(SchemeType.UPA_DIGITAL_OFDM, cp_len=49),))
    with pytest.raises(ConfigurationException):
        ExperimentConfig(schemes=(LENS,), channel=ChannelSamplingParams(azimuth_range_deg=(-70., 70.)))
    with pytest.raises(ConfigurationException):
        ExperimentConfig(schemes=(LENS,), channel=ChannelSamplingParams(elevation_range_deg=(0., 45.)))
    narrow_ms = {'kind': 'lens', 'd_y': 4., 'd_z': 4., 'theta_cov_deg': 60., 'phi_cov_deg': 60.}
    with pytest.raises(ConfigurationException):
        ExperimentConfig(schemes=(SchemeConfig(SchemeType.LENS_DS_PDM, m_rf=2),), ms=narrow_ms)
    restricted: ChannelSamplingParams = ChannelSamplingParams(ms_azimuth_range_deg=(-30., 30.))
    cfg: ExperimentConfig = ExperimentConfig(schemes=(SchemeConfig(SchemeType.LENS_DS_PDM, m_rf=2),),
                                             ms=narrow_ms, channel=restricted)
    assert cfg.ms_geometry().kind == 'lens'
    with pytest.raises(ConfigurationException):
        ExperimentConfig(schemes=(LENS,), bs_lens={'kind': 'lens', 'd_y': 4.})


def test_config_json_round_trip(tmp_path: Path):
    """
    Test that a configuration survives the JSON file format.
    """
    cfg: ExperimentConfig = small_config(num_trials=5)
    path: Path = tmp_path / 'scenario.json'
    path.write_text(json.dumps(cfg.__json__()), encoding='utf-8')
    loaded: ExperimentConfig = load_config(path)
    assert loaded.schemes == cfg.schemes
    assert loaded.num_trials == 5
    assert loaded.channel.delay_max == pytest.approx(10e-9)
    assert loaded.channel.bandwidth_hz == pytest.approx(500e6)


def test_default_config():
    """
    Test the shipped default scenario.
    """
    cfg: ExperimentConfig = default_config()
    assert cfg.num_trials == 1000
    assert cfg.master_seed == 2017
    assert cfg.lens_power_elements == 149
    assert cfg.upa_geometry().num_elements == 400
    assert cfg.ms_geometry().num_elements == 4
    assert [s.label for s in cfg.schemes] == ['lens-sc-pdm/3', 'lens-sc-pdm/16', 'upa-hybrid-ofdm/3',
                                              'upa-hybrid-ofdm/16', 'upa-digital-ofdm']
    assert cfg.channel.delay_max == pytest.approx(100e-9)


@pytest.mark.slow
def test_default_scenario_ordering():
    """
    Test the spectral efficiency ordering of the default scenario on paired trials.
    The trial count can be set with LENSMIMO_ACCEPTANCE_TRIALS.
    """
    trials: int = int(os.environ.get('LENSMIMO_ACCEPTANCE_TRIALS', '500'))
    cfg: ExperimentConfig = default_config().with_overrides(num_trials=trials, workers=4,
                                                            snr_sweep_db=[0., 5., 10., 15., 20.])
    res: AggregateResult = run_experiment(cfg)
    digital: List[float] = res.mean_curve('upa-digital-ofdm')
    hybrid_3: List[float] = res.mean_curve('upa-hybrid-ofdm/3')
    hybrid_16: List[float] = res.mean_curve('upa-hybrid-ofdm/16')
    lens_3: List[float] = res.mean_curve('lens-sc-pdm/3')
    lens_16: List[float] = res.mean_curve('lens-sc-pdm/16')
    for i in range(len(digital)):
        assert hybrid_3[i] < digital[i]
        assert lens_3[i] >= 0.8 * digital[i]
        assert lens_16[i] >= 0.98 * digital[i]
        assert hybrid_16[i] > hybrid_3[i]
