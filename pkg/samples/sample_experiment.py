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
from pathlib import Path

from lensmimo.simulation.config import ExperimentConfig, default_config
from lensmimo.simulation.experiment import AggregateResult, run_experiment
from lensmimo.utils.serialize import ResultFormat, emit_results, summary_text


if __name__ == '__main__':
    # Shortened version of the shipped scenario
    cfg: ExperimentConfig = default_config().with_overrides(num_trials=50, workers=4)
    res: AggregateResult = run_experiment(cfg)
    print(summary_text(res))
    for label in res.labels:
        print(f'{label}: {res.energy_efficiency[label]:.4f} bits/s/Hz/W')
    out: Path = Path(__file__).parent / 'results'
    emit_results(res, ResultFormat.CSV, out)
    emit_results(res, ResultFormat.JSON, out)
