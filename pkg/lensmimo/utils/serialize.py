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
import csv
import json
import logging
from enum import Enum
from json import JSONEncoder
from pathlib import Path
from typing import Any, List, Sequence, Union

import numpy as np

from lensmimo.model.arrays import PowerResponse
from lensmimo.model.base import SimulationException
from lensmimo.power.consumption import PowerTable
from lensmimo.simulation.experiment import AggregateResult
from lensmimo.transceiver.schemes import SchemeType

logger: logging.Logger = logging.getLogger(__name__)

RESULTS_CSV: str = 'results.csv'
RESULTS_JSON: str = 'results.json'
SUMMARY_TXT: str = 'summary.txt'
RESULT_COLUMNS: List[str] = ['scheme', 'm_rf', 'snr_db', 'mean_se', 'stderr_se', 'power_w']


class ResultFormat(Enum):
    """
    ResultFormat
    ============
    Output formats of the experiment results.
    """
    CSV = 'csv'
    JSON = 'json'


class SimulationEncoder(JSONEncoder):
    """
    SimulationEncoder
    =================
    JSONEncoder for the simulation objects; honours a `__json__` method and converts numpy scalars and arrays.
    """

    def default(self, obj: Any):
        if hasattr(obj, '__json__'):
            return obj.__json__()
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        return super().default(obj)


def json_encode(obj: Any, indent: int = 4) -> str:
    """
    Encodes the given object to a JSON string.

    Parameters
    ----------
    obj: Any
        Object to encode
    indent: int
        Indentation

    Returns
    -------
    str
        JSON string
    """
    return json.dumps(obj, cls=SimulationEncoder, indent=indent)


def _prepare(path: Path):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise SimulationException(f'Cannot create output directory {path.parent}: {e}') from e


def serialize_json(obj: Any, path: Path):
    """
    Serialize an object to a JSON file.

    Parameters
    ----------
    obj: Any
        Object with a `__json__` method or plain JSON data
    path: Path
        Path to save the JSON file

    Raises
    ------
    SimulationException
        If the file cannot be written
    """
    _prepare(path)
    try:
        with open(path, 'w', encoding='utf-8') as fp:
            json.dump(obj, fp, cls=SimulationEncoder, indent=4)
    except OSError as e:
        raise SimulationException(f'Cannot write {path}: {e}') from e


def _write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence[Any]], delimiter: str = ','):
    _prepare(path)
    try:
        with path.open('w', newline='', encoding='utf-8') as csvfile:
            csv_writer = csv.writer(csvfile, delimiter=delimiter, quotechar='|', quoting=csv.QUOTE_MINIMAL)
            csv_writer.writerow(header)
            for row in rows:
                csv_writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    except OSError as e:
        raise SimulationException(f'Cannot write {path}: {e}') from e


def serialize_results_csv(res: AggregateResult, path: Path, delimiter: str = ','):
    """
    Serialize the experiment statistics to a CSV file with the columns
    scheme, m_rf, snr_db, mean_se, stderr_se, power_w.

    Parameters
    ----------
    res: `AggregateResult`
        Experiment result
    path: Path
        Path to save the CSV file
    delimiter: str
        Delimiter
    """
    rows: List[List[Any]] = [[e.scheme.value, e.m_rf, e.snr_db, e.mean_se, e.stderr_se, e.power_w]
                             for e in res.entries]
    _write_csv(path, RESULT_COLUMNS, rows, delimiter)


def serialize_summary(res: AggregateResult, path: Path):
    """
    Write a text summary with the mean spectral efficiency curves, the energy efficiency and the ratios of every
    scheme to the fully digital reference.

    Parameters
    ----------
    res: `AggregateResult`
        Experiment result
    path: Path
        Path of the text file
    """
    _prepare(path)
    try:
        with path.open('w', encoding='utf-8') as fp:
            fp.write(summary_text(res))
    except OSError as e:
        raise SimulationException(f'Cannot write {path}: {e}') from e


def summary_text(res: AggregateResult) -> str:
    """
    Text summary of an experiment result.

    Parameters
    ----------
    res: `AggregateResult`
        Experiment result

    Returns
    -------
    text: str
        Summary
    """
    sweep: List[float] = list(res.config.snr_sweep_db)
    lines: List[str] = [f'Scenario: {res.config.name}, trials: {res.config.num_trials}, '
                        f'seed: {res.config.master_seed}',
                        'SNR (dB): ' + ', '.join(f'{s:g}' for s in sweep)]
    digital: List[str] = [s.label for s in res.config.schemes if s.scheme == SchemeType.UPA_DIGITAL_OFDM]
    for label in res.labels:
        curve: str = ', '.join(f'{v:.4f}' for v in res.mean_curve(label))
        lines.append(f'{label}: SE [{curve}] bits/s/Hz, power {res.power(label):g} W, '
                     f'EE {res.energy_efficiency[label]:.4f} bits/s/Hz/W')
        if digital and label != digital[0]:
            ratios: str = ', '.join(f'{r:.4f}' for r in res.ratio(label, digital[0]))
            lines.append(f'  ratio to {digital[0]}: [{ratios}]')
    return '\n'.join(lines) + '\n'


def emit_results(res: AggregateResult, fmt: Union[ResultFormat, str], out_dir: Union[str, Path]) -> Path:
    """
    Write an experiment result in the given format.

    Parameters
    ----------
    res: `AggregateResult`
        Experiment result
    fmt: Union[ResultFormat, str]
        csv for the statistics table, json for the full result including the configuration
    out_dir: Union[str, Path]
        Output directory

    Returns
    -------
    path: Path
        Written file

    Raises
    ------
    SimulationException
        If the format is unknown or the file cannot be written
    """
    try:
        fmt = ResultFormat(fmt)
    except ValueError as e:
        raise SimulationException(f'Unknown result format:={fmt}.') from e
    out: Path = Path(out_dir)
    if fmt == ResultFormat.CSV:
        path: Path = out / RESULTS_CSV
        serialize_results_csv(res, path)
    else:
        path = out / RESULTS_JSON
        serialize_json(res, path)
    logger.info(f'Wrote {path}.')
    return path


def load_results(path: Union[str, Path]) -> AggregateResult:
    """
    Read an experiment result written with the JSON format.

    Parameters
    ----------
    path: Union[str, Path]
        Path of the JSON file

    Returns
    -------
    result: `AggregateResult`
        Experiment result

    Raises
    ------
    SimulationException
        If the file cannot be read or parsed
    """
    try:
        with open(path, 'r', encoding='utf-8') as fp:
            data: Any = json.load(fp)
        return AggregateResult.from_json(data)
    except OSError as e:
        raise SimulationException(f'Cannot read {path}: {e}') from e
    except (json.JSONDecodeError, KeyError, ValueError, TypeError) as e:
        raise SimulationException(f'{path} is not a result file: {e}') from e


def serialize_power_table_csv(table: PowerTable, path: Path):
    """
    Serialize the power grid to a CSV file with the columns architecture, antennas, m_rf, power_w.

    Parameters
    ----------
    table: `PowerTable`
        Power grid
    path: Path
        Path to save the CSV file
    """
    _write_csv(path, ['architecture', 'antennas', 'm_rf', 'power_w'], table.rows())


def serialize_power_response_csv(responses: Sequence[PowerResponse], path: Path):
    """
    Serialize lens power response maps to a CSV file with the columns dir_index, m_e, m_a, power.

    Parameters
    ----------
    responses: Sequence[PowerResponse]
        Power response per direction
    path: Path
        Path to save the CSV file
    """
    rows: List[List[Any]] = [[i, m_e, m_a, p] for i, r in enumerate(responses) for m_e, m_a, p in r.rows()]
    _write_csv(path, ['dir_index', 'm_e', 'm_a', 'power'], rows)
