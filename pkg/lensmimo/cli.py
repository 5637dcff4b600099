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
"""
Command line interface with the subcommands simulate-rate, power-table and lens-response.
"""
import argparse
import logging
import math
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from lensmimo.model.arrays import LensArrayGeometry, PowerResponse, build_lens_geometry, power_response_map
from lensmimo.model.base import Direction, SimulationException
from lensmimo.power.consumption import DEFAULT_LENS_ELEMENTS, DEFAULT_P_PS, DEFAULT_P_RF, DEFAULT_P_SW, \
    DEFAULT_TABLE_RF_CHAINS, DEFAULT_UPA_ELEMENTS, PowerModel, PowerTable, format_power_table, power_table
from lensmimo.simulation.config import ExperimentConfig, default_config, load_config
from lensmimo.simulation.experiment import AggregateResult, run_experiment
from lensmimo.utils.serialize import SUMMARY_TXT, ResultFormat, emit_results, serialize_json, \
    serialize_power_response_csv, serialize_power_table_csv, serialize_summary

logger: logging.Logger = logging.getLogger(__name__)

POWER_TABLE_CSV: str = 'power_table.csv'
LENS_RESPONSE_CSV: str = 'lens_response.csv'
LENS_RESPONSE_JSON: str = 'lens_response.json'


def parse_direction(value: str) -> Direction:
    """
    Parse a direction given as "theta,phi" in degrees.

    Parameters
    ----------
    value: str
        Elevation and azimuth in degrees separated by a comma

    Returns
    -------
    direction: `Direction`
        Parsed direction
    """
    try:
        theta, phi = (float(v) for v in value.split(','))
        return Direction.from_degrees(theta, phi)
    except (ValueError, SimulationException) as e:
        raise argparse.ArgumentTypeError(f'Invalid direction "{value}", expected theta,phi in degrees: {e}')


def build_parser() -> argparse.ArgumentParser:
    """
    Argument parser of the command line interface.

    Returns
    -------
    parser: argparse.ArgumentParser
        Parser with the three subcommands
    """
    parser = argparse.ArgumentParser(prog='lensmimo', description='Lens antenna array mmWave MIMO link simulator.')
    parser.add_argument('--verbose', action='store_true', help='Log debug messages')
    sub = parser.add_subparsers(dest='command', required=True)

    rate = sub.add_parser('simulate-rate', help='Monte Carlo spectral efficiency comparison')
    rate.add_argument('--config', type=Path, default=None, help='Scenario file (default: shipped scenario)')
    rate.add_argument('--trials', type=int, default=None, help='Number of trials')
    rate.add_argument('--seed', type=int, default=None, help='Master seed')
    rate.add_argument('--out', type=str, default=None, help='Output directory')
    rate.add_argument('--workers', type=int, default=None, help='Worker threads')
    rate.add_argument('--snr', type=float, nargs='+', default=None, help='SNR points in dB')

    table = sub.add_parser('power-table', help='Power consumption of the base station architectures')
    table.add_argument('--p-rf', type=float, default=DEFAULT_P_RF, help='Watts per RF chain')
    table.add_argument('--p-ps', type=float, default=DEFAULT_P_PS, help='Watts per phase shifter')
    table.add_argument('--p-sw', type=float, default=DEFAULT_P_SW, help='Watts per switch')
    table.add_argument('--m-upa', type=int, default=DEFAULT_UPA_ELEMENTS, help='UPA antenna count')
    table.add_argument('--m-lens', type=int, default=DEFAULT_LENS_ELEMENTS, help='Lens antenna count')
    table.add_argument('--m-rf', type=int, nargs='+', default=DEFAULT_TABLE_RF_CHAINS, help='RF chain counts')
    table.add_argument('--out', type=Path, default=None, help='Directory of the CSV file')

    response = sub.add_parser('lens-response', help='Power response maps of a lens array')
    response.add_argument('--d-y', type=float, default=10., help='Aperture width in wavelengths')
    response.add_argument('--d-z', type=float, default=10., help='Aperture height in wavelengths')
    response.add_argument('--theta-cov', type=float, default=60., help='Elevation coverage in degrees')
    response.add_argument('--phi-cov', type=float, default=120., help='Azimuth coverage in degrees')
    response.add_argument('--dir', type=parse_direction, action='append', required=True, dest='directions',
                          help='Direction theta,phi in degrees; may be repeated')
    response.add_argument('--out', type=Path, default=Path('.'), help='Output directory')
    return parser


def simulate_rate(args: argparse.Namespace) -> int:
    cfg: ExperimentConfig = default_config() if args.config is None else load_config(args.config)
    cfg = cfg.with_overrides(num_trials=args.trials, master_seed=args.seed, output_dir=args.out,
                             workers=args.workers, snr_sweep_db=args.snr)
    res: AggregateResult = run_experiment(cfg)
    emit_results(res, ResultFormat.CSV, cfg.output_dir)
    emit_results(res, ResultFormat.JSON, cfg.output_dir)
    serialize_summary(res, Path(cfg.output_dir) / SUMMARY_TXT)
    return 0


def print_power_table(args: argparse.Namespace) -> int:
    table: PowerTable = power_table(args.m_upa, args.m_lens, args.m_rf, PowerModel(args.p_rf, args.p_ps, args.p_sw))
    print(format_power_table(table))
    if args.out is not None:
        serialize_power_table_csv(table, args.out / POWER_TABLE_CSV)
        logger.info(f'Wrote {args.out / POWER_TABLE_CSV}.')
    return 0


def lens_response(args: argparse.Namespace) -> int:
    geom: LensArrayGeometry = build_lens_geometry(args.d_y, args.d_z, math.radians(args.theta_cov),
                                                  math.radians(args.phi_cov))
    responses: List[PowerResponse] = power_response_map(geom, args.directions)
    serialize_power_response_csv(responses, args.out / LENS_RESPONSE_CSV)
    serialize_json({'geometry': geom, 'num_elements': geom.num_elements, 'directions': responses},
                   args.out / LENS_RESPONSE_JSON)
    for i, r in enumerate(responses):
        print(f'{i}: {r.direction} -> argmax {r.argmax}, fraction {r.argmax_fraction:.4f}')
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point of the command line interface.

    Parameters
    ----------
    argv: Optional[Sequence[str]] (optional) [default: None]
        Arguments; the process arguments if omitted

    Returns
    -------
    code: int
        0 on success, 1 on a simulation or I/O error
    """
    args: argparse.Namespace = build_parser().parse_args(argv)
    if args.verbose:
        for handler in logging.getLogger('lensmimo').handlers:
            handler.setLevel(logging.DEBUG)
    commands = {'simulate-rate': simulate_rate, 'power-table': print_power_table, 'lens-response': lens_response}
    try:
        return commands[args.command](args)
    except (SimulationException, OSError) as e:
        logger.error(f'{args.command} failed: {e}')
        return 1


if __name__ == '__main__':
    sys.exit(main())
