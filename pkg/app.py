#!/usr/bin/env python3
"""
Bounded multibarrier spectrum toolkit
This module serves as the command-line entry point. Each subcommand is backed by a
collector in the collectors directory; results are written as CSV / JSON files.

Exit status: 0 success, 2 configuration error, 3 solver refusal.
"""

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

# Add project root to Python path
project_root = str(Path(__file__).parent)
if project_root not in sys.path:
    sys.path.append(project_root)

from collectors.convergence_collector import cmd_converge
from collectors.multichannel_collector import cmd_multichannel
from collectors.spectrum_collector import cmd_bands, cmd_spectrum
from collectors.table1_collector import cmd_table1
from configs.base_config import config
from configs.preset_conf import preset_registry
from configs.run_conf import (
    RunConfig,
    parse_branches,
    parse_float_list,
    parse_int_list,
    parse_kappa_grid,
    parse_window,
)
from configs.solver_conf import SolverSettings, get_solver_settings
from modules.common_logger import setup_logger
from modules.errors import ConfigError, MbspecError

logger = logging.getLogger(__name__)

COMMANDS = {
    'spectrum': cmd_spectrum,
    'bands': cmd_bands,
    'converge': cmd_converge,
    'multichannel': cmd_multichannel,
    'table1': cmd_table1,
}


def _argparse_type(parser_fn):
    """ConfigError 를 argparse 사용 오류로 변환"""
    def convert(text: str):
        try:
            return parser_fn(text)
        except ConfigError as e:
            raise argparse.ArgumentTypeError(str(e))
    convert.__name__ = parser_fn.__name__
    return convert


def _tolerance_flags() -> Dict[str, type]:
    """SolverSettings 필드마다 --tol-<name> 플래그"""
    flags = {}
    for name, info in SolverSettings.model_fields.items():
        if name == 'threads':
            continue
        flags[name] = int if info.annotation is int else float
    return flags


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    system = common.add_argument_group('system')
    system.add_argument('--V', type=float, help='barrier height')
    system.add_argument('--L', type=float, help='total length of the array')
    system.add_argument('--c', type=float, help='interval-to-width ratio')
    system.add_argument('--regime', choices=['above', 'below'])
    system.add_argument('--c-sweep', dest='c_sweep', type=_argparse_type(parse_float_list),
                        help='comma separated c values')
    system.add_argument('--preset', choices=preset_registry.names())

    scan = common.add_argument_group('scan')
    scan.add_argument('--mode', choices=['paper-faithful', 'first-principles'])
    scan.add_argument('--method', choices=['exact', 'small-l'])
    scan.add_argument('--kappa-grid', dest='kappa_grid', type=_argparse_type(parse_kappa_grid),
                      metavar='A:B:STEP')
    scan.add_argument('--e-window', dest='e_window', type=_argparse_type(parse_window), metavar='LO:HI')
    scan.add_argument('--branches', type=_argparse_type(parse_branches), metavar='N0:N1',
                      help='branch window relative to the first admissible branch')

    output = common.add_argument_group('output')
    output.add_argument('--out', help='output directory')
    output.add_argument('--format', choices=['csv', 'json'])
    output.add_argument('--config', help='JSON file with the same keys as the flags')
    output.add_argument('--threads', type=int, help='concurrency cap (overrides MBSPEC_THREADS)')
    output.add_argument('--log-level', dest='log_level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help='default: MBSPEC_LOG_LEVEL, else WARNING for APP_ENV=prd and INFO otherwise')

    tolerances = common.add_argument_group('solver tolerances')
    for name, kind in _tolerance_flags().items():
        tolerances.add_argument(f"--tol-{name.replace('_', '-')}", dest=f"tol_{name}", type=kind)

    parser = argparse.ArgumentParser(description='Bounded multibarrier band-gap toolkit')
    sub = parser.add_subparsers(dest='subcommand', required=True)
    sub.add_parser('spectrum', parents=[common], help='E(kappa) samples per c value')
    sub.add_parser('bands', parents=[common], help='band / gap / jump report')

    converge = sub.add_parser('converge', parents=[common], help='finite chain vs limit matrix')
    converge.add_argument('--energy', type=float)
    converge.add_argument('--n-list', dest='n_list', type=_argparse_type(parse_int_list))

    multichannel = sub.add_parser('multichannel', parents=[common], help='multi-channel reflection sweep')
    multichannel.add_argument('--channels', dest='mc_channels', type=_argparse_type(parse_int_list))
    multichannel.add_argument('--scatterers', dest='mc_scatterers', type=_argparse_type(parse_int_list))
    multichannel.add_argument('--wavenumbers', dest='mc_wavenumbers', type=_argparse_type(parse_float_list))
    multichannel.add_argument('--beta', dest='mc_beta', type=float,
                              help='also emit infinite-system proxy rows at fixed beta (l = beta/N)')

    table1 = sub.add_parser('table1', parents=[common], help='closed-form energies at special kappa')
    table1.add_argument('--n-max', dest='n_max', type=int)
    return parser


def cli_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """argparse 결과 -> RunConfig 병합용 dict (None 은 미지정)"""
    values = vars(args).copy()
    for key in ('config', 'log_level'):
        values.pop(key, None)
    tolerances = {}
    for key in list(values):
        if key.startswith('tol_'):
            value = values.pop(key)
            if value is not None:
                tolerances[key[len('tol_'):]] = value
    values['tolerances'] = tolerances or None
    return values


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logger(args.log_level or config.log_level())

    try:
        run_config = RunConfig.from_sources(cli_overrides(args), args.config)
        try:
            settings = get_solver_settings().with_overrides(run_config.tolerances)
        except ValueError as e:
            raise ConfigError(f"Invalid solver tolerance: {e}") from None

        logger.info(f"Running {run_config.subcommand} (preset={run_config.preset})")
        paths: List[Path] = asyncio.run(COMMANDS[run_config.subcommand](run_config, settings))
    except MbspecError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code

    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.info("Interrupted")
        sys.exit(130)
