#!/usr/bin/env python3
"""
Command-line interface for the thermal lab.

Every subcommand resolves its settings (defaults < ``--config`` file <
flags), runs one experiment, and writes CSV/JSON outputs plus a manifest
into ``--out``. Exit codes: 0 success, 1 rejected input, 2 failed
internal check.
"""

import argparse
import json
import sys
from typing import Dict, List, Optional

from src.config.settings import CSV_SCHEMAS, DEFAULT_SETTINGS, load_config_file, merge_settings
from src.constants import VERSION
from src.errors import InvariantError, ValidationError
from src.models.run_manifest import RunManifest
from src.models.settings import (DegeneracySettings, DisentangleSettings, HoleScanSettings,
                                 LatticeSettings, SamplingSettings, StructureSettings, ToySettings,
                                 WilsonSettings)
from src.services.experiment_service import ExperimentService
from src.services.output_service import OutputService
from src.utils.debug_logger import configure_logging, get_logger, log_run_event
from src.validators import validate_run_settings

logger = get_logger(__name__)

# Parsed attributes that are not settings keys
PARSER_KEYS = ('command', 'config', 'schema')


class LabArgumentParser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_common(parser):
    group = parser.add_argument_group('run')
    group.add_argument('--config', help='INI-style key = value file; flags override it')
    group.add_argument('--seed', type=int, help='Root random seed')
    group.add_argument('--out', help='Output directory')
    group.add_argument('--log-level', dest='log_level',
                       choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'], help='Logging level')
    group.add_argument('--log-dir', dest='log_dir', help='Also write a log file here')


def _add_lattice(parser):
    group = parser.add_argument_group('lattice')
    group.add_argument('--d', type=int, help='Lattice dimension (2, 3 or 4)')
    group.add_argument('--L', type=int, help='Linear lattice size')
    group.add_argument('--lambda-a', dest='lambda_a', type=float, help='Star coupling')
    group.add_argument('--lambda-b', dest='lambda_b', type=float, help='Plaquette coupling')


def _add_sampling(parser):
    group = parser.add_argument_group('sampling')
    group.add_argument('--beta', type=float, help='Inverse temperature')
    group.add_argument('--samples', type=int, help='Recorded configurations per chain')
    group.add_argument('--burn-in', dest='burn_in', type=int, help='Sweeps before recording')
    group.add_argument('--thinning', type=int, help='Sweeps between recorded configurations')
    group.add_argument('--chains', type=int, help='Independent seeded chains')


def create_parser() -> LabArgumentParser:
    """Build the top-level parser with one subparser per experiment."""
    parser = LabArgumentParser(
        prog='thermal-lab',
        description="Thermal states of commuting Pauli projector Hamiltonians",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s sample --d 2 --L 2 --beta 1.0 --exact
  %(prog)s holes --d 2 --L 8 --betas 0.5 1.0 --blocks 4
  %(prog)s disentangle --d 3 --L 6 --beta 1.0 --block 3 --samples 100 --seed 7
  %(prog)s toymodel --d 2 --L 4 --temperatures 0.5 1.0 2.0 --fields 0.25 0.5
  %(prog)s --schema
        """
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {VERSION}')
    parser.add_argument('--schema', action='store_true', help='Print the CSV column schemas and exit')
    sub = parser.add_subparsers(dest='command', metavar='SUBCOMMAND')

    p = sub.add_parser('sample', help='Thermal Pauli expectations in a qubit window')
    _add_common(p)
    _add_lattice(p)
    _add_sampling(p)
    p.add_argument('--exact', action='store_true', default=None, help='Enumerate configurations')
    p.add_argument('--window', type=int, help='Qubits in the observable window')

    p = sub.add_parser('holes', help='Invalid-configuration rate against the block bound')
    _add_common(p)
    _add_lattice(p)
    _add_sampling(p)
    p.add_argument('--betas', type=float, nargs='+', help='Inverse temperatures to scan')
    p.add_argument('--blocks', type=int, nargs='+', help='Block sizes to scan')
    p.add_argument('--radius', type=int, help='Hole radius (default R_int + 1)')
    p.add_argument('--variant', choices=['lbeta', 'inline', 'small_squares'], help='Bound variant')
    p.add_argument('--epsilon', type=float, help='Target failure probability for l_beta')

    p = sub.add_parser('disentangle', help='Disentangle sampled configurations')
    _add_common(p)
    _add_lattice(p)
    _add_sampling(p)
    p.add_argument('--block', type=int, help='Block size dividing L')
    p.add_argument('--radius', type=int, help='Hole radius (default R_int + 1)')
    p.add_argument('--no-plant', dest='plant', action='store_false', default=None,
                   help='Skip invalid configurations instead of planting holes')
    p.add_argument('--skip-layer-checks', dest='check_every_layer', action='store_false',
                   default=None, help='Only verify the final Hamiltonian')
    p.add_argument('--write-circuits', dest='write_circuits', action='store_true', default=None,
                   help='Write one circuit text file per sample')

    p = sub.add_parser('structure', help='Interaction-algebra decomposition and region partition')
    _add_common(p)
    p.add_argument('--instances', type=int, help='Construct-then-recover instances')
    p.add_argument('--max-dim', dest='max_dim', type=int, help='Largest region dimension')
    p.add_argument('--generators', type=int, help='Generators per neighbour')
    p.add_argument('--partition-L', dest='partition_L', type=int, help='Lattice size of the partition demo')
    p.add_argument('--partition-block', dest='partition_block', type=int,
                   help='Block size of the partition demo')

    p = sub.add_parser('degeneracy', help='Topological degeneracy epsilon of the ground space')
    _add_common(p)
    _add_lattice(p)
    p.add_argument('--l-star', dest='l_star', type=int, help='Support diameter bound L*')
    p.add_argument('--max-l-star', dest='max_l_star', type=int, help='Scan L* up to this value')

    p = sub.add_parser('toymodel', help='Three-state classical model scans')
    _add_common(p)
    p.add_argument('--J', type=float, help='Bond coupling')
    p.add_argument('--h', type=float, help='Field on 0-sites')
    p.add_argument('--d', type=int, help='Lattice dimension')
    p.add_argument('--L', type=int, help='Linear size (even)')
    p.add_argument('--beta', type=float, help='Inverse temperature of single runs')
    p.add_argument('--sweeps', type=int, help='Recorded sweeps')
    p.add_argument('--burn-in', dest='burn_in', type=int, help='Sweeps before recording')
    p.add_argument('--lambda-e', dest='lambda_e', type=float, help='Plaquette term on all-0 plaquettes')
    p.add_argument('--temperatures', type=float, nargs='+', help='Temperature grid')
    p.add_argument('--fields', type=float, nargs='+', help='Field grid')
    p.add_argument('--hysteresis', action='store_true', default=None, help='Also run the hysteresis scan')

    p = sub.add_parser('wilson', help='Wilson pair expectations against beta')
    _add_common(p)
    _add_lattice(p)
    _add_sampling(p)
    p.add_argument('--betas', type=float, nargs='+', help='Inverse temperatures')
    p.add_argument('--shift', type=int, help='Translation of the primed copies (default L/2)')

    return parser


def resolve_settings(args) -> Dict:
    """Merge defaults, the optional config file and explicit flags."""
    flags = {k: v for k, v in vars(args).items() if k not in PARSER_KEYS}
    file_values = load_config_file(args.config, args.command) if args.config else {}
    settings = merge_settings(args.command, file_values, flags)
    if args.command == 'holes':
        settings['blocks'] = sorted(set(settings['blocks']))
    return settings


def _records(command: str, settings: Dict) -> Dict:
    """Typed settings records of one subcommand."""
    records = {}
    if 'lambda_a' in settings:
        records['lattice'] = LatticeSettings.from_dict(settings)
    if 'samples' in settings:
        records['sampling'] = SamplingSettings.from_dict(settings)
    extra = {
        'holes': HoleScanSettings,
        'disentangle': DisentangleSettings,
        'structure': StructureSettings,
        'degeneracy': DegeneracySettings,
        'toymodel': ToySettings,
        'wilson': WilsonSettings,
    }.get(command)
    if extra is not None:
        records['experiment'] = extra.from_dict(settings)
    return records


def validate_records(records: Dict) -> None:
    errors: List[str] = []
    for record in records.values():
        errors += record.validate()
    if errors:
        raise ValidationError("; ".join(errors))


def run_command(command: str, settings: Dict, output: OutputService) -> Dict:
    """Run one experiment and write its outputs; returns the summary."""
    records = _records(command, settings)
    validate_records(records)
    service = ExperimentService()
    lattice = records.get('lattice')
    sampling = records.get('sampling')
    experiment = records.get('experiment')

    if command == 'sample':
        table, summary = service.run_sample(lattice, sampling, settings['window'])
    elif command == 'holes':
        table, summary = service.run_holes(lattice, sampling, experiment)
    elif command == 'disentangle':
        table, summary, circuits = service.run_disentangle(lattice, sampling, experiment)
        output.write_circuits(circuits)
    elif command == 'structure':
        table, summary = service.run_structure(experiment)
    elif command == 'degeneracy':
        table, summary = service.run_degeneracy(lattice, experiment)
    elif command == 'toymodel':
        table, summary, loop = service.run_toymodel(experiment)
        if loop is not None:
            output.write_table(loop, name='hysteresis')
    elif command == 'wilson':
        table, summary = service.run_wilson(lattice, sampling, experiment)
    else:
        raise ValidationError(f"unknown subcommand {command!r}")

    output.write_table(table)
    output.write_json(summary)
    return summary


def main(argv: Optional[List[str]] = None) -> int:
    """CLI entry point; returns the process exit code."""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1

    if args.schema:
        schemas = {args.command: CSV_SCHEMAS[args.command]} if args.command else CSV_SCHEMAS
        print(json.dumps(schemas, indent=2))
        return 0
    if args.command not in DEFAULT_SETTINGS:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: a subcommand is required", file=sys.stderr)
        return 1

    try:
        settings = resolve_settings(args)
        configure_logging(settings['log_level'], settings['log_dir'])
        ok, errors = validate_run_settings(settings)
        if not ok:
            raise ValidationError("; ".join(errors))

        manifest = RunManifest(args.command, settings, settings['seed'])
        output = OutputService(settings['out'], manifest)
        log_run_event("RUN_START", command=args.command, hash=output.run_hash)
        summary = run_command(args.command, settings, output)
        manifest.finish()
        output.write_manifest()
        log_run_event("RUN_FINISH", command=args.command, hash=output.run_hash,
                      seconds=manifest.wall_clock_seconds)
        print(json.dumps({'hash': output.run_hash, 'summary': summary}, indent=2, default=str))
        return 0
    except ValidationError as exc:
        logger.error(f"Invalid input: {exc}")
        print(f"Error: {exc}", file=sys.stderr)
        return 1
    except InvariantError as exc:
        logger.error(f"Internal check failed: {exc}")
        print(f"Internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
