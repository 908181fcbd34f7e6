"""
Configuration settings for the thermal lab.

Defaults are plain dicts per subcommand. A run may also read an INI-style
``key = value`` file; precedence is defaults < file < command-line flags.
"""

import configparser
from pathlib import Path

from src.constants import (DEFAULT_BETA, DEFAULT_BURN_IN, DEFAULT_L_BETA_VARIANT, DEFAULT_OUTPUT_DIR,
                           DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_THINNING)
from src.errors import ValidationError

# Keys shared by every subcommand
COMMON_SETTINGS = {
    'seed': DEFAULT_SEED,
    'out': DEFAULT_OUTPUT_DIR,
    'log_level': 'INFO',
    'log_dir': None,
}

# Lattice and sampling keys used by the stabilizer subcommands
LATTICE_SETTINGS = {
    'd': 2,
    'L': 4,
    'lambda_a': 1.0,
    'lambda_b': 1.0,
}

SAMPLING_SETTINGS = {
    'beta': DEFAULT_BETA,
    'samples': DEFAULT_SAMPLES,
    'burn_in': DEFAULT_BURN_IN,
    'thinning': DEFAULT_THINNING,
    'chains': 1,
}

DEFAULT_SETTINGS = {
    'sample': {
        **LATTICE_SETTINGS,
        **SAMPLING_SETTINGS,
        'exact': False,
        'window': 4,            # qubits in the observable window, from qubit 0
    },
    'holes': {
        **LATTICE_SETTINGS,
        **SAMPLING_SETTINGS,
        'betas': [0.25, 0.5, 1.0],
        'blocks': [2, 4],
        'radius': None,         # None = R_int + 1
        'variant': DEFAULT_L_BETA_VARIANT,
        'epsilon': 0.1,
    },
    'disentangle': {
        **LATTICE_SETTINGS,
        **SAMPLING_SETTINGS,
        'd': 3,
        'L': 6,
        'block': 3,
        'samples': 100,
        'radius': None,
        'plant': True,          # clear one ball per empty block instead of skipping
        'check_every_layer': True,
        'write_circuits': False,
    },
    'structure': {
        'instances': 10,
        'max_dim': 64,
        'generators': 3,
        'partition_L': 8,
        'partition_block': 4,
    },
    'degeneracy': {
        **LATTICE_SETTINGS,
        'l_star': 1,
        'max_l_star': None,     # scan 1..max_l_star when set
    },
    'toymodel': {
        'J': 1.0,
        'h': 0.5,
        'd': 2,
        'L': 4,
        'beta': 1.0,
        'sweeps': 1000,
        'burn_in': 100,
        'lambda_e': 1.0,
        'temperatures': [0.5, 1.0, 1.5, 2.0],
        'fields': [0.5],
        'hysteresis': False,
    },
    'wilson': {
        **LATTICE_SETTINGS,
        **SAMPLING_SETTINGS,
        'L': 8,
        'betas': [0.1, 0.5, 1.0, 5.0],
        'shift': None,          # None = L // 2
    },
}

# Column order of every CSV artifact, printed by --schema
CSV_SCHEMAS = {
    'sample': ['observable', 'beta', 'mean', 'stderr', 'n_samples', 'seed', 'exact', 'chain'],
    'holes': ['beta', 'block_size', 'empirical_rate', 'stderr', 'analytic_bound', 'raw_bound',
              'n_samples', 'seed', 'variant', 'l_beta', 'literal_l_beta'],
    'disentangle': ['sample', 'natively_valid', 'planted', 'n_gates', 'rounds', 'range',
                    'classical', 'rank'],
    'structure': ['instance', 'dim', 'n_blocks', 'recovered', 'completeness_residual',
                  'max_decomp2_residual'],
    'degeneracy': ['l_star', 'eps', 'mode', 'n_supports', 'n_operators', 'worst_operator',
                   'per_basis'],
    'toymodel': ['T', 'h', 'fraction_zero_mean', 'stderr', 'histogram_bimodality'],
    'wilson': ['observable', 'beta', 'mean', 'stderr', 'n_samples', 'seed', 'exact', 'chain',
               'commutator_phase'],
}


def _coerce(key, text, default):
    """Convert a config-file string to the type of its default."""
    text = text.strip()
    if isinstance(default, bool):
        if text.lower() in ('1', 'true', 'yes', 'on'):
            return True
        if text.lower() in ('0', 'false', 'no', 'off'):
            return False
        raise ValidationError(f"{key} must be true or false, got {text!r}")
    if text.lower() == 'none':
        return None
    try:
        if isinstance(default, list):
            item = default[0] if default else 0.0
            return [_coerce(key, part, item) for part in text.split(',') if part.strip()]
        if isinstance(default, int):
            return int(text)
        if isinstance(default, float):
            return float(text)
    except ValueError as exc:
        raise ValidationError(f"bad value for {key}: {text!r}") from exc
    if default is None:
        # numeric when it parses, string otherwise
        for cast in (int, float):
            try:
                return cast(text)
            except ValueError:
                pass
    return text


def defaults_for(subcommand):
    """Merged common and subcommand defaults."""
    if subcommand not in DEFAULT_SETTINGS:
        raise ValidationError(f"unknown subcommand {subcommand!r}")
    return {**COMMON_SETTINGS, **DEFAULT_SETTINGS[subcommand]}


def load_config_file(path, subcommand):
    """
    Read an INI-style ``key = value`` file for one subcommand.

    A section named after the subcommand overrides ``[run]``; a file
    without any section header is read as ``[run]``.

    Args:
        path (str): Path of the file
        subcommand (str): Subcommand whose defaults drive type coercion

    Returns:
        dict: Typed values found in the file
    """
    path = Path(path)
    if not path.exists():
        raise ValidationError(f"config file {path} does not exist")
    text = path.read_text(encoding='utf-8')
    if not text.lstrip().startswith('['):
        text = '[run]\n' + text

    parser = configparser.ConfigParser()
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ValidationError(f"cannot parse {path}: {exc}") from exc

    defaults = defaults_for(subcommand)
    values = {}
    for section in ('run', subcommand):
        if not parser.has_section(section):
            continue
        for key, raw in parser.items(section):
            if key not in defaults:
                raise ValidationError(f"unknown key {key!r} for {subcommand}")
            values[key] = _coerce(key, raw, defaults[key])
    return values


def merge_settings(subcommand, file_values=None, flag_values=None):
    """Apply file values then explicit flags over the defaults."""
    settings = defaults_for(subcommand)
    settings.update(file_values or {})
    settings.update({k: v for k, v in (flag_values or {}).items() if v is not None})
    return settings
