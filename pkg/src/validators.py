"""
Validation functions for run parameters.

Each validator returns ``(is_valid, error_message)``; ``src.errors.require``
turns a failed tuple into a ``ValidationError``.
"""

import re

from src.constants import L_BETA_VARIANTS, SUPPORTED_DIMENSIONS


def validate_dimension(d, allowed=SUPPORTED_DIMENSIONS):
    """
    Validate a lattice dimension.

    Args:
        d (int): The dimension
        allowed (tuple): Dimensions accepted by the caller

    Returns:
        tuple: (is_valid, error_message)
    """
    try:
        d = int(d)
    except (ValueError, TypeError):
        return False, "Dimension must be a number"

    if d not in allowed:
        return False, f"Dimension must be one of {tuple(allowed)} (got {d})"

    return True, None


def validate_size(L):
    """
    Validate a linear lattice size.

    Args:
        L (int): Number of vertices along each axis

    Returns:
        tuple: (is_valid, error_message)
    """
    try:
        L = int(L)
    except (ValueError, TypeError):
        return False, "Lattice size must be a number"

    if L < 2:
        return False, f"Lattice size must be at least 2 (got {L})"

    return True, None


def validate_block(L, block):
    """
    Validate a block size against the lattice size.

    Args:
        L (int): Lattice size
        block (int): Block size

    Returns:
        tuple: (is_valid, error_message)
    """
    try:
        L, block = int(L), int(block)
    except (ValueError, TypeError):
        return False, "Block size must be a number"

    if block < 2:
        return False, f"Block size must be at least 2 (got {block})"

    if block > L or L % block:
        return False, f"Block size {block} must divide L={L}"

    return True, None


def validate_beta(beta, allow_zero=True):
    try:
        beta = float(beta)
    except (ValueError, TypeError):
        return False, "Beta must be a number"

    if beta < 0 or (beta == 0 and not allow_zero):
        bound = "nonnegative" if allow_zero else "positive"
        return False, f"Beta must be {bound} (got {beta})"

    return True, None


def validate_epsilon(epsilon):
    try:
        epsilon = float(epsilon)
    except (ValueError, TypeError):
        return False, "Epsilon must be a number"

    if not 0 < epsilon < 1:
        return False, f"Epsilon must lie strictly between 0 and 1 (got {epsilon})"

    return True, None


def validate_count(value, name, minimum=1):
    """
    Validate an integer count such as samples, sweeps or chains.

    Args:
        value: The count
        name (str): Name used in the message
        minimum (int): Smallest accepted value

    Returns:
        tuple: (is_valid, error_message)
    """
    try:
        value = int(value)
    except (ValueError, TypeError):
        return False, f"{name} must be a whole number"

    if value < minimum:
        return False, f"{name} must be at least {minimum} (got {value})"

    return True, None


def validate_seed(seed):
    return validate_count(seed, "Seed", minimum=0)


def validate_variant(variant):
    if variant not in L_BETA_VARIANTS:
        return False, f"Unknown bound variant {variant!r}; expected one of {L_BETA_VARIANTS}"
    return True, None


def validate_volume(V):
    try:
        V = float(V)
    except (ValueError, TypeError):
        return False, "Volume must be a number"

    if V < 1:
        return False, f"Volume must be at least 1 (got {V})"

    return True, None


def validate_run_settings(settings):
    """
    Validate the lattice and sampling keys of a merged settings dict.

    Args:
        settings (dict): Settings dictionary

    Returns:
        tuple: (is_valid, errors) where errors is a list of error messages
    """
    errors = []

    checks = [
        ('d', validate_dimension),
        ('L', validate_size),
        ('seed', validate_seed),
    ]
    for key, check in checks:
        if key in settings:
            ok, message = check(settings[key])
            if not ok:
                errors.append(message)

    counts = [('samples', "Samples", 1), ('burn_in', "Burn-in", 0),
              ('thinning', "Thinning", 1), ('chains', "Chains", 1)]
    for key, name, minimum in counts:
        if key in settings:
            ok, message = validate_count(settings[key], name, minimum)
            if not ok:
                errors.append(message)

    if 'block' in settings and 'L' in settings and not errors:
        ok, message = validate_block(settings['L'], settings['block'])
        if not ok:
            errors.append(message)

    for beta in settings.get('betas', [settings['beta']] if 'beta' in settings else []):
        ok, message = validate_beta(beta)
        if not ok:
            errors.append(message)

    return len(errors) == 0, errors


def sanitize_filename(filename):
    """
    Sanitize a filename for saving.

    Args:
        filename (str): The filename to sanitize

    Returns:
        str: Sanitized filename
    """
    if not filename:
        return "output"

    parts = filename.rsplit('.', 1)
    name = parts[0]
    ext = parts[1] if len(parts) > 1 else ""

    name = re.sub(r'[<>:"|?*\\/\s]', '_', name)

    return f"{name}.{ext}" if ext else name
