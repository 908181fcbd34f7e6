"""
Analytic bounds on configurations lacking holes, and their empirical check.

Per block of linear size ``l`` the probability of no hole is bounded by
``(1 - exp(-a R^2 beta)) ** ((l / (b R)) ** 2)``. The variants differ in
the constants ``(a, b)``:

    lbeta          a = 4, b = 1
    inline         a = 1, b = 1
    small_squares  a = 4, b = 2
"""

import math
from dataclasses import asdict, dataclass
from typing import Dict, Optional

import numpy as np

from src.constants import DEFAULT_L_BETA_VARIANT, MAX_L_BETA
from src.errors import ValidationError, require
from src.holes.detection import HoleFinder
from src.lattice.geometry import check_block_size
from src.lattice.hamiltonian import HamiltonianSpec
from src.thermal.ensemble import EnsembleParams
from src.thermal.sampler import GibbsSampler
from src.utils.helpers import batch_means
from src.validators import validate_beta, validate_epsilon, validate_variant, validate_volume

_CONSTANTS = {
    'lbeta': (4.0, 1.0),
    'inline': (1.0, 1.0),
    'small_squares': (4.0, 2.0),
}


def _variant(variant: str):
    require(validate_variant(variant))
    return _CONSTANTS[variant]


def log_bound_per_block(l: float, beta: float, r_int: float,
                        variant: str = DEFAULT_L_BETA_VARIANT) -> float:
    """Natural log of the per-block no-hole bound."""
    a, b = _variant(variant)
    log_base = math.log1p(-math.exp(-a * r_int ** 2 * beta))
    return (l / (b * r_int)) ** 2 * log_base


def bound_per_block(l: float, beta: float, r_int: float,
                    variant: str = DEFAULT_L_BETA_VARIANT) -> float:
    return math.exp(log_bound_per_block(l, beta, r_int, variant))


def solve_l_beta(beta: float, r_int: float, epsilon: float, V: float,
                 variant: str = DEFAULT_L_BETA_VARIANT) -> int:
    """
    Smallest integer ``l`` whose per-block bound is at most ``epsilon / V``.

    Args:
        beta: Inverse temperature, ``beta > 0``
        r_int: Interaction range, ``r_int > 0``
        epsilon: Target error, ``0 < epsilon < 1``
        V: System volume, ``V >= 1``
        variant: Bound constants, see module docstring

    Returns:
        int: The block size
    """
    require(validate_beta(beta, allow_zero=False))
    if r_int <= 0:
        raise ValidationError(f"R_int must be positive, got {r_int}")
    require(validate_epsilon(epsilon))
    require(validate_volume(V))
    a, b = _variant(variant)
    log_base = math.log1p(-math.exp(-a * r_int ** 2 * beta))
    if log_base == 0.0:
        raise ValidationError(f"bound is numerically 1 at beta={beta}; no finite block size")
    log_target = math.log(epsilon) - math.log(V)
    guess = b * r_int * math.sqrt(log_target / log_base)
    l = max(1, math.ceil(guess))
    if l > MAX_L_BETA:
        raise ValidationError(f"block size {l} exceeds {MAX_L_BETA}")

    def satisfied(size):
        return log_bound_per_block(size, beta, r_int, variant) <= log_target

    while l > 1 and satisfied(l - 1):
        l -= 1
    while not satisfied(l):
        l += 1
    return l


def literal_l_beta(beta: float, r_int: float, epsilon: float, V: float) -> float:
    """``exp((2R)^2 beta) R log(V) / log(epsilon)`` evaluated as written."""
    return math.exp((2 * r_int) ** 2 * beta) * r_int * math.log(V) / math.log(epsilon)


@dataclass
class InvalidRate:
    """One CSV row of the ``holes`` subcommand."""
    beta: float
    block_size: int
    empirical_rate: float
    stderr: float
    analytic_bound: float
    n_samples: int
    seed: int
    variant: str = DEFAULT_L_BETA_VARIANT
    raw_bound: float = 0.0

    def to_dict(self) -> Dict:
        return asdict(self)

    def within_bound(self, sigmas: float = 3.0) -> bool:
        return self.empirical_rate <= self.analytic_bound + sigmas * self.stderr


def invalid_rate(h: HamiltonianSpec, params: EnsembleParams, block_size: int,
                 r: Optional[int] = None,
                 variant: str = DEFAULT_L_BETA_VARIANT) -> InvalidRate:
    """
    Empirical fraction of invalid configurations beside the union bound.

    The analytic value is ``n_blocks * bound_per_block`` clipped at 1.
    """
    lat = h.lattice
    check_block_size(lat, block_size)
    n_blocks = (lat.L // block_size) ** lat.d
    if params.beta > 0:
        raw = n_blocks * bound_per_block(block_size, params.beta, h.r_int, variant)
    else:
        raw = 0.0
    finder = HoleFinder(h, r)

    if params.beta == 0:
        flags = np.zeros(params.n_samples)
    else:
        sampler = GibbsSampler(h, params)
        flags = np.array([0.0 if finder.classify(c, block_size).valid else 1.0
                          for c in sampler.run()])
    rate, stderr = batch_means(flags)
    return InvalidRate(params.beta, block_size, rate, stderr, min(1.0, raw),
                       params.n_samples, params.seed, variant, raw)
