"""
Exact ensemble representation of Gibbs states of commuting projector Hamiltonians.
"""

from .ensemble import (Config, EnsembleParams, ExactEnsemble, log_weight, weight,
                       ground_degeneracy, active_echelon)
from .sampler import GibbsSampler, chain_seeds, run_chains, sample
from .observables import (Estimate, expectation, expectations, energy_estimate, exact_marginals,
                          log_partition_function, wilson_commutator_phase)

__all__ = [
    'Config',
    'EnsembleParams',
    'ExactEnsemble',
    'log_weight',
    'weight',
    'ground_degeneracy',
    'active_echelon',
    'GibbsSampler',
    'sample',
    'chain_seeds',
    'run_chains',
    'exact_marginals',
    'Estimate',
    'expectation',
    'expectations',
    'energy_estimate',
    'log_partition_function',
    'wilson_commutator_phase',
]
