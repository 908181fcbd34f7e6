"""
Three-state site model: energies, Metropolis chains and the two-phase comparison.
"""

from .model import (ToyParams, SiteConfig, energy, energy_array, energy_change, local_energies,
                    all_configurations, ground_energy_per_site)
from .montecarlo import (MetropolisChain, MetropolisTrace, HysteresisResult, metropolis_run,
                         hysteresis_scan, bimodality_coefficient, exact_marginals, phase_scan)
from .free_energy import (FreeEnergyResult, toric_free_energy_provider, toric_qubits_per_site,
                          phase_free_energies,
                          crossing_temperature, two_phase_free_energy)

__all__ = [
    'ToyParams',
    'SiteConfig',
    'energy',
    'energy_array',
    'energy_change',
    'local_energies',
    'all_configurations',
    'ground_energy_per_site',
    'MetropolisChain',
    'MetropolisTrace',
    'HysteresisResult',
    'metropolis_run',
    'hysteresis_scan',
    'bimodality_coefficient',
    'exact_marginals',
    'phase_scan',
    'FreeEnergyResult',
    'toric_free_energy_provider',
    'toric_qubits_per_site',
    'phase_free_energies',
    'crossing_temperature',
    'two_phase_free_energy',
]
