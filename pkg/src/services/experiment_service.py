"""
Experiment service: one method per CLI subcommand.

Methods return pandas tables whose columns follow ``CSV_SCHEMAS`` plus a
JSON-ready summary dict; writing is left to ``OutputService``.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from src.config.settings import CSV_SCHEMAS
from src.disentangler.engine import run as disentangle
from src.disentangler.witness import state_witness
from src.errors import ValidationError
from src.factories import create_hamiltonian, create_wilson_observables, create_window_observables
from src.holes.bounds import invalid_rate, literal_l_beta, solve_l_beta
from src.holes.detection import HoleFinder
from src.lattice.hamiltonian import restrict
from src.lattice.logicals import logical_operators
from src.models.settings import (DegeneracySettings, DisentangleSettings, HoleScanSettings,
                                 LatticeSettings, SamplingSettings, StructureSettings, ToySettings,
                                 WilsonSettings)
from src.pauli.operators import Pauli
from src.structure.decomposition import (decomp2_residual, decompose_region,
                                         random_block_instance)
from src.structure.degeneracy import topological_degeneracy_eps
from src.structure.regions import region_partition
from src.thermal.ensemble import Config
from src.thermal.observables import energy_estimate, expectations, wilson_commutator_phase
from src.thermal.sampler import GibbsSampler, chain_seeds
from src.toymodel.free_energy import two_phase_free_energy
from src.toymodel.montecarlo import hysteresis_scan, phase_scan
from src.utils.debug_logger import get_logger, log_run_event

logger = get_logger(__name__)


def _chain_worker(job: Tuple) -> List[Dict]:
    lattice, sampling, beta, seed, chain, observables = job
    h = create_hamiltonian(lattice)
    params = sampling.to_params(beta=beta, seed=seed)
    rows = [dict(e.to_dict(), chain=chain)
            for e in expectations(h, params, observables, exact=False)]
    rows.append(dict(energy_estimate(h, params, exact=False).to_dict(), chain=chain))
    return rows


def _pooled(rows: List[Dict]) -> List[Dict]:
    """Mean over chains with the per-chain errors combined in quadrature."""
    frame = pd.DataFrame(rows)
    pooled = []
    for (label, beta), group in frame.groupby(['observable', 'beta'], sort=False):
        k = len(group)
        pooled.append({
            'observable': label,
            'beta': beta,
            'mean': float(group['mean'].mean()),
            'stderr': float(np.sqrt((group['stderr'] ** 2).sum()) / k),
            'n_samples': int(group['n_samples'].sum()),
            'seed': int(group['seed'].iloc[0]),
            'exact': False,
            'chain': 'all',
        })
    return pooled


class ExperimentService:
    """Runs experiments from validated settings records."""

    def __init__(self, workers: Optional[int] = None):
        self.workers = workers

    # Thermal expectations

    def estimate(self, lattice: LatticeSettings, sampling: SamplingSettings,
                 observables: Dict[str, Pauli], beta: float) -> List[Dict]:
        """
        Expectations at one temperature, exact or over ``sampling.chains`` chains.

        Chains run in worker processes and are merged in chain order,
        followed by one pooled row per observable.
        """
        h = create_hamiltonian(lattice)
        if sampling.exact or beta == 0:
            params = sampling.to_params(beta=beta)
            exact = True if sampling.exact else None
            rows = [dict(e.to_dict(), chain=0) for e in expectations(h, params, observables, exact)]
            rows.append(dict(energy_estimate(h, params, exact).to_dict(), chain=0))
            return rows

        seeds = chain_seeds(sampling.seed, sampling.chains)
        jobs = [(lattice, sampling, beta, s, chain, observables) for chain, s in enumerate(seeds)]
        if len(jobs) == 1:
            results = [_chain_worker(jobs[0])]
        else:
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                results = list(pool.map(_chain_worker, jobs))
        rows = [row for chain_rows in results for row in chain_rows]
        if len(jobs) > 1:
            rows += _pooled(rows)
        log_run_event("CHAINS_MERGED", beta=beta, chains=len(jobs), rows=len(rows))
        return rows

    def run_sample(self, lattice: LatticeSettings, sampling: SamplingSettings,
                   window: int) -> Tuple[pd.DataFrame, Dict]:
        h = create_hamiltonian(lattice)
        observables = create_window_observables(h, window)
        rows = self.estimate(lattice, sampling, observables, sampling.beta)
        table = pd.DataFrame(rows, columns=CSV_SCHEMAS['sample'])
        energy = [r for r in rows if r['observable'] == 'H'][-1]
        summary = {'n_qubits': h.n_qubits, 'n_terms': len(h), 'r_int': h.r_int,
                   'energy': energy['mean'], 'energy_stderr': energy['stderr']}
        return table, summary

    # Holes

    def run_holes(self, lattice: LatticeSettings, sampling: SamplingSettings,
                  scan: HoleScanSettings) -> Tuple[pd.DataFrame, Dict]:
        h = create_hamiltonian(lattice)
        volume = h.lattice.n_vertices
        rows, within = [], []
        for beta in scan.betas:
            params = sampling.to_params(beta=beta)
            try:
                l_beta = solve_l_beta(beta, h.r_int, scan.epsilon, volume, scan.variant)
            except ValidationError as exc:
                logger.warning(f"no l_beta at beta={beta}: {exc}")
                l_beta = None
            literal = literal_l_beta(beta, h.r_int, scan.epsilon, volume)
            for block in scan.blocks:
                result = invalid_rate(h, params, block, scan.radius, scan.variant)
                rows.append(dict(result.to_dict(), l_beta=l_beta, literal_l_beta=literal))
                within.append(result.within_bound())
                log_run_event("HOLES_POINT", beta=beta, block=block,
                              rate=result.empirical_rate, bound=result.analytic_bound)
        table = pd.DataFrame(rows, columns=CSV_SCHEMAS['holes'])
        summary = {'r_int': h.r_int, 'volume': volume, 'points': len(rows),
                   'all_within_bound': all(within)}
        return table, summary

    # Disentangler

    def run_disentangle(self, lattice: LatticeSettings, sampling: SamplingSettings,
                        settings: DisentangleSettings) -> Tuple[pd.DataFrame, Dict, List[List[str]]]:
        h = create_hamiltonian(lattice)
        finder = HoleFinder(h, settings.radius)
        params = sampling.to_params()
        rows, circuits = [], []
        for k, c in enumerate(GibbsSampler(h, params).run()):
            natively_valid = finder.classify(c, settings.block).valid
            planted = 0
            if not natively_valid:
                if not settings.plant:
                    rows.append({'sample': k, 'natively_valid': False, 'planted': 0,
                                 'n_gates': 0, 'rounds': 0, 'range': 0, 'classical': False,
                                 'rank': 0})
                    continue
                c, planted = finder.plant(c, settings.block)
            result = disentangle(h, c, settings.block, finder.r, settings.check_every_layer)
            witness = state_witness(h, c, result.circuit)
            rows.append({'sample': k, 'natively_valid': natively_valid, 'planted': planted,
                         'n_gates': witness.n_gates, 'rounds': witness.rounds,
                         'range': witness.range, 'classical': result.classical and witness.valid,
                         'rank': witness.rank})
            if settings.write_circuits:
                circuits.append(result.circuit.to_lines())
        table = pd.DataFrame(rows, columns=CSV_SCHEMAS['disentangle'])
        summary = {
            'samples': len(rows),
            'classical': int(table['classical'].sum()),
            'natively_valid': int(table['natively_valid'].sum()),
            'max_range': int(table['range'].max()) if len(table) else 0,
            'range_limit': 2 * settings.block,
        }
        log_run_event("DISENTANGLE_DONE", **summary)
        return table, summary, circuits

    # Structure

    def run_structure(self, settings: StructureSettings) -> Tuple[pd.DataFrame, Dict]:
        rng = np.random.default_rng(settings.seed)
        rows = []
        for k in range(settings.instances):
            layout = random_layout(rng, settings.max_dim)
            instance = random_block_instance(layout, rng, settings.generators)
            decomp = decompose_region(instance.generators, seed=settings.seed + k)
            residuals = []
            trivial = decompose_region({}, dim=2)
            for name, gens in instance.generators.items():
                partner = [np.diag(rng.normal(size=2)) for _ in gens]
                h_ab = sum(np.kron(g, o) for g, o in zip(gens, partner))
                residuals.append(decomp2_residual(h_ab, decomp, trivial, toward_b=name))
            rows.append({
                'instance': k,
                'dim': instance.dim,
                'n_blocks': len(decomp.blocks),
                'recovered': decomp.signatures() == instance.expected_signatures(),
                'completeness_residual': decomp.completeness_residual(),
                'max_decomp2_residual': max(residuals),
            })
        table = pd.DataFrame(rows, columns=CSV_SCHEMAS['structure'])

        lat_settings = LatticeSettings(d=2, L=settings.partition_L)
        h = create_hamiltonian(lat_settings)
        finder = HoleFinder(h)
        c, planted = finder.plant(Config.ones(len(h)), settings.partition_block)
        report = finder.classify(c, settings.partition_block)
        holes = {i: s.chosen_hole for i, s in report.blocks.items()}
        active = restrict(h, c)
        partition = region_partition(h.lattice, holes, settings.partition_block, active)
        summary = {
            'instances': settings.instances,
            'recovered': int(table['recovered'].sum()),
            'partition': {'L': settings.partition_L, 'block': settings.partition_block,
                          'planted': planted, 'n_regions': partition.n_regions,
                          'adjacent_pairs': partition.adjacency.number_of_edges()},
        }
        return table, summary

    # Degeneracy

    def run_degeneracy(self, lattice: LatticeSettings,
                       settings: DegeneracySettings) -> Tuple[pd.DataFrame, Dict]:
        h = create_hamiltonian(lattice)
        rows = [topological_degeneracy_eps(h.paulis, l_star, lattice=h.lattice).to_dict()
                for l_star in settings.l_star_values()]
        table = pd.DataFrame(rows, columns=CSV_SCHEMAS['degeneracy'])
        return table, {'max_eps': float(table['eps'].max())}

    # Toy model

    def run_toymodel(self, settings: ToySettings) -> Tuple[pd.DataFrame, Dict, Optional[pd.DataFrame]]:
        p = settings.to_params()
        table = phase_scan(p, settings.temperatures, settings.fields)
        summary = {'free_energy': two_phase_free_energy(p).to_dict()}
        loop = None
        if settings.hysteresis:
            result = hysteresis_scan(p, settings.temperatures)
            loop = result.to_frame()
            summary['hysteresis'] = {'loop_area': result.loop_area, 'bimodality': result.bimodality}
        return table, summary, loop

    # Wilson pairs

    def run_wilson(self, lattice: LatticeSettings, sampling: SamplingSettings,
                   settings: WilsonSettings) -> Tuple[pd.DataFrame, Dict]:
        h = create_hamiltonian(lattice)
        observables = create_wilson_observables(h, settings.shift)
        pair = logical_operators(h.lattice, settings.shift)
        phase = wilson_commutator_phase(pair.ux, pair.uz)
        rows = []
        for beta in settings.betas:
            rows += [r for r in self.estimate(lattice, sampling, observables, beta)
                     if r['observable'] != 'H']
        table = pd.DataFrame(rows, columns=CSV_SCHEMAS['wilson'])
        table['commutator_phase'] = phase
        return table, {'commutator_phase': phase, 'n_qubits': h.n_qubits}


def random_layout(rng: np.random.Generator, max_dim: int) -> List[Dict]:
    """Random two-neighbour block layout whose total dimension is at most ``max_dim``."""
    while True:
        layout = []
        for _ in range(int(rng.integers(1, 4))):
            layout.append({'factor_dims': {'b': int(rng.integers(1, 4)), 'c': int(rng.integers(1, 4))},
                           'inner_dim': int(rng.integers(1, 3))})
        total = sum(blk['factor_dims']['b'] * blk['factor_dims']['c'] * blk['inner_dim']
                    for blk in layout)
        if total <= max_dim:
            return layout
