"""
Metropolis Monte Carlo for the three-state site model.

A sweep visits the ``2**d`` coordinate-parity sublattices in order. Sites
of one sublattice share no bond and no plaquette, so all of them are
proposed and accepted at once against the same local energies. A
proposal moves a site to one of its two other states with equal
probability.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from scipy.integrate import trapezoid
from scipy.special import logsumexp
from scipy.stats import kurtosis, skew

from src.constants import ENERGY_CHECK_INTERVAL, ENERGY_TOLERANCE, TOY_STATES
from src.errors import ToyModelError, ValidationError
from src.toymodel.model import SiteConfig, ToyParams, all_configurations, energy, energy_array, local_energies
from src.utils.debug_logger import get_logger
from src.utils.helpers import batch_means

logger = get_logger(__name__)

START_STATES = ('zero', 'one', 'random')


@dataclass
class MetropolisTrace:
    """Per-sweep energy and zero fraction after burn-in."""
    params: ToyParams
    energies: np.ndarray
    fraction_zero: np.ndarray
    final: SiteConfig
    acceptance: float = 0.0

    def fraction_zero_estimate(self):
        return batch_means(self.fraction_zero)

    def energy_estimate(self):
        return batch_means(self.energies)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            'sweep': np.arange(len(self.energies)),
            'energy': self.energies,
            'fraction_zero': self.fraction_zero,
        })


class MetropolisChain:
    """Seeded chain carrying its configuration and running energy."""

    def __init__(self, p: ToyParams, start: SiteConfig):
        errors = p.validate()
        if errors:
            raise ValidationError("; ".join(errors))
        if start.values.shape != (p.L,) * p.d:
            raise ValidationError(f"start shape {start.values.shape} does not match L={p.L}, d={p.d}")
        self.p = p
        self.values = start.values.copy()
        self.energy = energy(start, p)
        self.rng = np.random.default_rng(p.seed)
        parity = np.zeros(self.values.shape, dtype=np.int64)
        coords = np.indices(self.values.shape) % 2
        for mu in range(p.d):
            parity = parity * 2 + coords[mu]
        self.sublattices = [parity == k for k in range(2 ** p.d)]
        self.accepted = 0
        self.proposed = 0

    def set_beta(self, beta: float):
        self.p = self.p.with_values(beta=beta)

    def sweep(self):
        for mask in self.sublattices:
            local = local_energies(self.values, self.p)
            step = self.rng.integers(1, TOY_STATES, size=self.values.shape)
            proposal = ((self.values + step) % TOY_STATES).astype(np.int8)
            current = np.take_along_axis(local, self.values[None].astype(np.int64), axis=0)[0]
            moved = np.take_along_axis(local, proposal[None].astype(np.int64), axis=0)[0]
            delta = moved - current
            u = self.rng.random(size=self.values.shape)
            accept = mask & ((delta <= 0) | (u < np.exp(-self.p.beta * np.maximum(delta, 0))))
            self.values[accept] = proposal[accept]
            self.energy += float(delta[accept].sum())
            self.accepted += int(accept.sum())
            self.proposed += int(mask.sum())

    def check_energy(self):
        """
        Compare the running energy with a full recomputation.

        Raises:
            ToyModelError: if they differ by more than ``ENERGY_TOLERANCE``
        """
        full = float(energy_array(self.values, self.p))
        if abs(full - self.energy) > ENERGY_TOLERANCE * max(1.0, abs(full)):
            raise ToyModelError(f"running energy {self.energy} drifted from {full}")
        self.energy = full

    def run(self, sweeps: int, record: bool = True):
        energies, zeros = [], []
        for k in range(1, sweeps + 1):
            self.sweep()
            if k % ENERGY_CHECK_INTERVAL == 0:
                self.check_energy()
            if record:
                energies.append(self.energy)
                zeros.append(float(np.mean(self.values == 0)))
        return np.array(energies), np.array(zeros)


def start_config(p: ToyParams, start: str, rng: Optional[np.random.Generator] = None) -> SiteConfig:
    if start == 'zero':
        return SiteConfig.uniform(p.d, p.L, 0)
    if start == 'one':
        return SiteConfig.uniform(p.d, p.L, 1)
    if start == 'random':
        return SiteConfig.random(p.d, p.L, rng or np.random.default_rng(p.seed))
    raise ValidationError(f"unknown start {start!r}; expected one of {START_STATES}")


def metropolis_run(p: ToyParams, start: str = 'zero') -> MetropolisTrace:
    """
    Run ``p.burn_in`` unrecorded sweeps and ``p.sweeps`` recorded ones.

    Args:
        p: Model parameters and schedule
        start: Initial state, one of ``zero``, ``one``, ``random``

    Returns:
        MetropolisTrace: Energy and zero fraction per recorded sweep
    """
    chain = MetropolisChain(p, start_config(p, start))
    chain.run(p.burn_in, record=False)
    energies, zeros = chain.run(p.sweeps)
    chain.check_energy()
    rate = chain.accepted / chain.proposed if chain.proposed else 0.0
    logger.debug(f"metropolis d={p.d} L={p.L} beta={p.beta} h={p.h}: acceptance {rate:.3f}")
    return MetropolisTrace(p, energies, zeros, SiteConfig(chain.values), rate)


def bimodality_coefficient(samples: Sequence[float]) -> float:
    """
    Sarle's bimodality coefficient; values above 5/9 suggest two peaks.

    Returns 0 for fewer than four samples or a constant series.
    """
    x = np.asarray(samples, dtype=float)
    n = x.size
    if n < 4 or np.ptp(x) == 0:
        return 0.0
    g = skew(x, bias=False)
    k = kurtosis(x, fisher=True, bias=False)
    return float((g ** 2 + 1) / (k + 3 * (n - 1) ** 2 / ((n - 2) * (n - 3))))


@dataclass
class HysteresisResult:
    temperatures: np.ndarray
    from_zero: np.ndarray
    from_one: np.ndarray
    energies: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @property
    def loop_area(self) -> float:
        return float(trapezoid(np.abs(self.from_zero - self.from_one), self.temperatures))

    @property
    def bimodality(self) -> float:
        return bimodality_coefficient(self.energies)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            'T': self.temperatures,
            'fraction_zero_from_zero': self.from_zero,
            'fraction_zero_from_one': self.from_one,
        })


def hysteresis_scan(p: ToyParams, temperatures: Sequence[float]) -> HysteresisResult:
    """
    Carry a chain started in all-0 and one started in all-1 across a temperature ladder.

    Both branches use the same seed and schedule; the loop area is the
    trapezoid integral of the gap between their zero fractions.
    """
    temperatures = np.asarray(sorted(temperatures), dtype=float)
    if temperatures.size < 2 or temperatures[0] <= 0:
        raise ValidationError("hysteresis needs at least two positive temperatures")
    branches = {}
    pooled = []
    for start in ('zero', 'one'):
        chain = MetropolisChain(p.with_values(beta=1.0 / temperatures[0]), start_config(p, start))
        means = []
        for t in temperatures:
            chain.set_beta(1.0 / t)
            chain.run(p.burn_in, record=False)
            energies, zeros = chain.run(p.sweeps)
            means.append(float(zeros.mean()))
            pooled.append(energies / p.n_sites)
        branches[start] = np.array(means)
    result = HysteresisResult(temperatures, branches['zero'], branches['one'], np.concatenate(pooled))
    logger.debug(f"hysteresis over {temperatures.size} temperatures: area {result.loop_area:.4f}")
    return result


def exact_marginals(p: ToyParams) -> Dict[str, float]:
    """
    Gibbs averages by enumeration of all ``3**N`` configurations.

    Returns:
        dict: ``p0``, ``p1``, ``p2`` (site-averaged state probabilities),
            ``energy`` and ``fraction_zero``
    """
    configs = all_configurations(p)
    energies = energy_array(configs, p)
    log_w = -p.beta * energies
    weights = np.exp(log_w - logsumexp(log_w))
    axes = tuple(range(1, configs.ndim))
    result = {f"p{k}": float(weights @ (configs == k).mean(axis=axes)) for k in range(TOY_STATES)}
    result['energy'] = float(weights @ energies)
    result['fraction_zero'] = result['p0']
    return result


def phase_scan(p: ToyParams, temperatures: Sequence[float], fields: Sequence[float],
               start: str = 'random') -> pd.DataFrame:
    """
    Zero fraction and energy bimodality over a (T, h) grid.

    Every grid point runs an independent chain seeded with ``p.seed``.
    """
    rows: List[Dict] = []
    for h_value, t in product(fields, temperatures):
        if t <= 0:
            raise ValidationError(f"temperatures must be positive, got {t}")
        trace = metropolis_run(p.with_values(h=float(h_value), beta=1.0 / t), start)
        mean, stderr = trace.fraction_zero_estimate()
        rows.append({
            'T': float(t),
            'h': float(h_value),
            'fraction_zero_mean': mean,
            'stderr': stderr,
            'histogram_bimodality': bimodality_coefficient(trace.energies),
        })
    return pd.DataFrame(rows, columns=['T', 'h', 'fraction_zero_mean', 'stderr', 'histogram_bimodality'])
