"""
Single-site heat-bath sampler over configurations ``{s_X}``.

The conditional odds of ``s_X = 1`` against ``s_X = 0`` given the other
bits are ``(1 - e^{-beta}) / e^{-beta} * Z_1 / Z_0`` with
``Z_1 / Z_0`` equal to 1, 1/2 or 0 when ``g_X`` is a +1 member of,
independent of, or a -1 member of the group of the other active terms.
"""

import math
from dataclasses import replace
from typing import Dict, Iterator, List

import numpy as np

from src.errors import ValidationError
from src.lattice.hamiltonian import HamiltonianSpec
from src.pauli.group import IncrementalEchelon
from src.thermal.ensemble import Config, EnsembleParams
from src.utils.debug_logger import get_logger

logger = get_logger(__name__)


class GibbsSampler:
    """Systematic-scan heat-bath chain started from the all-inactive configuration."""

    def __init__(self, h: HamiltonianSpec, params: EnsembleParams):
        if params.beta <= 0:
            raise ValidationError(f"sampling needs beta > 0, got {params.beta}")
        errors = params.validate()
        if errors:
            raise ValidationError("; ".join(errors))
        self.h = h
        self.params = params
        self.rng = np.random.default_rng(params.seed)
        self.bits = np.zeros(len(h), dtype=bool)
        self.echelon = IncrementalEchelon(h.n_qubits)
        self._w0 = math.exp(-params.beta)
        self._w1 = -math.expm1(-params.beta)
        self.sweeps_done = 0

    @property
    def config(self) -> Config:
        return Config(self.bits.copy())

    def probability_active(self, ratio: float) -> float:
        a = ratio * self._w1
        return a / (a + self._w0)

    def sweep(self):
        """Update every term once, in term order."""
        uniforms = self.rng.random(len(self.h))
        terms = self.h.terms
        for k in range(len(terms)):
            if self.bits[k]:
                if uniforms[k] >= self.probability_active(self.echelon.ratio_if_removed(k)):
                    self.echelon.remove(k)
                    self.bits[k] = False
            elif uniforms[k] < self.probability_active(self.echelon.ratio_if_added(terms[k].pauli)):
                self.echelon.add(k, terms[k].pauli)
                self.bits[k] = True
        self.sweeps_done += 1

    def run(self) -> Iterator[Config]:
        """Yield ``n_samples`` configurations after burn-in, ``thinning`` sweeps apart."""
        for _ in range(self.params.burn_in):
            self.sweep()
        for index in range(self.params.n_samples):
            for _ in range(self.params.thinning):
                self.sweep()
            if index and index % 100 == 0:
                logger.debug(f"sample {index}/{self.params.n_samples} at beta={self.params.beta}")
            yield self.config

    def full_rebuild_check(self) -> bool:
        """Compare the maintained echelon against a fresh elimination."""
        fresh = IncrementalEchelon(self.h.n_qubits)
        for k in np.flatnonzero(self.bits):
            fresh.add(int(k), self.h.terms[int(k)].pauli)
        return fresh.rank == self.echelon.rank and fresh.consistent() == self.echelon.consistent()


def sample(h: HamiltonianSpec, params: EnsembleParams) -> Iterator[Config]:
    """Stream configurations with ``Pr(c) ~ Z(c) P(c)``."""
    return GibbsSampler(h, params).run()


def chain_seeds(seed: int, n_chains: int) -> List[int]:
    """Independent per-chain seeds spawned from one root seed."""
    if n_chains == 1:
        return [seed]
    children = np.random.SeedSequence(seed).spawn(n_chains)
    return [int(child.generate_state(1)[0]) for child in children]


def run_chains(h: HamiltonianSpec, params: EnsembleParams, n_chains: int) -> Dict[int, List[Config]]:
    """
    Run ``n_chains`` independently seeded chains one after another.

    A single chain uses ``params.seed`` unchanged, so ``n_chains=1`` repeats
    a plain ``sample`` call.
    """
    if n_chains < 1:
        raise ValidationError("at least one chain is required")
    return {chain: list(GibbsSampler(h, replace(params, seed=s)).run())
            for chain, s in enumerate(chain_seeds(params.seed, n_chains))}
