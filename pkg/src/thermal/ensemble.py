"""
Configurations ``{s_X}`` of a commuting-projector Hamiltonian and their weights.

Expanding ``exp(-beta Q_X) = e^{-beta} I + (1 - e^{-beta}) (I - Q_X)`` term
by term writes the Gibbs state as a mixture over configurations. A
configuration contributes the maximally mixed state on the ground space
of its active terms, with weight ``Z(c) P(c)`` where ``Z(c)`` is the
ground-space dimension.
"""

import math
from dataclasses import asdict, dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import logsumexp

from src.constants import (DEFAULT_BETA, DEFAULT_BURN_IN, DEFAULT_SAMPLES, DEFAULT_SEED,
                           DEFAULT_THINNING, EXACT_MODE_MAX_TERMS)
from src.errors import ValidationError
from src.lattice.hamiltonian import HamiltonianSpec
from src.pauli.group import IncrementalEchelon
from src.pauli.operators import Pauli


@dataclass
class Config:
    """One bit ``s_X`` per term of a Hamiltonian."""
    s: np.ndarray

    def __post_init__(self):
        self.s = np.asarray(self.s, dtype=bool)

    @classmethod
    def zeros(cls, m: int) -> "Config":
        return cls(np.zeros(m, dtype=bool))

    @classmethod
    def ones(cls, m: int) -> "Config":
        return cls(np.ones(m, dtype=bool))

    @classmethod
    def from_active(cls, m: int, active: Sequence[int]) -> "Config":
        bits = np.zeros(m, dtype=bool)
        bits[list(active)] = True
        return cls(bits)

    @classmethod
    def from_int(cls, m: int, value: int) -> "Config":
        return cls(np.array([(value >> k) & 1 for k in range(m)], dtype=bool))

    def __len__(self):
        return int(self.s.size)

    @property
    def n_active(self) -> int:
        return int(self.s.sum())

    def active_indices(self) -> List[int]:
        return [int(k) for k in np.flatnonzero(self.s)]

    def with_inactive(self, indices) -> "Config":
        bits = self.s.copy()
        bits[list(indices)] = False
        return Config(bits)

    def to_string(self) -> str:
        return ''.join('1' if b else '0' for b in self.s)


@dataclass
class EnsembleParams:
    """Sampling schedule at inverse temperature ``beta``."""
    beta: float = DEFAULT_BETA
    n_samples: int = DEFAULT_SAMPLES
    burn_in: int = DEFAULT_BURN_IN
    thinning: int = DEFAULT_THINNING
    seed: int = DEFAULT_SEED

    def validate(self) -> List[str]:
        errors = []
        if self.beta < 0:
            errors.append("beta must be nonnegative")
        if self.n_samples < 1:
            errors.append("n_samples must be at least 1")
        if self.burn_in < 0:
            errors.append("burn_in must be nonnegative")
        if self.thinning < 1:
            errors.append("thinning must be at least 1")
        if self.seed < 0:
            errors.append("seed must be nonnegative")
        return errors

    def with_beta(self, beta: float) -> "EnsembleParams":
        return EnsembleParams(beta, self.n_samples, self.burn_in, self.thinning, self.seed)

    def to_dict(self) -> Dict:
        return asdict(self)


def log_term_weights(beta: float) -> Tuple[float, float]:
    """``(log e^{-beta}, log(1 - e^{-beta}))``; the second is ``-inf`` at beta = 0."""
    if beta < 0:
        raise ValidationError(f"beta must be nonnegative, got {beta}")
    if beta == 0:
        return 0.0, -math.inf
    return -beta, math.log(-math.expm1(-beta))


def log_weight(c: Config, beta: float) -> float:
    """``log P(c)`` computed in the log domain."""
    log_w0, log_w1 = log_term_weights(beta)
    n1 = c.n_active
    n0 = len(c) - n1
    if n1 == 0:
        return n0 * log_w0
    return n0 * log_w0 + n1 * log_w1


def weight(c: Config, beta: float) -> float:
    """``P(c) = prod_X ((1 - s_X) e^{-beta} + s_X (1 - e^{-beta}))``."""
    return math.exp(log_weight(c, beta))


def active_echelon(h: HamiltonianSpec, c: Config) -> IncrementalEchelon:
    """Echelon form of the active generators, keyed by term position."""
    if len(c) != len(h):
        raise ValidationError(f"config has {len(c)} bits for {len(h)} terms")
    echelon = IncrementalEchelon(h.n_qubits)
    for k in c.active_indices():
        echelon.add(k, h.terms[k].pauli)
    return echelon


def ground_degeneracy(h: HamiltonianSpec, c: Config) -> int:
    """``2**(n - rank)`` for a consistent active group, otherwise 0."""
    echelon = active_echelon(h, c)
    if not echelon.consistent():
        return 0
    return 2 ** (h.n_qubits - echelon.rank)


def log_ground_degeneracy(n_qubits: int, echelon: IncrementalEchelon) -> float:
    if not echelon.consistent():
        return -math.inf
    return (n_qubits - echelon.rank) * math.log(2.0)


class ExactEnsemble:
    """
    Full enumeration of the ``2**m`` configurations in Gray-code order.

    Each step toggles one generator in a shared echelon form, so a full
    pass costs one insertion or removal per configuration.
    """

    def __init__(self, h: HamiltonianSpec, beta: float):
        if len(h) > EXACT_MODE_MAX_TERMS:
            raise ValidationError(
                f"exact mode supports at most {EXACT_MODE_MAX_TERMS} terms, got {len(h)}")
        self.h = h
        self.beta = beta
        self.m = len(h)
        log_w0, log_w1 = log_term_weights(beta)
        configs, logs = [], []
        for bits, echelon in self._walk():
            n1 = bin(bits).count("1")
            log_p = (self.m - n1) * log_w0 + (n1 * log_w1 if n1 else 0.0)
            configs.append(bits)
            logs.append(log_p + log_ground_degeneracy(h.n_qubits, echelon))
        self.configs = np.array(configs, dtype=np.int64)
        self.log_weights = np.array(logs)
        self.log_partition = float(logsumexp(self.log_weights))
        self.probabilities = np.exp(self.log_weights - self.log_partition)

    def _walk(self) -> Iterator[Tuple[int, IncrementalEchelon]]:
        echelon = IncrementalEchelon(self.h.n_qubits)
        bits = 0
        yield bits, echelon
        for step in range(1, 2 ** self.m):
            k = (step & -step).bit_length() - 1
            if (bits >> k) & 1:
                echelon.remove(k)
            else:
                echelon.add(k, self.h.terms[k].pauli)
            bits ^= 1 << k
            yield bits, echelon

    def expectations(self, observables: Sequence[Pauli]) -> np.ndarray:
        """``tr(rho q)`` for each Hermitian ``q``."""
        signs = np.zeros((len(self.configs), len(observables)))
        for row, (_, echelon) in enumerate(self._walk()):
            if self.probabilities[row] == 0.0:
                continue
            for col, q in enumerate(observables):
                sign = echelon.member(q)
                signs[row, col] = 0 if sign is None else sign
        return self.probabilities @ signs

    def marginals(self) -> np.ndarray:
        """``Pr[s_X = 1]`` per term."""
        bits = (self.configs[:, None] >> np.arange(self.m)[None, :]) & 1
        return self.probabilities @ bits

    def config_probability(self, c: Config) -> float:
        value = int(sum(1 << k for k in c.active_indices()))
        row = int(np.flatnonzero(self.configs == value)[0])
        return float(self.probabilities[row])
