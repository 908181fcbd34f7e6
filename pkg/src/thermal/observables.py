"""
Pauli expectations, energies and free energies of the thermal ensemble.
"""

import math
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from src.constants import EXACT_MODE_MAX_TERMS, THERMO_INTEGRATION_NODES
from src.errors import PauliError, ValidationError
from src.lattice.hamiltonian import HamiltonianSpec
from src.pauli.operators import Pauli, commutes
from src.thermal.ensemble import EnsembleParams, ExactEnsemble
from src.thermal.sampler import GibbsSampler
from src.utils.debug_logger import get_logger
from src.utils.helpers import batch_means

logger = get_logger(__name__)


@dataclass
class Estimate:
    """One CSV row of the ``sample`` and ``wilson`` subcommands."""
    observable: str
    beta: float
    mean: float
    stderr: float
    n_samples: int
    seed: int
    exact: bool = False

    def to_dict(self) -> Dict:
        return asdict(self)


def use_exact(h: HamiltonianSpec, exact: Optional[bool]) -> bool:
    if exact is None:
        return len(h) <= EXACT_MODE_MAX_TERMS
    if exact and len(h) > EXACT_MODE_MAX_TERMS:
        raise ValidationError(
            f"exact mode supports at most {EXACT_MODE_MAX_TERMS} terms, got {len(h)}")
    return exact


def _member_value(echelon, q: Pauli) -> int:
    sign = echelon.member(q)
    return 0 if sign is None else sign


def expectations(h: HamiltonianSpec, params: EnsembleParams, observables: Dict[str, Pauli],
                 exact: Optional[bool] = None) -> List[Estimate]:
    """
    Estimate ``tr(rho q)`` for several Hermitian Paulis from one ensemble.

    Args:
        h: Commuting Hamiltonian
        params: Ensemble parameters; only ``beta`` is used in exact mode
        observables: Label -> Hermitian Pauli
        exact: Force (True) or forbid (False) enumeration; None picks
            enumeration for at most 20 terms

    Returns:
        list: One Estimate per observable, in input order
    """
    for label, q in observables.items():
        if not q.is_hermitian():
            raise PauliError(f"observable {label} = {q} is not Hermitian")
    labels = list(observables)
    paulis = [observables[k] for k in labels]

    if use_exact(h, exact):
        values = ExactEnsemble(h, params.beta).expectations(paulis)
        return [Estimate(label, params.beta, float(v), 0.0, 0, params.seed, True)
                for label, v in zip(labels, values)]

    if params.beta == 0:
        # every configuration is empty: only the identity has nonzero trace
        return [Estimate(label, 0.0, 1.0 if q.is_identity() else 0.0, 0.0, params.n_samples,
                         params.seed) for label, q in zip(labels, paulis)]

    sampler = GibbsSampler(h, params)
    series = np.zeros((params.n_samples, len(paulis)))
    for row, _ in enumerate(sampler.run()):
        for col, q in enumerate(paulis):
            series[row, col] = _member_value(sampler.echelon, q)
    estimates = []
    for col, label in enumerate(labels):
        mean, stderr = batch_means(series[:, col])
        estimates.append(Estimate(label, params.beta, mean, stderr, params.n_samples, params.seed))
    return estimates


def expectation(h: HamiltonianSpec, params: EnsembleParams, q: Pauli,
                exact: Optional[bool] = None) -> Estimate:
    """``tr(rho q)`` with a standard error (zero in exact mode)."""
    return expectations(h, params, {q.to_label(): q}, exact)[0]


def energy_samples(h: HamiltonianSpec, params: EnsembleParams) -> np.ndarray:
    """``sum_X (1 - <g_X>_c) / 2`` for each sampled configuration ``c``."""
    sampler = GibbsSampler(h, params)
    values = np.zeros(params.n_samples)
    for row, c in enumerate(sampler.run()):
        energy = 0.0
        for k in np.flatnonzero(~c.s):
            energy += (1 - _member_value(sampler.echelon, h.terms[int(k)].pauli)) / 2
        values[row] = energy
    return values


def energy_estimate(h: HamiltonianSpec, params: EnsembleParams,
                    exact: Optional[bool] = None) -> Estimate:
    """Thermal energy of ``H = sum_X (I - g_X) / 2``."""
    if use_exact(h, exact):
        signs = ExactEnsemble(h, params.beta).expectations(h.paulis)
        return Estimate('H', params.beta, float(np.sum((1 - signs) / 2)), 0.0, 0, params.seed, True)
    if params.beta == 0:
        return Estimate('H', 0.0, len(h) / 2, 0.0, params.n_samples, params.seed)
    mean, stderr = batch_means(energy_samples(h, params))
    return Estimate('H', params.beta, mean, stderr, params.n_samples, params.seed)


def exact_marginals(h: HamiltonianSpec, beta: float) -> np.ndarray:
    """Per-term ``Pr[s_X = 1]`` by enumeration."""
    return ExactEnsemble(h, beta).marginals()


def log_partition_function(h: HamiltonianSpec, beta: float,
                           params: Optional[EnsembleParams] = None,
                           nodes: int = THERMO_INTEGRATION_NODES) -> float:
    """
    ``log tr exp(-beta H)``.

    Enumerates exactly for small term counts; otherwise integrates
    ``d log Z / d beta = -<H>`` from 0, where ``log Z = n log 2``, on
    Gauss-Legendre nodes with the sampler supplying ``<H>``.
    """
    if beta < 0:
        raise ValidationError(f"beta must be nonnegative, got {beta}")
    if len(h) <= EXACT_MODE_MAX_TERMS:
        return ExactEnsemble(h, beta).log_partition
    if beta == 0:
        return h.n_qubits * math.log(2.0)
    params = params or EnsembleParams(beta=beta, n_samples=200, burn_in=50)
    x, w = leggauss(nodes)
    betas = beta * (x + 1) / 2
    integral = 0.0
    for b, wk in zip(betas, w):
        energy = energy_estimate(h, params.with_beta(float(b)), exact=False).mean
        integral += wk * energy
    integral *= beta / 2
    logger.debug(f"thermodynamic integration over {nodes} nodes at beta={beta}")
    return h.n_qubits * math.log(2.0) - integral


def wilson_commutator_phase(ux: Pauli, uz: Pauli) -> int:
    """Global phase of ``U_x U_z U_x^dagger U_z^dagger``: +1 or -1."""
    return 1 if commutes(ux, uz) else -1
