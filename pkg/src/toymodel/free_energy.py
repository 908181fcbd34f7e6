"""
Two-phase free-energy comparison per site.

The 0-phase is frozen: ``F_0`` is its energy per site. In the {1,2}-phase
the sites carry a ``d``-dimensional toric code at the same temperature, so
``F_12 = -J d - T ln 2 + q_d f_toric(beta)`` where ``f_toric`` is the toric
code's free energy per qubit measured from free spins and ``q_d`` the
number of toric qubits per site.
"""

import math
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Callable, Dict, Optional

from scipy.optimize import brentq

from src.constants import QUBIT_DIMENSION
from src.errors import ValidationError
from src.lattice.cells import build
from src.lattice.hamiltonian import toric_code
from src.thermal.ensemble import EnsembleParams
from src.thermal.observables import log_partition_function
from src.toymodel.model import ToyParams, ground_energy_per_site
from src.utils.debug_logger import get_logger

logger = get_logger(__name__)

ToricProvider = Callable[[float], float]

T_FLOOR = 1e-6
T_CEILING = 1e3


def toric_qubits_per_site(d: int) -> int:
    """Toric code qubits per vertex: the ``qubit_dim``-cells based at it."""
    if d not in QUBIT_DIMENSION:
        raise ValidationError(f"no toric code in dimension {d}")
    return math.comb(d, QUBIT_DIMENSION[d])


def toric_free_energy_provider(d: int = 2, L: int = 2,
                               params: Optional[EnsembleParams] = None) -> ToricProvider:
    """
    ``beta -> f_toric(beta) = -(ln Z(beta) - n ln 2) / (beta n)``.

    Small codes are enumerated exactly; larger ones fall back to
    thermodynamic integration with ``params`` as the sampling schedule.
    """
    h = toric_code(build(d, L))
    n = h.n_qubits

    @lru_cache(maxsize=None)
    def provider(beta: float) -> float:
        if beta <= 0:
            raise ValidationError(f"beta must be positive, got {beta}")
        log_z = log_partition_function(h, beta, params)
        return -(log_z - n * math.log(2.0)) / (beta * n)

    return provider


@dataclass
class FreeEnergyResult:
    T: float
    F_0: float
    F_12: float
    T_star: Optional[float]
    critical_h: float

    def to_dict(self) -> Dict:
        return asdict(self)


def phase_free_energies(p: ToyParams, T: float, toric: ToricProvider) -> tuple:
    """``(F_0, F_12)`` per site at temperature ``T``; ``T = 0`` gives energies."""
    f0 = ground_energy_per_site(p, 0)
    if T <= 0:
        return f0, ground_energy_per_site(p, 1)
    sector = toric_qubits_per_site(p.d) * toric(1.0 / T)
    f12 = ground_energy_per_site(p, 1) - T * math.log(2.0) + sector
    return f0, f12


def crossing_temperature(p: ToyParams, toric: ToricProvider) -> Optional[float]:
    """
    Temperature where ``F_12`` drops below ``F_0``, or None.

    The gap ``F_12 - F_0`` is bracketed between ``T = 0`` and the first
    doubling of ``T`` where it turns nonpositive. There is no crossing when
    the {1,2}-phase already wins at ``T = 0``.
    """
    def gap(t: float) -> float:
        f0, f12 = phase_free_energies(p, t, toric)
        return f12 - f0

    if gap(T_FLOOR) <= 0:
        return None
    hi = 1.0
    while gap(hi) > 0:
        hi *= 2
        if hi > T_CEILING:
            return None
    return float(brentq(gap, T_FLOOR, hi, xtol=1e-10))


def two_phase_free_energy(p: ToyParams, toric: Optional[ToricProvider] = None) -> FreeEnergyResult:
    """
    Compare the two phases at ``p.T`` and locate their crossing.

    Args:
        p: Model parameters; ``lambda_e`` sets the 0-phase plaquette gain
        toric: Toric free-energy provider, default the ``L = 2`` code in
            dimension ``p.d`` (exact in 2D, integrated otherwise)

    Returns:
        FreeEnergyResult: ``F_0``, ``F_12`` at ``p.T`` and ``T_star``
    """
    toric = toric or toric_free_energy_provider(d=p.d)
    f0, f12 = phase_free_energies(p, p.T, toric)
    t_star = crossing_temperature(p, toric)
    critical_h = p.lambda_e * math.comb(p.d, 2)
    logger.debug(f"free energies at T={p.T}: F_0={f0:.6f} F_12={f12:.6f} T*={t_star}")
    return FreeEnergyResult(p.T, f0, f12, t_star, critical_h)
