"""
Three-state site model.

Each site holds 0, 1 or 2. Bonds gain ``-J`` when both ends are 0 or both
ends are in {1, 2}; every 0-site costs ``+h``; an optional ``-lambda_E`` per
elementary plaquette whose four corners are all 0 stands in for the
polarized plaquette spins of the 0-phase.
"""

from dataclasses import asdict, dataclass
from itertools import combinations, product
from math import comb
from typing import Dict, List, Tuple

import numpy as np

from src.constants import DEFAULT_SEED, MAX_ENUMERATION_SITES, TOY_STATES
from src.errors import ValidationError


@dataclass
class ToyParams:
    """Couplings and Monte Carlo schedule."""
    J: float = 1.0
    h: float = 0.0
    d: int = 4
    L: int = 4
    beta: float = 1.0
    sweeps: int = 1000
    burn_in: int = 100
    seed: int = DEFAULT_SEED
    lambda_e: float = 0.0

    @property
    def T(self) -> float:
        return 1.0 / self.beta if self.beta > 0 else float('inf')

    @property
    def n_sites(self) -> int:
        return self.L ** self.d

    def validate(self) -> List[str]:
        errors = []
        if self.J <= 0:
            errors.append("J must be positive")
        if self.d < 1:
            errors.append("d must be at least 1")
        if self.L < 2 or self.L % 2:
            errors.append("L must be even and at least 2")
        if self.beta <= 0:
            errors.append("beta must be positive")
        if self.sweeps < 1:
            errors.append("sweeps must be at least 1")
        if self.burn_in < 0:
            errors.append("burn_in must be nonnegative")
        if self.lambda_e < 0:
            errors.append("lambda_e must be nonnegative")
        return errors

    def with_values(self, **changes) -> "ToyParams":
        values = asdict(self)
        values.update(changes)
        return ToyParams(**values)

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass
class SiteConfig:
    """Site values on an ``L**d`` periodic lattice."""
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.int8)
        if self.values.size and (self.values.min() < 0 or self.values.max() >= TOY_STATES):
            raise ValidationError(f"site values must lie in 0..{TOY_STATES - 1}")

    @classmethod
    def uniform(cls, d: int, L: int, value: int) -> "SiteConfig":
        return cls(np.full((L,) * d, value, dtype=np.int8))

    @classmethod
    def random(cls, d: int, L: int, rng: np.random.Generator) -> "SiteConfig":
        return cls(rng.integers(TOY_STATES, size=(L,) * d).astype(np.int8))

    @property
    def fraction_zero(self) -> float:
        return float(np.mean(self.values == 0))

    def swapped(self) -> "SiteConfig":
        """Relabel 1 <-> 2."""
        out = self.values.copy()
        out[self.values == 1] = 2
        out[self.values == 2] = 1
        return SiteConfig(out)


def _plaquette_axes(d: int) -> List[Tuple[int, int]]:
    return list(combinations(range(d), 2))


def energy_array(values: np.ndarray, p: ToyParams) -> np.ndarray:
    """
    Energy of every configuration in a stack.

    Args:
        values: Array whose trailing ``p.d`` axes are the lattice
        p: Model parameters

    Returns:
        np.ndarray: Energies over the leading axes
    """
    values = np.asarray(values)
    axes = tuple(range(values.ndim - p.d, values.ndim))
    zero = values == 0
    other = ~zero
    bonds = np.zeros(values.shape, dtype=np.int64)
    for ax in axes:
        bonds += zero & np.roll(zero, -1, axis=ax)
        bonds += other & np.roll(other, -1, axis=ax)
    total = -p.J * bonds.sum(axis=axes) + p.h * zero.sum(axis=axes)
    if p.lambda_e:
        full = np.zeros(values.shape, dtype=np.int64)
        for mu, nu in _plaquette_axes(p.d):
            a, b = axes[mu], axes[nu]
            full += (zero & np.roll(zero, -1, axis=a) & np.roll(zero, -1, axis=b)
                     & np.roll(np.roll(zero, -1, axis=a), -1, axis=b))
        total = total - p.lambda_e * full.sum(axis=axes)
    return total


def energy(cfg: SiteConfig, p: ToyParams) -> float:
    """Total energy of one configuration."""
    return float(energy_array(cfg.values, p))


def local_energies(values: np.ndarray, p: ToyParams) -> np.ndarray:
    """
    Energy of the terms touching each site, for each of the three states.

    Returns:
        np.ndarray: Shape ``(3,) + values.shape``; entry ``[k, site]`` is the
            local energy with ``site`` set to ``k`` and all others unchanged
    """
    zero = values == 0
    zero_neighbours = np.zeros(values.shape, dtype=np.int64)
    for ax in range(p.d):
        zero_neighbours += np.roll(zero, 1, axis=ax)
        zero_neighbours += np.roll(zero, -1, axis=ax)
    other_neighbours = 2 * p.d - zero_neighbours

    as_zero = -p.J * zero_neighbours + p.h
    if p.lambda_e:
        closed = np.zeros(values.shape, dtype=np.int64)
        for mu, nu in _plaquette_axes(p.d):
            for corner in product((0, 1), repeat=2):
                others = np.ones(values.shape, dtype=bool)
                for offset in product((0, 1), repeat=2):
                    if offset == corner:
                        continue
                    shift = (corner[0] - offset[0], corner[1] - offset[1])
                    others &= np.roll(zero, shift, axis=(mu, nu))
                closed += others
        as_zero = as_zero - p.lambda_e * closed
    as_other = -p.J * other_neighbours.astype(float)
    return np.stack([as_zero.astype(float), as_other, as_other])


def energy_change(cfg: SiteConfig, site: Tuple[int, ...], new_value: int, p: ToyParams) -> float:
    """Energy difference of setting one site to ``new_value``."""
    local = local_energies(cfg.values, p)
    return float(local[(new_value,) + tuple(site)] - local[(int(cfg.values[site]),) + tuple(site)])


def all_configurations(p: ToyParams) -> np.ndarray:
    if p.n_sites > MAX_ENUMERATION_SITES:
        raise ValidationError(f"{p.n_sites} sites exceed the enumeration limit "
                              f"of {MAX_ENUMERATION_SITES}")
    grid = np.array(list(product(range(TOY_STATES), repeat=p.n_sites)), dtype=np.int8)
    return grid.reshape((-1,) + (p.L,) * p.d)


def ground_energy_per_site(p: ToyParams, phase: int) -> float:
    """Energy per site of the uniform 0 state (``phase=0``) or {1,2} state."""
    if phase == 0:
        return -p.J * p.d + p.h - p.lambda_e * comb(p.d, 2)
    return -p.J * p.d
