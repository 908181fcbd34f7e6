"""
Settings data models using dataclasses for type safety and validation.
"""

from dataclasses import asdict, dataclass, field, fields
from typing import Dict, List, Optional

from src.constants import (DEFAULT_BETA, DEFAULT_BURN_IN, DEFAULT_L_BETA_VARIANT, DEFAULT_SAMPLES,
                           DEFAULT_SEED, DEFAULT_THINNING, MAX_SUPPORT_SIZE)
from src.thermal.ensemble import EnsembleParams
from src.toymodel.model import ToyParams
from src.validators import (validate_beta, validate_block, validate_count, validate_dimension,
                            validate_epsilon, validate_seed, validate_size, validate_variant)


def _collect(*checks) -> List[str]:
    return [message for ok, message in checks if not ok]


class _FromDict:
    """Build a settings record from the keys of a merged settings dict."""

    @classmethod
    def from_dict(cls, data: Dict):
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in names})

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass
class LatticeSettings(_FromDict):
    """Toric code geometry and couplings."""
    d: int = 2
    L: int = 4
    lambda_a: float = 1.0
    lambda_b: float = 1.0

    def validate(self) -> List[str]:
        errors = _collect(validate_dimension(self.d), validate_size(self.L))
        if self.lambda_a <= 0 or self.lambda_b <= 0:
            errors.append("Couplings must be positive")
        return errors


@dataclass
class SamplingSettings(_FromDict):
    """Gibbs sampling schedule shared by the stabilizer subcommands."""
    beta: float = DEFAULT_BETA
    samples: int = DEFAULT_SAMPLES
    burn_in: int = DEFAULT_BURN_IN
    thinning: int = DEFAULT_THINNING
    seed: int = DEFAULT_SEED
    chains: int = 1
    exact: bool = False

    def validate(self) -> List[str]:
        return _collect(
            validate_beta(self.beta),
            validate_count(self.samples, "Samples"),
            validate_count(self.burn_in, "Burn-in", minimum=0),
            validate_count(self.thinning, "Thinning"),
            validate_seed(self.seed),
            validate_count(self.chains, "Chains"),
        )

    def to_params(self, beta: Optional[float] = None, seed: Optional[int] = None) -> EnsembleParams:
        return EnsembleParams(
            beta=self.beta if beta is None else beta,
            n_samples=self.samples,
            burn_in=self.burn_in,
            thinning=self.thinning,
            seed=self.seed if seed is None else seed,
        )


@dataclass
class HoleScanSettings(_FromDict):
    """Grid of the invalid-rate experiment."""
    L: int = 4
    betas: List[float] = field(default_factory=lambda: [0.25, 0.5, 1.0])
    blocks: List[int] = field(default_factory=lambda: [2, 4])
    radius: Optional[int] = None
    variant: str = DEFAULT_L_BETA_VARIANT
    epsilon: float = 0.1

    def validate(self) -> List[str]:
        errors = _collect(validate_variant(self.variant), validate_epsilon(self.epsilon))
        errors += _collect(*(validate_beta(b, allow_zero=False) for b in self.betas))
        errors += _collect(*(validate_block(self.L, l) for l in self.blocks))
        return errors


@dataclass
class DisentangleSettings(_FromDict):
    L: int = 6
    block: int = 3
    radius: Optional[int] = None
    plant: bool = True
    check_every_layer: bool = True
    write_circuits: bool = False

    def validate(self) -> List[str]:
        return _collect(validate_block(self.L, self.block))


@dataclass
class StructureSettings(_FromDict):
    """Construct-then-recover instances and the partition demo."""
    instances: int = 10
    max_dim: int = 64
    generators: int = 3
    partition_L: int = 8
    partition_block: int = 4
    seed: int = DEFAULT_SEED

    def validate(self) -> List[str]:
        errors = _collect(
            validate_count(self.instances, "Instances"),
            validate_count(self.max_dim, "Maximum dimension", minimum=2),
            validate_count(self.generators, "Generators"),
            validate_block(self.partition_L, self.partition_block),
            validate_seed(self.seed),
        )
        if self.max_dim > 2 ** 12:
            errors.append("Maximum dimension cannot exceed 4096")
        return errors


@dataclass
class DegeneracySettings(_FromDict):
    l_star: int = 1
    max_l_star: Optional[int] = None

    def validate(self) -> List[str]:
        errors = _collect(validate_count(self.l_star, "L*"))
        if self.max_l_star is not None and self.max_l_star < self.l_star:
            errors.append("max_l_star cannot be smaller than l_star")
        if self.max_l_star is not None and (self.max_l_star - 1) // 2 > MAX_SUPPORT_SIZE:
            errors.append("max_l_star is too large to enumerate")
        return errors

    def l_star_values(self) -> List[int]:
        top = self.l_star if self.max_l_star is None else self.max_l_star
        return list(range(self.l_star, top + 1))


@dataclass
class ToySettings(_FromDict):
    """Three-state model couplings, schedule and scan grids."""
    J: float = 1.0
    h: float = 0.5
    d: int = 2
    L: int = 4
    beta: float = 1.0
    sweeps: int = 1000
    burn_in: int = 100
    seed: int = DEFAULT_SEED
    lambda_e: float = 1.0
    temperatures: List[float] = field(default_factory=lambda: [0.5, 1.0, 1.5, 2.0])
    fields: List[float] = field(default_factory=lambda: [0.5])
    hysteresis: bool = False

    def to_params(self) -> ToyParams:
        return ToyParams(J=self.J, h=self.h, d=self.d, L=self.L, beta=self.beta,
                         sweeps=self.sweeps, burn_in=self.burn_in, seed=self.seed,
                         lambda_e=self.lambda_e)

    def validate(self) -> List[str]:
        errors = self.to_params().validate()
        if any(t <= 0 for t in self.temperatures):
            errors.append("Temperatures must be positive")
        if not self.fields:
            errors.append("At least one field value is required")
        return errors


@dataclass
class WilsonSettings(_FromDict):
    betas: List[float] = field(default_factory=lambda: [0.1, 0.5, 1.0, 5.0])
    shift: Optional[int] = None

    def validate(self) -> List[str]:
        return _collect(*(validate_beta(b) for b in self.betas))
