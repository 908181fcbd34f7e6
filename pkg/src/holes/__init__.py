"""
Holes, block validity and the block-size bound.
"""

from src.lattice.geometry import Hole
from .detection import (BlockStatus, ValidityReport, HoleFinder, find_holes, classify,
                        plant_holes, is_hole, default_radius)
from .bounds import (bound_per_block, log_bound_per_block, solve_l_beta, literal_l_beta,
                     InvalidRate, invalid_rate)

__all__ = [
    'Hole',
    'BlockStatus',
    'ValidityReport',
    'HoleFinder',
    'find_holes',
    'classify',
    'plant_holes',
    'is_hole',
    'default_radius',
    'bound_per_block',
    'log_bound_per_block',
    'solve_l_beta',
    'literal_l_beta',
    'InvalidRate',
    'invalid_rate',
]
