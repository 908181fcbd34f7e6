"""
Exact Pauli-group algebra.
"""

from .operators import (Pauli, mul, product, commutes, conjugate_by_rotation,
                        rotation_generator, popcount, bits_of, mask_of, to_words, bit,
                        lowest_bit)
from .group import PauliGroup, IncrementalEchelon, group_rank, member, gf2_rank

__all__ = [
    'Pauli',
    'mul',
    'product',
    'commutes',
    'conjugate_by_rotation',
    'rotation_generator',
    'popcount',
    'bits_of',
    'mask_of',
    'to_words',
    'bit',
    'lowest_bit',
    'PauliGroup',
    'IncrementalEchelon',
    'group_rank',
    'member',
    'gf2_rank',
]
