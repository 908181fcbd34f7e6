"""
Dense algebraic structure of 2D commuting Hamiltonians.
"""

from .matrices import DenseOperator, random_hermitian, save_matrix, load_matrix
from .schmidt import operator_schmidt, recompose, couplings_to_algebras
from .decomposition import (AlgebraBlock, BlockDecomposition, BlockInstance, decompose_region,
                            decomp2_residual, random_block_instance)
from .regions import RegionPartition, region_partition, dashed_path, HOLE_LABEL
from .degeneracy import (DegeneracyReport, support_sets, stabilizer_degeneracy_eps,
                         dense_degeneracy_eps, topological_degeneracy_eps)

__all__ = [
    'DenseOperator',
    'random_hermitian',
    'save_matrix',
    'load_matrix',
    'operator_schmidt',
    'recompose',
    'couplings_to_algebras',
    'AlgebraBlock',
    'BlockDecomposition',
    'BlockInstance',
    'decompose_region',
    'decomp2_residual',
    'random_block_instance',
    'RegionPartition',
    'region_partition',
    'dashed_path',
    'HOLE_LABEL',
    'DegeneracyReport',
    'support_sets',
    'stabilizer_degeneracy_eps',
    'dense_degeneracy_eps',
    'topological_degeneracy_eps',
]
