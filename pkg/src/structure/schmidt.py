"""
Operator-Schmidt decomposition of a bipartite operator.
"""

from typing import Dict, List, Tuple, Union

import numpy as np

from src.constants import SCHMIDT_CUTOFF
from src.errors import ValidationError
from src.structure.matrices import DenseOperator


def operator_schmidt(h_ab: Union[DenseOperator, np.ndarray],
                     dims: Tuple[int, int] = None) -> List[Tuple[np.ndarray, np.ndarray]]:
    """
    Write ``H_ab = sum_g O_a(g) (x) O_b(g)`` with orthonormal ``O_b(g)``.

    The realigned matrix ``R[(i,k),(j,l)] = H[(i,j),(k,l)]`` is factored by
    SVD; singular values are absorbed into the region-a factors.

    Args:
        h_ab: Operator on ``a (x) b``
        dims: ``(dim_a, dim_b)``; taken from ``h_ab.dims`` when omitted

    Returns:
        list: ``(O_a, O_b)`` pairs with nonzero weight, largest first
    """
    if isinstance(h_ab, DenseOperator):
        dims = dims or h_ab.dims
        matrix = h_ab.matrix
    else:
        matrix = np.asarray(h_ab, dtype=complex)
    if dims is None or len(dims) != 2:
        raise ValidationError("operator_schmidt needs bipartite dims (dim_a, dim_b)")
    da, db = dims
    if matrix.shape != (da * db, da * db):
        raise ValidationError(f"matrix shape {matrix.shape} does not match dims {dims}")
    realigned = matrix.reshape(da, db, da, db).transpose(0, 2, 1, 3).reshape(da * da, db * db)
    u, s, vh = np.linalg.svd(realigned, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return []
    keep = s > SCHMIDT_CUTOFF * max(1.0, s[0])
    return [(s[g] * u[:, g].reshape(da, da), vh[g].reshape(db, db))
            for g in np.flatnonzero(keep)]


def recompose(terms: List[Tuple[np.ndarray, np.ndarray]], dims: Tuple[int, int]) -> np.ndarray:
    da, db = dims
    total = np.zeros((da * db, da * db), dtype=complex)
    for oa, ob in terms:
        total += np.kron(oa, ob)
    return total


def couplings_to_algebras(couplings: Dict[str, DenseOperator]) -> Dict[str, List[np.ndarray]]:
    """
    Region-a factors of each coupling ``H_{a,b}``, split into Hermitian parts.

    Each coupling must list region ``a`` first in its dims.
    """
    algebras = {}
    for neighbour, h_ab in couplings.items():
        generators = []
        for oa, _ in operator_schmidt(h_ab):
            for part in ((oa + oa.conj().T) / 2, (oa - oa.conj().T) / 2j):
                if np.linalg.norm(part) > SCHMIDT_CUTOFF:
                    generators.append(part)
        algebras[neighbour] = generators
    return algebras
