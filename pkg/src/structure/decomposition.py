"""
Simultaneous block decomposition of commuting interaction algebras.

For each neighbour ``b`` the *-algebra generated by its Hermitian
generators is split into isotypic components: a random Hermitian element
of the algebra is diagonalized, its eigenspaces are linked whenever some
generator has a nonzero block between them, and the connected components
are the components. A component with ``d`` eigenspaces of dimension ``m``
is ``M_d (x) I_m``. Joint blocks are the nonzero products of component
projectors across neighbours.

Each component also carries a frame: an isometry from ``C^d (x) C^m``
onto its range under which the algebra acts as ``a (x) I_m``. The
eigenspaces are aligned by the unitary parts of generator blocks along a
spanning tree of the link graph. Each joint block keeps the frame of
every neighbour's factor, restricted to the block.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy.stats import unitary_group

from src.constants import DECOMPOSITION_ATTEMPTS, EIGENVALUE_TOLERANCE, RECONSTRUCTION_TOLERANCE
from src.errors import DecompositionError, ValidationError
from src.structure.matrices import random_hermitian
from src.utils.debug_logger import get_logger

logger = get_logger(__name__)


@dataclass
class AlgebraBlock:
    """One summand ``H_a^alpha = (x)_b H_{a->b}^alpha (x) H_{a,a}^alpha``."""
    projector: np.ndarray
    factor_dims: Dict[str, int]
    inner_dim: int
    frames: Dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return int(round(np.trace(self.projector).real))

    def factor_frame(self, neighbour: Optional[str]) -> Tuple[np.ndarray, int]:
        """
        Isometry onto the block, columns ordered ``(factor, rest)``, and the factor dimension.

        A neighbour without a frame sees the whole block as its factor.
        """
        if neighbour is not None and neighbour in self.frames:
            return self.frames[neighbour], self.factor_dims[neighbour]
        values, vectors = np.linalg.eigh(self.projector)
        return vectors[:, values > 0.5], self.dimension

    def signature(self) -> Tuple:
        return (self.dimension, tuple(sorted(self.factor_dims.items())), self.inner_dim)


@dataclass
class BlockDecomposition:
    dim: int
    blocks: List[AlgebraBlock] = field(default_factory=list)

    def signatures(self) -> List[Tuple]:
        return sorted(b.signature() for b in self.blocks)

    def completeness_residual(self) -> float:
        total = sum((b.projector for b in self.blocks), np.zeros((self.dim, self.dim), dtype=complex))
        return float(np.linalg.norm(total - np.eye(self.dim), 2))

    def to_report(self) -> Dict:
        return {
            'dim': self.dim,
            'blocks': [{'dimension': b.dimension, 'factor_dims': b.factor_dims,
                        'inner_dim': b.inner_dim} for b in self.blocks],
            'completeness_residual': self.completeness_residual(),
        }


def _scale(matrices: Sequence[np.ndarray]) -> float:
    return max((np.linalg.norm(m, 2) for m in matrices), default=1.0) or 1.0


def check_commuting(generators: Dict[str, List[np.ndarray]], tol: float = RECONSTRUCTION_TOLERANCE):
    names = list(generators)
    scale = _scale([g for gs in generators.values() for g in gs])
    for i, b in enumerate(names):
        for c in names[i + 1:]:
            for g in generators[b]:
                for h in generators[c]:
                    if np.linalg.norm(g @ h - h @ g, 2) > tol * scale ** 2:
                        raise ValidationError(f"algebras of neighbours {b} and {c} do not commute")


def _random_element(gens: List[np.ndarray], rng: np.random.Generator) -> np.ndarray:
    # complex-weighted words up to length three
    dim = gens[0].shape[0]
    w = np.zeros((dim, dim), dtype=complex)
    for g in gens:
        w += _coefficient(rng) * g
    for g in gens:
        for h in gens:
            w += _coefficient(rng) * (g @ h)
    for _ in range(len(gens)):
        i, j, k = rng.integers(len(gens), size=3)
        w += _coefficient(rng) * (gens[i] @ gens[j] @ gens[k])
    return (w + w.conj().T) / 2


def _coefficient(rng: np.random.Generator) -> complex:
    return complex(rng.normal(), rng.normal())


def _eigenspaces(x: np.ndarray, tol: float) -> List[np.ndarray]:
    values, vectors = np.linalg.eigh(x)
    scale = max(1.0, float(np.max(np.abs(values))))
    spaces, start = [], 0
    for k in range(1, len(values) + 1):
        if k == len(values) or values[k] - values[k - 1] > tol * scale:
            spaces.append(vectors[:, start:k])
            start = k
    return spaces


def _unitary_part(m: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(m)
    return u @ vh


def _aligned_frame(spaces: List[np.ndarray], members: List[int], links: nx.Graph,
                   gens: List[np.ndarray]) -> np.ndarray:
    """Columns ``(j, mu)``: eigenspace ``j`` rotated so the algebra acts as ``a (x) I_m``."""
    root = members[0]
    aligned = {root: spaces[root]}
    for parent, child in nx.bfs_edges(links.subgraph(members), root):
        blocks = [spaces[child].conj().T @ g @ aligned[parent] for g in gens]
        strongest = max(blocks, key=np.linalg.norm)
        aligned[child] = spaces[child] @ _unitary_part(strongest)
    return np.hstack([aligned[k] for k in members])


def isotypic_components(gens: List[np.ndarray], dim: int, rng: np.random.Generator,
                        tol: float = EIGENVALUE_TOLERANCE) -> List[Tuple[np.ndarray, int, np.ndarray]]:
    """
    ``(projector, d, frame)`` per isotypic component of the algebra generated by ``gens``.

    Raises:
        DecompositionError: if eigenspaces within a component differ in size
    """
    if not gens:
        return [(np.eye(dim, dtype=complex), 1, np.eye(dim, dtype=complex))]
    spaces = _eigenspaces(_random_element(gens, rng), tol)
    links = nx.Graph()
    links.add_nodes_from(range(len(spaces)))
    scale = _scale(gens)
    for i, vi in enumerate(spaces):
        for j in range(i + 1, len(spaces)):
            vj = spaces[j]
            if any(np.linalg.norm(vi.conj().T @ g @ vj) > 1e3 * tol * scale for g in gens):
                links.add_edge(i, j)
    components = []
    for members in sorted(nx.connected_components(links), key=min):
        sizes = {spaces[k].shape[1] for k in members}
        if len(sizes) != 1:
            raise DecompositionError(f"eigenspace sizes {sorted(sizes)} differ inside one component")
        frame = _aligned_frame(spaces, sorted(members), links, gens)
        components.append((frame @ frame.conj().T, len(members), frame))
    return components


def _restrict_frame(frame: np.ndarray, d: int, projector: np.ndarray) -> np.ndarray:
    """Frame of a component cut down to a block projector that commutes with its algebra."""
    m = frame.shape[1] // d
    first = frame[:, :m]
    values, vectors = np.linalg.eigh(first.conj().T @ projector @ first)
    kept = vectors[:, values > 0.5]
    return frame @ np.kron(np.eye(d), kept)


def _verify(decomp: BlockDecomposition, generators: Dict[str, List[np.ndarray]],
            tol: float = RECONSTRUCTION_TOLERANCE):
    scale = _scale([g for gs in generators.values() for g in gs])
    if decomp.completeness_residual() > tol:
        raise DecompositionError("block projectors are not complete")
    for block in decomp.blocks:
        p = block.projector
        if np.linalg.norm(p @ p - p, 2) > tol:
            raise DecompositionError("block projector is not idempotent")
        for gs in generators.values():
            for g in gs:
                if np.linalg.norm(p @ g - g @ p, 2) > tol * scale:
                    raise DecompositionError("block projector does not commute with a generator")
        for b, frame in block.frames.items():
            if frame.shape[1] != block.dimension:
                raise DecompositionError(f"frame of {b} spans {frame.shape[1]} of {block.dimension} dimensions")
            if np.linalg.norm(frame @ frame.conj().T - p, 2) > tol:
                raise DecompositionError(f"frame of {b} does not span its block")


def _decompose_once(generators: Dict[str, List[np.ndarray]], dim: int,
                    rng: np.random.Generator) -> BlockDecomposition:
    names = sorted(generators)
    per_neighbour = {b: isotypic_components(generators[b], dim, rng) for b in names}
    decomp = BlockDecomposition(dim)
    for choice in product(*(range(len(per_neighbour[b])) for b in names)):
        projector = np.eye(dim, dtype=complex)
        factor_dims = {}
        for b, k in zip(names, choice):
            component, d, _ = per_neighbour[b][k]
            projector = projector @ component
            factor_dims[b] = d
        size = np.trace(projector).real
        if size < 0.5:
            continue
        block_dim = int(round(size))
        factors = int(np.prod(list(factor_dims.values()))) if factor_dims else 1
        if block_dim % factors:
            raise DecompositionError(f"block of dimension {block_dim} does not factor by {factors}")
        projector = (projector + projector.conj().T) / 2
        frames = {}
        for b, k in zip(names, choice):
            _, d, frame = per_neighbour[b][k]
            frames[b] = _restrict_frame(frame, d, projector)
        decomp.blocks.append(AlgebraBlock(projector, factor_dims, block_dim // factors, frames))
    _verify(decomp, generators)
    return decomp


def decompose_region(generators: Dict[str, List[np.ndarray]], dim: Optional[int] = None,
                     seed: int = 0, attempts: int = DECOMPOSITION_ATTEMPTS) -> BlockDecomposition:
    """
    Block decomposition of a region's Hilbert space under its neighbours' algebras.

    Args:
        generators: Neighbour label -> generators of the algebra on this region
        dim: Region dimension, needed only when no generator is given
        seed: Seed for the random algebra elements
        attempts: Retries with fresh random elements before giving up

    Returns:
        BlockDecomposition: Blocks with per-neighbour factor dimensions

    Raises:
        ValidationError: if algebras of different neighbours do not commute
        DecompositionError: if no attempt yields a verified decomposition
    """
    hermitian = {}
    for b, gs in generators.items():
        parts = []
        for g in gs:
            g = np.asarray(g, dtype=complex)
            for part in ((g + g.conj().T) / 2, (g - g.conj().T) / 2j):
                if np.linalg.norm(part) > 1e-12:
                    parts.append(part)
        hermitian[b] = parts
    dims = {g.shape[0] for gs in hermitian.values() for g in gs}
    if dim is not None:
        dims.add(dim)
    if len(dims) != 1:
        raise ValidationError(f"generators disagree on the region dimension: {sorted(dims)}")
    dim = dims.pop()
    check_commuting(hermitian)

    rng = np.random.default_rng(seed)
    last_error = None
    for attempt in range(attempts):
        try:
            return _decompose_once(hermitian, dim, rng)
        except DecompositionError as exc:
            last_error = exc
            logger.debug(f"decomposition attempt {attempt + 1} failed: {exc}")
    raise DecompositionError(f"no verified decomposition after {attempts} attempts: {last_error}")


def _factor_part(m: np.ndarray, da: int, ra: int, db: int, rb: int) -> np.ndarray:
    """Replace the rest factors of ``m`` on ``(da, ra) (x) (db, rb)`` by normalized identities."""
    t = m.reshape(da, ra, db, rb, da, ra, db, rb)
    k = np.einsum('iajbkalb->ijkl', t) / (ra * rb)
    rebuilt = np.einsum('ijkl,ac,be->iajbkcle', k, np.eye(ra), np.eye(rb))
    return rebuilt.reshape(m.shape)


def decomp2_residual(h_ab: np.ndarray, decomp_a: BlockDecomposition, decomp_b: BlockDecomposition,
                     toward_b: Optional[str] = None, toward_a: Optional[str] = None) -> float:
    """
    Distance of ``H_ab`` from its reconstruction out of factor operators.

    Each pair of blocks ``(alpha, beta)`` contributes ``V (h_ab^{alpha beta} (x) I) V^dagger``
    where ``V`` is the product of the two factor frames and ``h_ab^{alpha beta}``
    acts on ``H_{a->b}^alpha (x) H_{b->a}^beta`` only. Cross-block parts of
    ``H_ab`` and any action on the rest factors are counted as residual.

    Args:
        h_ab: Interaction on region ``a`` (x) region ``b``
        decomp_a: Decomposition of region ``a``
        decomp_b: Decomposition of region ``b``
        toward_b: Neighbour label of ``b`` in ``decomp_a``; None treats whole blocks as factors
        toward_a: Neighbour label of ``a`` in ``decomp_b``

    Returns:
        float: Operator 2-norm of the difference
    """
    h_ab = np.asarray(h_ab, dtype=complex)
    if h_ab.shape != (decomp_a.dim * decomp_b.dim,) * 2:
        raise ValidationError(f"H_ab of shape {h_ab.shape} does not act on {decomp_a.dim} x {decomp_b.dim}")
    total = np.zeros_like(h_ab)
    for block_a in decomp_a.blocks:
        va, da = block_a.factor_frame(toward_b)
        for block_b in decomp_b.blocks:
            vb, db = block_b.factor_frame(toward_a)
            v = np.kron(va, vb)
            inner = v.conj().T @ h_ab @ v
            factor = _factor_part(inner, da, va.shape[1] // da, db, vb.shape[1] // db)
            total += v @ factor @ v.conj().T
    return float(np.linalg.norm(h_ab - total, 2))


@dataclass
class BlockInstance:
    """Scrambled block-tensor instance with its construction record."""
    generators: Dict[str, List[np.ndarray]]
    layout: List[Dict]
    dim: int

    def expected_signatures(self) -> List[Tuple]:
        result = []
        for block in self.layout:
            factors = block['factor_dims']
            size = int(np.prod(list(factors.values()))) * block['inner_dim']
            result.append((size, tuple(sorted(factors.items())), block['inner_dim']))
        return sorted(result)


def _embed(factor_dims: List[int], position: int, op: np.ndarray, inner_dim: int) -> np.ndarray:
    pieces = [np.eye(d) for d in factor_dims] + [np.eye(inner_dim)]
    pieces[position] = op
    result = np.ones((1, 1), dtype=complex)
    for piece in pieces:
        result = np.kron(result, piece)
    return result


def random_block_instance(layout: List[Dict], rng: np.random.Generator,
                          n_generators: int = 3, scramble: bool = True) -> BlockInstance:
    """
    Direct sum of tensor products with random Hermitian factor operators.

    Args:
        layout: One dict per block: ``{'factor_dims': {b: d}, 'inner_dim': m}``,
            every block listing the same neighbours
        rng: Random generator
        n_generators: Generators per neighbour
        scramble: Conjugate everything by a Haar-random unitary

    Returns:
        BlockInstance: Generators per neighbour on the full space
    """
    names = sorted(layout[0]['factor_dims'])
    sizes = [int(np.prod([blk['factor_dims'][b] for b in names])) * blk['inner_dim'] for blk in layout]
    dim = sum(sizes)
    generators = {b: [] for b in names}
    for b_pos, b in enumerate(names):
        for _ in range(n_generators):
            full = np.zeros((dim, dim), dtype=complex)
            offset = 0
            for blk, size in zip(layout, sizes):
                dims = [blk['factor_dims'][x] for x in names]
                op = random_hermitian(dims[b_pos], rng)
                full[offset:offset + size, offset:offset + size] = _embed(dims, b_pos, op, blk['inner_dim'])
                offset += size
            generators[b].append(full)
    if scramble:
        v = unitary_group.rvs(dim, random_state=rng) if dim > 1 else np.eye(1)
        generators = {b: [v @ g @ v.conj().T for g in gs] for b, gs in generators.items()}
    return BlockInstance(generators, layout, dim)
