"""
Partition of a 2D lattice into regions separated by dashed paths.

Every block contributes one anchor vertex inside its hole. Anchors of
blocks adjacent along an axis are joined by a dashed lattice path that
runs inside the first block's strip, turns on the wall between the two
blocks and finishes inside the second. Removing hole interiors and
dashed vertices leaves the regions; qubits inherit the label of an
adjacent region vertex, or of the nearest region otherwise.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Set

import networkx as nx
import numpy as np

from src.errors import GeometryError, RegionPartitionError, ValidationError
from src.lattice.cells import Lattice
from src.lattice.geometry import Hole, blocks, block_of_vertex, check_block_size
from src.lattice.hamiltonian import HamiltonianSpec
from src.utils.debug_logger import get_logger

logger = get_logger(__name__)

HOLE_LABEL = -1


@dataclass
class RegionPartition:
    lattice: Lattice
    block_size: int
    anchors: Dict[int, int]
    dashed: FrozenSet[int]
    removed: FrozenSet[int]
    vertex_labels: Dict[int, int]
    qubit_labels: np.ndarray
    adjacency: nx.Graph = field(default_factory=nx.Graph)

    @property
    def n_regions(self) -> int:
        return self.adjacency.number_of_nodes()

    def regions_of(self, support) -> Set[int]:
        return {int(self.qubit_labels[q]) for q in support} - {HOLE_LABEL}

    def check(self, h: HamiltonianSpec):
        """
        Every term touches at most two regions, and two only if adjacent.

        Raises:
            RegionPartitionError: naming the first offending term
        """
        for term in h.terms:
            touched = sorted(self.regions_of(term.support))
            if len(touched) > 2:
                raise RegionPartitionError(f"term {term.index} touches regions {touched}")
            if len(touched) == 2 and not self.adjacency.has_edge(*touched):
                raise RegionPartitionError(
                    f"term {term.index} touches non-adjacent regions {touched}")

    def to_rows(self) -> List[Dict]:
        return [{'qubit': q, 'region': int(label)} for q, label in enumerate(self.qubit_labels)]


def _anchor(lat: Lattice, hole: Hole, block_size: int, block_index: int) -> int:
    inside = [v for v in hole.interior(lat)
              if block_of_vertex(lat, block_size, v) == block_index
              and all(x % block_size for x in lat.vertex_coords(v))]
    if not inside:
        raise ValidationError(f"hole at vertex {hole.center} has no interior vertex "
                              f"off the walls of block {block_index}")
    return min(inside)


def _walk(lat: Lattice, start: int, mu: int, steps: int) -> List[int]:
    sign = 1 if steps >= 0 else -1
    path, v = [], start
    for _ in range(abs(steps)):
        v = lat.shift(v, mu, sign)
        path.append(v)
    return path


def dashed_path(lat: Lattice, a: int, b: int, mu: int, block_size: int) -> List[int]:
    """
    Path from anchor ``a`` to the anchor ``b`` of the next block along ``mu``.

    The path moves along ``+mu`` to the wall at the end of ``a``'s block,
    along the other axis to ``b``'s coordinate, then along ``+mu`` to ``b``.
    With a single block per axis ``b == a`` and the path is a full loop.
    """
    nu = 1 - mu
    ca, cb = lat.vertex_coords(a), lat.vertex_coords(b)
    wall = (ca[mu] // block_size + 1) * block_size
    path = [a]
    path += _walk(lat, path[-1], mu, wall - ca[mu])
    path += _walk(lat, path[-1], nu, cb[nu] - ca[nu])
    path += _walk(lat, path[-1], mu, (cb[mu] - wall) % lat.L)
    if path[-1] != b:
        raise RegionPartitionError(f"dashed path from {a} ended at {path[-1]}, not {b}")
    return path


def _nearest_labels(lat: Lattice, vertex_labels: Dict[int, int]) -> Dict[int, tuple]:
    """``vertex -> (distance, label)`` of the nearest region vertex, ties to the smaller label."""
    g = lat.graph()
    best = {v: (0, label) for v, label in vertex_labels.items()}
    frontier = sorted(best)
    dist = 0
    while frontier:
        dist += 1
        reached = {}
        for v in frontier:
            label = best[v][1]
            for w in g.neighbors(v):
                if w in best:
                    continue
                if w not in reached or label < reached[w]:
                    reached[w] = label
        for w, label in reached.items():
            best[w] = (dist, label)
        frontier = sorted(reached)
    return best


def region_partition(lat: Lattice, holes: Dict[int, Hole], block_size: int,
                     h: Optional[HamiltonianSpec] = None) -> RegionPartition:
    """
    Cut a 2D lattice into regions with dashed paths between per-block holes.

    Args:
        lat: 2D lattice
        holes: Block index -> chosen hole, one for every block
        block_size: Linear block size ``l``
        h: Active Hamiltonian to check the partition against

    Returns:
        RegionPartition: Labels, dashed vertices and the region adjacency graph

    Raises:
        GeometryError: for d != 2
        ValidationError: for missing holes
        RegionPartitionError: if a term of ``h`` touches too many regions
    """
    if lat.d != 2:
        raise GeometryError(f"region partition is defined for d = 2, got d = {lat.d}")
    check_block_size(lat, block_size)
    all_blocks = blocks(lat, block_size)
    missing = [b.index for b in all_blocks if b.index not in holes]
    if missing:
        raise ValidationError(f"blocks {missing} have no hole")

    anchors = {b.index: _anchor(lat, holes[b.index], block_size, b.index) for b in all_blocks}
    per_axis = lat.L // block_size
    dashed: Set[int] = set()
    for block in all_blocks:
        key = tuple(o // block_size for o in block.origin)
        for mu in range(2):
            nxt = list(key)
            nxt[mu] = (nxt[mu] + 1) % per_axis
            other = nxt[0] * per_axis + nxt[1]
            dashed.update(dashed_path(lat, anchors[block.index], anchors[other], mu, block_size))

    hole_vertices = set()
    for hole in holes.values():
        hole_vertices |= hole.interior(lat)
    removed = hole_vertices | dashed

    rest = lat.graph().subgraph(v for v in lat.vertices() if v not in removed)
    components = sorted((sorted(c) for c in nx.connected_components(rest)), key=lambda c: c[0])
    vertex_labels = {v: label for label, comp in enumerate(components) for v in comp}

    nearest = _nearest_labels(lat, vertex_labels)
    qubit_labels = np.full(lat.n_qubits, HOLE_LABEL, dtype=int)
    for e in lat.cells(1):
        u, w = lat.edge_endpoints(e)
        if u in vertex_labels or w in vertex_labels:
            qubit_labels[e] = vertex_labels.get(u, vertex_labels.get(w))
        elif u in hole_vertices and w in hole_vertices:
            continue
        else:
            options = [nearest[v] for v in (u, w) if v in nearest]
            if options:
                qubit_labels[e] = min(options)[1]

    adjacency = nx.Graph()
    adjacency.add_nodes_from(range(len(components)))
    g = lat.graph()
    for v in dashed - hole_vertices:
        around = {vertex_labels[w] for w in g.neighbors(v) if w in vertex_labels}
        around |= {int(qubit_labels[e]) for e in lat.vertex_edges(v)} - {HOLE_LABEL}
        adjacency.add_edges_from(combinations(sorted(around), 2))

    partition = RegionPartition(lat, block_size, anchors, frozenset(dashed), frozenset(removed),
                                vertex_labels, qubit_labels, adjacency)
    logger.debug(f"region partition: {partition.n_regions} regions, {len(dashed)} dashed vertices")
    if h is not None:
        partition.check(h)
    return partition
