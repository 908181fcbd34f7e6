"""
Periodic hypercubic cell complexes.

A k-cell is a base vertex plus a sorted tuple of k directions; it spans
the unit k-cube ``v + sum_{mu in D} t_mu e_mu``. Cells are enumerated
row-major over the base vertex coordinates, then by the index of the
direction tuple in ``itertools.combinations(range(d), k)`` order.
"""

from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Dict, FrozenSet, List, Sequence, Tuple

import networkx as nx

from src.constants import QUBIT_DIMENSION, SUPPORTED_DIMENSIONS
from src.errors import GeometryError

Coords = Tuple[int, ...]


class Lattice:
    """Periodic ``L**d`` cell complex with qubits on ``qubit_dim``-cells."""

    def __init__(self, d: int, L: int):
        if d not in SUPPORTED_DIMENSIONS:
            raise GeometryError(f"unsupported dimension {d}; expected one of {SUPPORTED_DIMENSIONS}")
        if L < 2:
            raise GeometryError(f"linear size must be at least 2, got {L}")
        self.d = d
        self.L = L
        self.qubit_dim = QUBIT_DIMENSION[d]
        self.n_vertices = L ** d
        self._directions = {k: list(combinations(range(d), k)) for k in range(d + 1)}
        self._direction_index = {k: {dirs: i for i, dirs in enumerate(self._directions[k])}
                                 for k in range(d + 1)}

    def __repr__(self):
        return f"Lattice(d={self.d}, L={self.L})"

    def descriptor(self) -> Dict[str, int]:
        """Serializable ``{d, L, qubit_dim}``."""
        return {'d': self.d, 'L': self.L, 'qubit_dim': self.qubit_dim}

    # Vertices

    def vertex_index(self, coords: Sequence[int]) -> int:
        index = 0
        for x in coords:
            index = index * self.L + (x % self.L)
        return index

    def vertex_coords(self, v: int) -> Coords:
        coords = []
        for _ in range(self.d):
            coords.append(v % self.L)
            v //= self.L
        return tuple(reversed(coords))

    def shift(self, v: int, mu: int, step: int = 1) -> int:
        coords = list(self.vertex_coords(v))
        coords[mu] += step
        return self.vertex_index(coords)

    def vertices(self) -> range:
        return range(self.n_vertices)

    # Cells

    def n_cells(self, k: int) -> int:
        return comb(self.d, k) * self.n_vertices

    @property
    def n_qubits(self) -> int:
        return self.n_cells(self.qubit_dim)

    def cell_index(self, v: int, directions: Sequence[int]) -> int:
        dirs = tuple(sorted(directions))
        k = len(dirs)
        return v * comb(self.d, k) + self._direction_index[k][dirs]

    def cell(self, k: int, index: int) -> Tuple[int, Tuple[int, ...]]:
        """``(base vertex, directions)`` of a k-cell."""
        per_vertex = comb(self.d, k)
        return index // per_vertex, self._directions[k][index % per_vertex]

    def cells(self, k: int) -> range:
        return range(self.n_cells(k))

    def boundary(self, k: int, index: int) -> List[int]:
        """(k-1)-cells on the boundary of a k-cell."""
        if k == 0:
            return []
        v, dirs = self.cell(k, index)
        faces = []
        for mu in dirs:
            rest = tuple(x for x in dirs if x != mu)
            faces.append(self.cell_index(v, rest))
            faces.append(self.cell_index(self.shift(v, mu), rest))
        return faces

    def coboundary(self, k: int, index: int) -> List[int]:
        """(k+1)-cells having the given k-cell on their boundary."""
        if k == self.d:
            return []
        v, dirs = self.cell(k, index)
        cofaces = []
        for mu in range(self.d):
            if mu in dirs:
                continue
            bigger = tuple(sorted(dirs + (mu,)))
            cofaces.append(self.cell_index(v, bigger))
            cofaces.append(self.cell_index(self.shift(v, mu, -1), bigger))
        return cofaces

    def cell_vertices(self, k: int, index: int) -> FrozenSet[int]:
        """Corner vertices of a k-cell."""
        v, dirs = self.cell(k, index)
        base = self.vertex_coords(v)
        corners = set()
        for offsets in product((0, 1), repeat=len(dirs)):
            coords = list(base)
            for mu, step in zip(dirs, offsets):
                coords[mu] += step
            corners.add(self.vertex_index(coords))
        return frozenset(corners)

    def incident_qubits(self, k: int, index: int) -> FrozenSet[int]:
        """Qubit cells that contain, equal, or lie on the boundary of a k-cell."""
        q = self.qubit_dim
        current = {index}
        level = k
        while level < q:
            current = {c for cell in current for c in self.coboundary(level, cell)}
            level += 1
        while level > q:
            current = {c for cell in current for c in self.boundary(level, cell)}
            level -= 1
        return frozenset(current)

    def qubit_vertices(self, qubit: int) -> FrozenSet[int]:
        return self.cell_vertices(self.qubit_dim, qubit)

    # Edges (d = 2, 3 qubits and surface bookkeeping)

    def edge(self, u: int, mu: int) -> int:
        """Edge from ``u`` in the ``+mu`` direction."""
        return self.cell_index(u, (mu,))

    def edge_endpoints(self, e: int) -> Tuple[int, int]:
        v, (mu,) = self.cell(1, e)
        return v, self.shift(v, mu)

    def vertex_edges(self, v: int) -> List[int]:
        """The 2d edges meeting vertex ``v``."""
        return self.coboundary(0, v)

    # Graphs and metric

    @lru_cache(maxsize=None)
    def graph(self) -> nx.Graph:
        """Periodic vertex graph."""
        g = nx.Graph()
        g.add_nodes_from(self.vertices())
        for e in self.cells(1):
            u, w = self.edge_endpoints(e)
            g.add_edge(u, w)
        return g

    @lru_cache(maxsize=None)
    def qubit_graph(self) -> nx.Graph:
        """Qubit cells, adjacent when they share a (qubit_dim - 1)-cell."""
        g = nx.Graph()
        g.add_nodes_from(range(self.n_qubits))
        for c in self.cells(self.qubit_dim - 1):
            around = self.coboundary(self.qubit_dim - 1, c)
            for a, b in combinations(around, 2):
                if a != b:
                    g.add_edge(a, b)
        return g

    def ball(self, center: Tuple[int, int], r: int) -> FrozenSet[int]:
        """
        Qubits within qubit-graph distance ``r`` of the qubits incident to a cell.

        Args:
            center: ``(k, cell index)``; holes use vertices, ``(0, v)``
            r (int): Radius, ``r >= 0``

        Returns:
            frozenset: Qubit ids in the ball
        """
        if r < 0:
            raise GeometryError(f"radius must be nonnegative, got {r}")
        sources = self.incident_qubits(*center)
        lengths = nx.multi_source_dijkstra_path_length(self.qubit_graph(), set(sources), cutoff=r)
        return frozenset(lengths)

    def support_diameter(self, support) -> int:
        """Largest qubit-graph distance between two qubits of ``support``."""
        support = list(support)
        if len(support) < 2:
            return 0
        g = self.qubit_graph()
        targets = set(support)
        best = 0
        for q in support:
            cutoff = 1
            while True:
                lengths = nx.single_source_shortest_path_length(g, q, cutoff=cutoff)
                if targets.issubset(lengths):
                    best = max(best, max(lengths[t] for t in targets))
                    break
                cutoff *= 2
        return best

    def circular_extent(self, vertices) -> int:
        """
        Largest per-axis extent of a vertex set on the torus.

        The extent along an axis is the number of sites in the shortest
        periodic arc covering all occupied coordinates.
        """
        vertices = list(vertices)
        if not vertices:
            return 0
        coords = [self.vertex_coords(v) for v in vertices]
        extent = 0
        for mu in range(self.d):
            occupied = sorted({c[mu] for c in coords})
            gaps = [(occupied[(i + 1) % len(occupied)] - occupied[i]) % self.L
                    for i in range(len(occupied))]
            if len(occupied) == 1:
                arc = 1
            else:
                arc = self.L - max(gaps) + 1
            extent = max(extent, arc)
        return extent

    def covers_period(self, vertices) -> bool:
        """True if the set occupies every coordinate along some axis."""
        coords = [self.vertex_coords(v) for v in vertices]
        return any(len({c[mu] for c in coords}) == self.L for mu in range(self.d))


def build(d: int, L: int) -> Lattice:
    """Build the periodic lattice of dimension ``d`` and size ``L``."""
    return Lattice(d, L)
