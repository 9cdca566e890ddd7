"""Conflicting edge pairs, the conflict graph G' and coloring verification.

Two edges conflict when some shortest path contains both. We test this with distances alone: edges ``e1`` and ``e2``
conflict iff for some orientation ``e1 = (u, v)``, ``e2 = (x, y)`` we have ``d(u, y) = d(v, x) + 2``. The walk
``u -> v -> (shortest v..x) -> x -> y`` then has length ``d(u, y)`` and is a shortest path through both edges, and any
shortest path through both edges restricts to such a walk between their outer endpoints.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import networkx as nx
import numpy as np

from .errors import CapExceeded, IncompleteColoring
from .graph import DistanceMatrix, Graph, all_pairs_distances
from .models import Coloring, VerificationReport, ViolationWitness
from .utils import encode_edge_key

DEFAULT_ORACLE_CAP = 10**6


@dataclass(frozen=True)
class ConflictGraph:
    """Graph on the edge ids of `base`; ``adjacency[i, j]`` is True iff edges i and j conflict."""

    base: Graph
    adjacency: np.ndarray

    @property
    def m(self) -> int:
        return self.adjacency.shape[0]

    def conflicts(self, e1: int, e2: int) -> bool:
        return bool(self.adjacency[e1, e2])

    def neighbors(self, edge_id: int) -> list[int]:
        return [int(other) for other in np.flatnonzero(self.adjacency[edge_id])]

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in np.argwhere(np.triu(self.adjacency, 1))]

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.m))
        nx_graph.add_edges_from(self.pairs())
        return nx_graph


def conflict_orientation(
    g: Graph, d: DistanceMatrix, e1: int, e2: int
) -> Optional[tuple[int, int, int, int]]:
    """Return ``(u, v, x, y)`` with ``e1 = uv``, ``e2 = xy`` and ``d(u, y) = d(v, x) + 2``, or None."""
    if e1 == e2:
        raise ValueError("an edge does not conflict with itself")
    a, b = g.edge(e1)
    c, e = g.edge(e2)
    for u, v in ((a, b), (b, a)):
        for x, y in ((c, e), (e, c)):
            if d(u, y) == d(v, x) + 2:
                return u, v, x, y
    return None


def edges_conflict(g: Graph, d: DistanceMatrix, e1: int, e2: int) -> bool:
    return conflict_orientation(g, d, e1, e2) is not None


def build_conflict_graph(g: Graph, d: Optional[DistanceMatrix] = None) -> ConflictGraph:
    """All m² orientation tests at once over the distance matrix."""
    d = d or all_pairs_distances(g)
    if g.m == 0:
        return ConflictGraph(base=g, adjacency=np.zeros((0, 0), dtype=bool))
    ends = np.array(g.edges, dtype=np.int64)
    first, second = ends[:, 0], ends[:, 1]
    uu = d.d[np.ix_(first, first)]
    uv = d.d[np.ix_(first, second)]
    vu = d.d[np.ix_(second, first)]
    vv = d.d[np.ix_(second, second)]
    adjacency = (uv == vu + 2) | (uu == vv + 2) | (vv == uu + 2) | (vu == uv + 2)
    np.fill_diagonal(adjacency, False)
    return ConflictGraph(base=g, adjacency=adjacency)


def verify_coloring(
    g: Graph,
    c: Coloring,
    d: Optional[DistanceMatrix] = None,
    conflict: Optional[ConflictGraph] = None,
) -> VerificationReport:
    """Check that no two conflicting edges share a color; on failure rebuild a shortest path through the
    lowest-numbered clashing pair."""
    if missing := c.missing_edges(g):
        raise IncompleteColoring([g.edge(edge_id) for edge_id in missing])
    d = d or all_pairs_distances(g)
    conflict = conflict or build_conflict_graph(g, d)
    if g.m == 0:
        return VerificationReport(valid=True)

    colors = np.array([c.colors[edge_id] for edge_id in range(g.m)])
    clashes = np.argwhere(np.triu(conflict.adjacency & (colors[:, None] == colors[None, :]), 1))
    if len(clashes) == 0:
        return VerificationReport(valid=True)

    e1, e2 = (int(x) for x in clashes[0])
    u, v, x, y = conflict_orientation(g, d, e1, e2)
    path = [u] + nx.shortest_path(g.to_networkx(), v, x) + [y]
    witness = ViolationWitness(
        path=path,
        edge_ids=(e1, e2),
        edges=(encode_edge_key(*g.edge(e1)), encode_edge_key(*g.edge(e2))),
        color=c.colors[e1],
    )
    return VerificationReport(valid=False, violation=witness)


def is_proper_vertex_coloring(adjacency: np.ndarray, colors: dict[int, int]) -> bool:
    """Plain proper-coloring test over an adjacency matrix, independent of the witness machinery."""
    for i, j in np.argwhere(np.triu(adjacency, 1)):
        if colors[int(i)] == colors[int(j)]:
            return False
    return True


def enumerate_shortest_paths(
    g: Graph,
    s: int,
    t: int,
    cap: int = DEFAULT_ORACLE_CAP,
    d: Optional[DistanceMatrix] = None,
) -> list[list[int]]:
    """Every shortest s-t path in lexicographic vertex order; raises CapExceeded rather than truncating."""
    if s == t:
        raise ValueError("source and target must differ")
    d = d or all_pairs_distances(g)
    paths: list[list[int]] = []

    def extend(path: list[int]):
        current = path[-1]
        if current == t:
            paths.append(list(path))
            if len(paths) > cap:
                raise CapExceeded(cap)
            return
        remaining = d(current, t)
        for w in g.neighbors(current):
            if d(w, t) == remaining - 1:
                path.append(w)
                extend(path)
                path.pop()

    extend([s])
    return paths


def oracle_conflict_pairs(g: Graph, cap: int = DEFAULT_ORACLE_CAP) -> set[tuple[int, int]]:
    """Conflicting pairs found by brute force over every shortest path of every vertex pair."""
    d = all_pairs_distances(g)
    pairs: set[tuple[int, int]] = set()
    for s, t in combinations(range(g.n), 2):
        for path in enumerate_shortest_paths(g, s, t, cap=cap, d=d):
            on_path = sorted(g.edge_id(a, b) for a, b in zip(path, path[1:]))
            pairs.update(combinations(on_path, 2))
    return pairs
