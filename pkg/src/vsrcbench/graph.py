"""Graph representation, the edge-list format, BFS distances and block decomposition.

Vertices are the dense labels 0..n-1 and edges are stored as ``(u, v)`` pairs with ``u < v``; the position of an edge
in ``Graph.edges`` is its edge id, so ids follow input order and every downstream tie-break is reproducible.
"""

from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Iterable, Optional, Union

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, PrivateAttr

from .errors import Disconnected, DuplicateEdge, MalformedLine, NotCactus, SelfLoop

Edge = tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph(BaseModel):
    """Simple undirected graph; build instances with `Graph.from_edges` or `parse_graph` so they are validated."""

    n: int
    edges: tuple[Edge, ...]

    model_config: ClassVar[ConfigDict] = ConfigDict(extra="forbid")

    _adjacency: list[list[int]] = PrivateAttr(default_factory=list)
    _edge_index: dict[Edge, int] = PrivateAttr(default_factory=dict)
    _nx_graph: Optional[nx.Graph] = PrivateAttr(default=None)

    def model_post_init(self, __context) -> None:
        adjacency: list[list[int]] = [[] for _ in range(self.n)]
        for edge_id, (u, v) in enumerate(self.edges):
            adjacency[u].append(v)
            adjacency[v].append(u)
            self._edge_index[(u, v)] = edge_id
        self._adjacency = [sorted(neighbors) for neighbors in adjacency]

    def __eq__(self, other) -> bool:
        # private caches (the networkx view) must not take part in equality
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge], require_connected: bool = True) -> "Graph":
        """Validate and build a graph; connectivity is only waived for inputs that are never colored directly
        (complements fed to the hat construction, reduction sources)."""
        if n < 1:
            raise MalformedLine("a graph needs at least one vertex")
        normalized: list[Edge] = []
        seen: set[Edge] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise MalformedLine(f"edge {u}-{v} uses a label outside 0..{n - 1}")
            if u == v:
                raise SelfLoop(u)
            edge = normalize_edge(u, v)
            if edge in seen:
                raise DuplicateEdge(edge)
            seen.add(edge)
            normalized.append(edge)
        graph = cls(n=n, edges=tuple(normalized))
        if require_connected:
            graph.ensure_connected()
        return graph

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> list[int]:
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self._edge_index

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self._edge_index[normalize_edge(u, v)]
        except KeyError:
            raise KeyError(f"{u}-{v} is not an edge") from None

    def edge(self, edge_id: int) -> Edge:
        return self.edges[edge_id]

    def unreachable_vertex(self) -> Optional[int]:
        """Lowest vertex not reachable from vertex 0, or None when the graph is connected."""
        reached = nx.node_connected_component(self.to_networkx(), 0)
        if len(reached) == self.n:
            return None
        return min(set(range(self.n)) - reached)

    def is_connected(self) -> bool:
        return self.unreachable_vertex() is None

    def ensure_connected(self):
        if (missing := self.unreachable_vertex()) is not None:
            raise Disconnected(missing)

    def to_networkx(self) -> nx.Graph:
        if self._nx_graph is None:
            nx_graph = nx.Graph()
            nx_graph.add_nodes_from(range(self.n))
            nx_graph.add_edges_from(self.edges)
            self._nx_graph = nx_graph
        return self._nx_graph

    def to_edge_list(self) -> str:
        lines = [f"p {self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DistanceMatrix:
    """Hop counts between every pair of vertices; unreachable pairs hold -1."""

    d: np.ndarray

    def __call__(self, u: int, v: int) -> int:
        return int(self.d[u, v])

    @property
    def n(self) -> int:
        return self.d.shape[0]

    @property
    def diameter(self) -> int:
        return int(self.d.max()) if self.d.size else 0


def parse_graph(text: str, require_connected: bool = True) -> Graph:
    """Parse the edge-list format: optional ``p <n> <m>`` header, one ``<u> <v>`` edge per line, ``#`` comments."""
    header: Optional[tuple[int, int, int]] = None
    edges: list[Edge] = []
    edge_lines: list[int] = []
    seen: dict[Edge, int] = {}

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None or edges:
                raise MalformedLine("header must appear once, before any edge", line_no)
            if len(parts) != 3:
                raise MalformedLine(f"expected 'p <n> <m>', got {line!r}", line_no)
            header = (_parse_label(parts[1], line_no), _parse_label(parts[2], line_no), line_no)
            continue
        if len(parts) != 2:
            raise MalformedLine(f"expected '<u> <v>', got {line!r}", line_no)
        u, v = _parse_label(parts[0], line_no), _parse_label(parts[1], line_no)
        if u == v:
            raise SelfLoop(u, line_no)
        edge = normalize_edge(u, v)
        if edge in seen:
            raise DuplicateEdge(edge, line_no)
        seen[edge] = line_no
        edges.append(edge)
        edge_lines.append(line_no)

    if header is not None:
        n, declared_m, header_line = header
        if declared_m != len(edges):
            raise MalformedLine(f"header declares {declared_m} edges but {len(edges)} were given", header_line)
        for edge, line_no in zip(edges, edge_lines):
            if edge[1] >= n:
                raise MalformedLine(f"label {edge[1]} is outside 0..{n - 1}", line_no)
    else:
        n = max((v for _, v in edges), default=-1) + 1
    if n < 1:
        raise MalformedLine("document contains no vertices")

    graph = Graph(n=n, edges=tuple(edges))
    if require_connected:
        graph.ensure_connected()
    return graph


def _parse_label(token: str, line_no: int) -> int:
    try:
        label = int(token)
    except ValueError:
        raise MalformedLine(f"{token!r} is not an integer", line_no) from None
    if label < 0:
        raise MalformedLine(f"negative label {label}", line_no)
    return label


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """One BFS per source; O(n·m) overall."""
    d = np.full((g.n, g.n), -1, dtype=np.int64)
    for source, lengths in nx.all_pairs_shortest_path_length(g.to_networkx()):
        for target, length in lengths.items():
            d[source, target] = length
    return DistanceMatrix(d=d)


def diameter(g: Graph) -> int:
    return all_pairs_distances(g).diameter


def max_degree(g: Graph) -> int:
    return max((g.degree(v) for v in range(g.n)), default=0)


def complement(g: Graph) -> Graph:
    edges = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
    return Graph.from_edges(g.n, edges, require_connected=False)


class BlockKind(str, Enum):
    BRIDGE = "bridge"
    CYCLE = "cycle"
    # 2-connected but not a cycle; only possible outside cacti
    COMPLEX = "complex"


class Block(BaseModel):
    block_id: int
    kind: BlockKind
    edge_ids: tuple[int, ...]
    vertices: tuple[int, ...]
    cycle_order: tuple[int, ...] = ()
    # cycle_edge_ids[i] joins cycle_order[i] and cycle_order[i + 1] (cyclically)
    cycle_edge_ids: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.edge_ids)

    @property
    def is_even_cycle(self) -> bool:
        return self.kind == BlockKind.CYCLE and self.length % 2 == 0

    @property
    def is_odd_cycle(self) -> bool:
        return self.kind == BlockKind.CYCLE and self.length % 2 == 1


class CactusDecomposition(BaseModel):
    blocks: list[Block]
    edge_to_block: dict[int, int]

    def block_of(self, edge_id: int) -> Block:
        return self.blocks[self.edge_to_block[edge_id]]

    def cycle_blocks(self) -> list[Block]:
        return [block for block in self.blocks if block.kind == BlockKind.CYCLE]


def blocks(g: Graph) -> list[Block]:
    """Biconnected decomposition, ordered by each block's lowest edge id."""
    components = []
    for component in nx.biconnected_component_edges(g.to_networkx()):
        edge_ids = tuple(sorted(g.edge_id(u, v) for u, v in component))
        components.append(edge_ids)
    components.sort(key=lambda ids: ids[0])

    result = []
    for block_id, edge_ids in enumerate(components):
        vertices = sorted({v for edge_id in edge_ids for v in g.edge(edge_id)})
        if len(edge_ids) == 1:
            kind = BlockKind.BRIDGE
        elif len(edge_ids) == len(vertices):
            kind = BlockKind.CYCLE
        else:
            kind = BlockKind.COMPLEX
        block = Block(block_id=block_id, kind=kind, edge_ids=edge_ids, vertices=tuple(vertices))
        if kind == BlockKind.CYCLE:
            order = _cycle_order(g, edge_ids)
            block.cycle_order = tuple(order)
            block.cycle_edge_ids = tuple(
                g.edge_id(order[i], order[(i + 1) % len(order)]) for i in range(len(order))
            )
        result.append(block)
    return result


def _cycle_order(g: Graph, edge_ids: tuple[int, ...]) -> list[int]:
    # start at the lowest vertex and step toward its lower-labeled cycle neighbor
    local: dict[int, list[int]] = {}
    for edge_id in edge_ids:
        u, v = g.edge(edge_id)
        local.setdefault(u, []).append(v)
        local.setdefault(v, []).append(u)
    start = min(local)
    order = [start]
    previous, current = start, min(local[start])
    while current != start:
        order.append(current)
        a, b = local[current]
        previous, current = current, (b if a == previous else a)
    return order


def cactus_decomposition(g: Graph) -> CactusDecomposition:
    all_blocks = blocks(g)
    for block in all_blocks:
        if block.kind == BlockKind.COMPLEX:
            raise NotCactus(block)
    edge_to_block = {edge_id: block.block_id for block in all_blocks for edge_id in block.edge_ids}
    return CactusDecomposition(blocks=all_blocks, edge_to_block=edge_to_block)


def bridges(g: Graph) -> list[int]:
    return sorted(block.edge_ids[0] for block in blocks(g) if block.kind == BlockKind.BRIDGE)


def is_bipartite(h: Union[Graph, nx.Graph]) -> tuple[bool, Optional[list[int]]]:
    """BFS 2-coloring; on failure also returns an odd cycle as a vertex sequence (closing edge implied)."""
    nx_graph = h.to_networkx() if isinstance(h, Graph) else h
    parent: dict = {}
    depth: dict = {}
    for root in sorted(nx_graph.nodes):
        if root in depth:
            continue
        depth[root] = 0
        parent[root] = None
        for child, pred in nx.bfs_predecessors(nx_graph, root, sort_neighbors=sorted):
            parent[child] = pred
            depth[child] = depth[pred] + 1

    for u, v in sorted(tuple(sorted(edge)) for edge in nx_graph.edges):
        if depth[u] % 2 != depth[v] % 2:
            continue
        left, right = [u], [v]
        while left[-1] != right[-1]:
            left.append(parent[left[-1]])
            right.append(parent[right[-1]])
        return False, left + right[-2::-1]
    return True, None
