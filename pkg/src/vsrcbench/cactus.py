"""Optimal very strong rainbow colouring of cactus graphs in polynomial time.

Edges are split into four classes:

* BRIDGE: single-edge blocks.
* EVEN: edges of even cycles. Each is paired with its opposite edge.
* OPP: edges of odd cycles whose opposite vertex has degree > 2.
* REM: the remaining odd-cycle edges.

Fresh colours go to bridges, then to even cycles (one per opposite pair), then to each odd cycle's REM edges. Within
an odd cycle, edges matched in H_C (the "do not conflict" graph on its REM edges) share a colour. OPP edges come last
and reuse the colour of a non-conflicting edge found inside their opposite subgraph.
"""

from collections import deque
from enum import Enum
from itertools import combinations
from typing import ClassVar, Optional

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from .conflict import edges_conflict
from .errors import DegreeViolation, NoReuseEdge
from .graph import Block, CactusDecomposition, DistanceMatrix, Graph, all_pairs_distances, cactus_decomposition
from .models import Coloring


class EdgeClass(str, Enum):
    BRIDGE = "bridge"
    EVEN = "even"
    OPP = "opp"
    REM = "rem"


class EdgeClassification(BaseModel):
    edge_class: dict[int, EdgeClass]
    cycle_of: dict[int, int] = Field(default_factory=dict)
    vopp: dict[int, int] = Field(default_factory=dict, description="Opposite vertex of every odd-cycle edge.")
    eopp: dict[int, int] = Field(default_factory=dict, description="Opposite edge of every even-cycle edge.")

    model_config: ClassVar[ConfigDict] = ConfigDict(extra="forbid")

    def edges_of(self, edge_class: EdgeClass) -> list[int]:
        return sorted(edge_id for edge_id, value in self.edge_class.items() if value == edge_class)

    def rem_edges(self, block: Block) -> list[int]:
        return [edge_id for edge_id in block.edge_ids if self.edge_class[edge_id] == EdgeClass.REM]


class OppositeSubgraph(BaseModel):
    edge_id: int
    block_id: int
    vopp: int
    vertices: tuple[int, ...]


class HcGraph(BaseModel):
    """Graph on the REM edges of one odd cycle; two are adjacent iff they do not conflict in G."""

    block_id: int
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(self.vertices)
        nx_graph.add_edges_from(self.edges)
        return nx_graph

    def max_degree(self) -> int:
        return max((degree for _, degree in self.to_networkx().degree), default=0)


class CactusColoring(BaseModel):
    k: int
    coloring: Coloring
    classification: EdgeClassification
    matchings: dict[int, list[tuple[int, int]]] = Field(default_factory=dict)
    reuse: dict[int, int] = Field(default_factory=dict, description="OPP edge -> edge whose colour it copies.")
    budget: dict[str, int] = Field(default_factory=dict)


def classify_edges(g: Graph, cd: CactusDecomposition) -> EdgeClassification:
    edge_class: dict[int, EdgeClass] = {}
    cycle_of: dict[int, int] = {}
    vopp: dict[int, int] = {}
    eopp: dict[int, int] = {}

    for block in cd.blocks:
        if not block.cycle_order:
            edge_class[block.edge_ids[0]] = EdgeClass.BRIDGE
            continue
        length = block.length
        order, ring = block.cycle_order, block.cycle_edge_ids
        for i, edge_id in enumerate(ring):
            cycle_of[edge_id] = block.block_id
            if length % 2 == 0:
                edge_class[edge_id] = EdgeClass.EVEN
                eopp[edge_id] = ring[(i + length // 2) % length]
            else:
                # ring[i] joins order[i] and order[i + 1]; the vertex half-way round from both is opposite
                opposite = order[(i + 1 + length // 2) % length]
                vopp[edge_id] = opposite
                edge_class[edge_id] = EdgeClass.OPP if g.degree(opposite) > 2 else EdgeClass.REM

    return EdgeClassification(edge_class=edge_class, cycle_of=cycle_of, vopp=vopp, eopp=eopp)


def gate_set(g: Graph, cd: CactusDecomposition, v: int, block_id: int) -> set[int]:
    """S(v, C): the vertices reachable from `v` without using an edge of cycle `block_id`."""
    block = cd.blocks[block_id]
    cut = nx.restricted_view(g.to_networkx(), [], [g.edge(edge_id) for edge_id in block.edge_ids])
    return set(nx.node_connected_component(cut, v))


def gate_vertex(g: Graph, cd: CactusDecomposition, u: int, block_id: int) -> int:
    """g(u, C): the vertex of cycle `block_id` through which every path from `u` enters the cycle."""
    for v in cd.blocks[block_id].cycle_order:
        if u in gate_set(g, cd, v, block_id):
            return v
    raise ValueError(f"vertex {u} is not reachable from block {block_id}")


def opposite_subgraph(
    g: Graph, cd: CactusDecomposition, e: int, cls: Optional[EdgeClassification] = None
) -> OppositeSubgraph:
    cls = cls or classify_edges(g, cd)
    if e not in cls.vopp:
        raise ValueError(f"edge {e} does not lie on an odd cycle")
    block_id = cls.cycle_of[e]
    vertices = gate_set(g, cd, cls.vopp[e], block_id)
    return OppositeSubgraph(edge_id=e, block_id=block_id, vopp=cls.vopp[e], vertices=tuple(sorted(vertices)))


def build_hc(g: Graph, d: DistanceMatrix, cls: EdgeClassification, block: Block) -> HcGraph:
    rem = cls.rem_edges(block)
    edges = tuple((e1, e2) for e1, e2 in combinations(sorted(rem), 2) if not edges_conflict(g, d, e1, e2))
    hc = HcGraph(block_id=block.block_id, vertices=tuple(sorted(rem)), edges=edges)
    if (degree := hc.max_degree()) > 2:
        raise DegreeViolation(f"H_C of block {block.block_id} has a vertex of degree {degree}")
    return hc


def max_matching_deg2(h: HcGraph) -> list[tuple[int, int]]:
    """Maximum matching of a graph whose components are paths and cycles: walk each one and pair neighbours.

    Paths are walked from their lower-numbered end, cycles from their lowest vertex toward its lower neighbour.
    """
    nx_graph = h.to_networkx()
    matching: list[tuple[int, int]] = []
    for component in sorted(nx.connected_components(nx_graph), key=min):
        ends = [v for v in component if nx_graph.degree(v) < 2]
        walk = _walk_path(nx_graph, min(ends)) if ends else _walk_cycle(nx_graph, min(component))
        matching.extend(tuple(sorted(walk[i : i + 2])) for i in range(0, len(walk) - 1, 2))
    return sorted(matching)


def _walk_path(nx_graph: nx.Graph, start: int) -> list[int]:
    walk, previous, current = [], None, start
    while current is not None:
        walk.append(current)
        following = [w for w in nx_graph.neighbors(current) if w != previous]
        previous, current = current, (following[0] if following else None)
    return walk


def _walk_cycle(nx_graph: nx.Graph, start: int) -> list[int]:
    walk, previous, current = [start], start, min(nx_graph.neighbors(start))
    while current != start:
        walk.append(current)
        following = [w for w in nx_graph.neighbors(current) if w != previous]
        previous, current = current, following[0]
    return walk


def find_reuse_edge(g: Graph, cls: EdgeClassification, e: int) -> int:
    """First BRIDGE, EVEN or REM edge discovered by a BFS from vopp(e) that never crosses e's own cycle."""
    block_id = cls.cycle_of[e]
    own_cycle = {edge_id for edge_id, cycle in cls.cycle_of.items() if cycle == block_id}
    start = cls.vopp[e]
    seen_vertices = {start}
    seen_edges: set[int] = set()
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for w in g.neighbors(current):
            edge_id = g.edge_id(current, w)
            if edge_id in own_cycle or edge_id in seen_edges:
                continue
            seen_edges.add(edge_id)
            if cls.edge_class[edge_id] != EdgeClass.OPP:
                return edge_id
            if w not in seen_vertices:
                seen_vertices.add(w)
                queue.append(w)
    raise NoReuseEdge(f"no bridge, even or remaining edge in the opposite subgraph of edge {e}")


def color_cactus_detailed(g: Graph) -> CactusColoring:
    cd = cactus_decomposition(g)
    cls = classify_edges(g, cd)
    d = all_pairs_distances(g)
    labels: dict[int, int] = {}
    budget = {"bridge": 0, "even": 0, "odd": 0}
    next_color = 0

    def fresh() -> int:
        nonlocal next_color
        next_color += 1
        return next_color - 1

    for edge_id in cls.edges_of(EdgeClass.BRIDGE):
        labels[edge_id] = fresh()
        budget["bridge"] += 1

    for block in cd.blocks:
        if not block.is_even_cycle:
            continue
        half = block.length // 2
        for edge_id in block.cycle_edge_ids[:half]:
            labels[edge_id] = labels[cls.eopp[edge_id]] = fresh()
            budget["even"] += 1

    matchings: dict[int, list[tuple[int, int]]] = {}
    for block in cd.blocks:
        if not block.is_odd_cycle:
            continue
        rem = cls.rem_edges(block)
        if not rem:
            continue
        if block.length == 3:
            # no two triangle edges ever conflict
            color = fresh()
            budget["odd"] += 1
            for edge_id in rem:
                labels[edge_id] = color
            continue
        matching = max_matching_deg2(build_hc(g, d, cls, block))
        matchings[block.block_id] = matching
        partner = {a: b for a, b in matching} | {b: a for a, b in matching}
        for edge_id in rem:
            if edge_id in labels:
                continue
            labels[edge_id] = fresh()
            budget["odd"] += 1
            if edge_id in partner:
                labels[partner[edge_id]] = labels[edge_id]

    reuse: dict[int, int] = {}
    for edge_id in cls.edges_of(EdgeClass.OPP):
        source = find_reuse_edge(g, cls, edge_id)
        reuse[edge_id] = source
        labels[edge_id] = labels[source]

    coloring = Coloring.from_labels(labels)
    budget["total"] = coloring.k
    return CactusColoring(
        k=coloring.k, coloring=coloring, classification=cls, matchings=matchings, reuse=reuse, budget=budget
    )


def color_cactus(g: Graph) -> tuple[int, Coloring]:
    result = color_cactus_detailed(g)
    return result.k, result.coloring


def cactus_color_budget(g: Graph) -> dict[str, int]:
    """Fresh colours spent per class; OPP edges never spend one."""
    return color_cactus_detailed(g).budget
