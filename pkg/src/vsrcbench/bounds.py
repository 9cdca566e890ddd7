"""Constructive upper bounds and certified lower bounds on vsrc.

Every upper bound here is a colouring built from clique structure and can be checked with `verify_coloring`:

* a clique partition gives at most r(r+1)/2 colours, colouring uv by the pair of parts it joins;
* an intersection representation (equivalently an edge clique cover) colours uv by a shared universe element;
* a chordal graph's clique tree is such a representation with at most n - ω + 1 elements.

Lower bounds are the diameter, the bridge count, the largest clique partition of a neighbourhood (groupability) and
the clique number of the conflict graph.
"""

from collections.abc import Hashable, Mapping, Sequence
from itertools import combinations
from typing import Any, ClassVar, Optional

import networkx as nx
from pydantic import BaseModel, ConfigDict

from .cactus import color_cactus
from .conflict import build_conflict_graph, verify_coloring
from .errors import (
    ArcMismatch,
    BadParameters,
    BudgetExceeded,
    InvalidCover,
    InvalidPartition,
    NotARepresentation,
    NotCactus,
    NotChordal,
    TooManyParts,
)
from .exact import DEFAULT_BUDGET, chromatic_number, max_clique_size
from .graph import Graph, all_pairs_distances, bridges, max_degree
from .models import (
    BoundsReport,
    CliquePartition,
    Coloring,
    EdgeCliqueCover,
    GroupabilityReport,
    IntersectionRep,
    Label,
    LowerBound,
    UpperBound,
)

GROUPABLE_MAX_NEIGHBORHOOD = 12


class CliqueTree(BaseModel):
    """Maximal cliques of a chordal graph arranged so that each vertex's cliques form a subtree."""

    order: list[int]
    nodes: list[list[int]]
    tree_edges: list[tuple[int, int]]

    model_config: ClassVar[ConfigDict] = ConfigDict(extra="forbid")

    def representation(self, n: int) -> IntersectionRep:
        sets: dict[int, list[Label]] = {v: [] for v in range(n)}
        for node_id, clique in enumerate(self.nodes):
            for v in clique:
                sets[v].append(node_id)
        return IntersectionRep(universe=list(range(len(self.nodes))), sets=sets)


def _is_clique(g: Graph, vertices: Sequence[int]) -> bool:
    return all(g.has_edge(u, v) for u, v in combinations(vertices, 2))


def validate_clique_partition(g: Graph, p: CliquePartition):
    seen: set[int] = set()
    for part in p.parts:
        if not part:
            raise InvalidPartition("partition contains an empty part")
        for v in part:
            if not 0 <= v < g.n:
                raise InvalidPartition(f"vertex {v} is not a vertex of the graph")
            if v in seen:
                raise InvalidPartition(f"vertex {v} appears in more than one part")
            seen.add(v)
        if not _is_clique(g, part):
            raise InvalidPartition(f"part {sorted(part)} does not induce a clique")
    if len(seen) != g.n:
        missing = min(set(range(g.n)) - seen)
        raise InvalidPartition(f"vertex {missing} is not covered by the partition")


def coloring_from_clique_partition(g: Graph, p: CliquePartition) -> Coloring:
    """Colour uv by the unordered pair {part(u), part(v)}; at most r(r+1)/2 colours."""
    validate_clique_partition(g, p)
    part_of = {v: index for index, part in enumerate(p.parts) for v in part}
    labels: dict[int, Hashable] = {
        edge_id: frozenset((part_of[u], part_of[v])) for edge_id, (u, v) in enumerate(g.edges)
    }
    return Coloring.from_labels(labels)


def validate_intersection_rep(g: Graph, rep: IntersectionRep):
    universe = set(rep.universe)
    members: list[set] = []
    for v in range(g.n):
        chosen = set(rep.sets.get(v, []))
        if not chosen <= universe:
            raise BadParameters(f"set of vertex {v} uses labels outside the universe")
        members.append(chosen)
    for u, v in combinations(range(g.n), 2):
        adjacent = g.has_edge(u, v)
        if adjacent != bool(members[u] & members[v]):
            raise NotARepresentation((u, v), is_edge=adjacent)


def coloring_from_intersection_rep(g: Graph, rep: IntersectionRep) -> Coloring:
    """Colour each edge by the first universe element (in universe order) both endpoints share."""
    validate_intersection_rep(g, rep)
    rank = {label: position for position, label in enumerate(rep.universe)}
    labels: dict[int, Hashable] = {}
    for edge_id, (u, v) in enumerate(g.edges):
        shared = set(rep.sets[u]) & set(rep.sets[v])
        labels[edge_id] = min(shared, key=rank.__getitem__)
    return Coloring.from_labels(labels)


def validate_edge_clique_cover(g: Graph, cover: EdgeCliqueCover):
    covered: set[int] = set()
    for clique in cover.cliques:
        if any(not 0 <= v < g.n for v in clique):
            raise InvalidCover(f"clique {sorted(clique)} names a vertex outside the graph")
        if not _is_clique(g, clique):
            raise InvalidCover(f"set {sorted(clique)} does not induce a clique")
        covered.update(g.edge_id(u, v) for u, v in combinations(clique, 2))
    if len(covered) != g.m:
        u, v = g.edge(min(set(range(g.m)) - covered))
        raise InvalidCover(f"edge {u}-{v} is not covered")


def cover_representation(g: Graph, cover: EdgeCliqueCover) -> IntersectionRep:
    sets: dict[int, list[Label]] = {v: [] for v in range(g.n)}
    for index, clique in enumerate(cover.cliques):
        for v in clique:
            sets[v].append(index)
    return IntersectionRep(universe=list(range(len(cover.cliques))), sets=sets)


def coloring_from_ecc(g: Graph, cover: EdgeCliqueCover) -> Coloring:
    validate_edge_clique_cover(g, cover)
    return coloring_from_intersection_rep(g, cover_representation(g, cover))


def greedy_edge_clique_cover(g: Graph) -> EdgeCliqueCover:
    """Grow a maximal clique around each still-uncovered edge, in edge id order."""
    covered: set[int] = set()
    cliques: list[list[int]] = []
    for edge_id, (u, v) in enumerate(g.edges):
        if edge_id in covered:
            continue
        clique = [u, v]
        for w in sorted(set(g.neighbors(u)) & set(g.neighbors(v))):
            if all(g.has_edge(w, x) for x in clique):
                clique.append(w)
        covered.update(g.edge_id(a, b) for a, b in combinations(clique, 2))
        cliques.append(sorted(clique))
    return EdgeCliqueCover(cliques=cliques)


def edge_clique_cover_exact(g: Graph, budget: int = DEFAULT_BUDGET) -> EdgeCliqueCover:
    """Minimum edge clique cover as a set cover over the maximal cliques, by branch-and-bound.

    The greedy cover is the initial incumbent; each branch picks the lowest uncovered edge and tries every maximal
    clique containing it.
    """
    if g.m == 0:
        return EdgeCliqueCover(cliques=[])
    maximal = sorted(sorted(clique) for clique in nx.find_cliques(g.to_networkx()) if len(clique) > 1)
    clique_edges = [frozenset(g.edge_id(u, v) for u, v in combinations(clique, 2)) for clique in maximal]
    containing: list[list[int]] = [[] for _ in range(g.m)]
    for index, edges in enumerate(clique_edges):
        for edge_id in edges:
            containing[edge_id].append(index)

    best = [sorted(clique) for clique in greedy_edge_clique_cover(g).cliques]
    largest = max(len(edges) for edges in clique_edges)
    chosen: list[int] = []
    nodes = 0

    def search(covered: frozenset):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(-(-g.m // largest), len(best), nodes)
        if len(covered) == g.m:
            if len(chosen) < len(best):
                best = [maximal[index] for index in chosen]
            return
        # every further clique covers at most `largest` new edges
        if len(chosen) + -(-(g.m - len(covered)) // largest) >= len(best):
            return
        target = min(set(range(g.m)) - covered)
        for index in containing[target]:
            chosen.append(index)
            search(covered | clique_edges[index])
            chosen.pop()

    search(frozenset())
    return EdgeCliqueCover(cliques=best)


def edge_clique_cover_from_orientation(
    g: Graph, out_neighbors: Mapping[int, Sequence[int]], budget: int = DEFAULT_BUDGET
) -> EdgeCliqueCover:
    """Cover every edge u->v by a clique {u} + Q where Q is a clique of a minimum partition of u's out-neighbours.

    An orientation whose out-neighbourhoods each split into at most k cliques yields at most k·n cliques.
    """
    oriented: set[int] = set()
    cliques: list[list[int]] = []
    for u in range(g.n):
        targets = sorted(out_neighbors.get(u, []))
        for v in targets:
            if not g.has_edge(u, v):
                raise InvalidCover(f"orientation uses {u}->{v}, which is not an edge")
            oriented.add(g.edge_id(u, v))
        if targets:
            for part in _clique_partition_of(g, targets, budget):
                cliques.append(sorted([u, *part]))
    if len(oriented) != g.m:
        u, v = g.edge(min(set(range(g.m)) - oriented))
        raise InvalidCover(f"orientation leaves edge {u}-{v} unoriented")
    cover = EdgeCliqueCover(cliques=cliques)
    validate_edge_clique_cover(g, cover)
    return cover


def _clique_partition_of(g: Graph, vertices: Sequence[int], budget: int) -> list[list[int]]:
    # minimum clique partition of the induced subgraph = colour classes of its complement
    induced = g.to_networkx().subgraph(vertices)
    result = chromatic_number(nx.complement(induced), budget=budget)
    parts: list[list[int]] = [[] for _ in range(result.chi)]
    for v in sorted(vertices):
        parts[result.witness[v]].append(v)
    return parts


def clique_partition_exact(g: Graph, budget: int = DEFAULT_BUDGET) -> CliquePartition:
    return CliquePartition(parts=_clique_partition_of(g, range(g.n), budget))


def neighborhood_partition(g: Graph, v: int, budget: int = DEFAULT_BUDGET) -> list[list[int]]:
    return _clique_partition_of(g, g.neighbors(v), budget)


def k_perfectly_groupable(g: Graph, k: int, budget: int = DEFAULT_BUDGET) -> GroupabilityReport:
    """True iff every neighbourhood splits into at most k cliques; the first failing vertex is the certificate
    that vsrc(g) > k."""
    partitions: dict[int, list[list[int]]] = {}
    for v in range(g.n):
        parts = neighborhood_partition(g, v, budget)
        partitions[v] = parts
        if len(parts) > k:
            return GroupabilityReport(
                k=k, groupable=False, partitions=partitions, failing_vertex=v, cliques_needed=len(parts)
            )
    return GroupabilityReport(k=k, groupable=True, partitions=partitions)


def groupability_number(g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Smallest k for which g is k-perfectly groupable; a lower bound on vsrc(g)."""
    return max((len(neighborhood_partition(g, v, budget)) for v in range(g.n)), default=0)


def lexbfs(g: Graph) -> list[int]:
    """Lexicographic BFS visit order; ties go to the lowest vertex."""
    labels: dict[int, list[int]] = {v: [] for v in range(g.n)}
    order: list[int] = []
    for step in range(g.n):
        v = max(labels, key=lambda u: (labels[u], -u))
        del labels[v]
        order.append(v)
        for w in g.neighbors(v):
            if w in labels:
                labels[w].append(g.n - step)
    return order


def perfect_elimination_order(g: Graph) -> list[int]:
    """Reverse LexBFS order, checked; raises NotChordal with a chordless cycle when it is not a PEO."""
    order = list(reversed(lexbfs(g)))
    position = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in g.neighbors(v) if position[w] > position[v]]
        if not later:
            continue
        parent = min(later, key=position.__getitem__)
        if any(w != parent and not g.has_edge(parent, w) for w in later):
            raise NotChordal(_chordless_cycle(g))
    return order


def _chordless_cycle(g: Graph) -> list[int]:
    for cycle in nx.chordless_cycles(g.to_networkx()):
        if len(cycle) >= 4:
            return list(cycle)
    raise AssertionError("elimination order failed but no chordless cycle of length >= 4 exists")


def is_chordal(g: Graph) -> bool:
    try:
        perfect_elimination_order(g)
    except NotChordal:
        return False
    return True


def clique_tree(g: Graph) -> CliqueTree:
    """Insert vertices in LexBFS order. A vertex whose earlier neighbourhood is exactly an existing node joins that
    node, otherwise it opens a new node attached to the first node containing that neighbourhood."""
    perfect_elimination_order(g)
    order = lexbfs(g)
    inserted: set[int] = set()
    nodes: list[set[int]] = []
    tree_edges: list[tuple[int, int]] = []
    for v in order:
        earlier = {w for w in g.neighbors(v) if w in inserted}
        inserted.add(v)
        if not nodes:
            nodes.append({v})
            continue
        same = next((i for i, node in enumerate(nodes) if node == earlier), None)
        if same is not None:
            nodes[same].add(v)
            continue
        holder = next(i for i, node in enumerate(nodes) if earlier <= node)
        nodes.append(earlier | {v})
        tree_edges.append((holder, len(nodes) - 1))
    return CliqueTree(order=order, nodes=[sorted(node) for node in nodes], tree_edges=tree_edges)


def chordal_coloring(g: Graph) -> Coloring:
    tree = clique_tree(g)
    return coloring_from_intersection_rep(g, tree.representation(g.n))


def _on_arc(point: float, arc: tuple[float, float]) -> bool:
    start, end = arc
    return (point - start) % 360 <= (end - start) % 360


def arcs_intersect(a: tuple[float, float], b: tuple[float, float]) -> bool:
    return _on_arc(a[0], b) or _on_arc(b[0], a)


def circular_arc_representation(arcs: Sequence[tuple[float, float]], g: Graph) -> IntersectionRep:
    """Universe = the clockwise endpoint of every arc (labelled by its vertex); a vertex holds the endpoints its arc
    covers."""
    if len(arcs) != g.n:
        raise BadParameters(f"expected {g.n} arcs, got {len(arcs)}")
    for u, v in combinations(range(g.n), 2):
        intersect = arcs_intersect(arcs[u], arcs[v])
        if intersect != g.has_edge(u, v):
            raise ArcMismatch((u, v), arcs_intersect=intersect)
    sets: dict[int, list[Label]] = {
        v: [u for u in range(g.n) if _on_arc(arcs[u][1], arcs[v])] for v in range(g.n)
    }
    return IntersectionRep(universe=list(range(g.n)), sets=sets)


def circular_arc_coloring(arcs: Sequence[tuple[float, float]], g: Graph) -> Coloring:
    return coloring_from_intersection_rep(g, circular_arc_representation(arcs, g))


def line_graph_representation(base: Graph) -> tuple[Graph, IntersectionRep]:
    """L(base) with the representation S_uv = {u, v}; its colourings use at most |V(base)| colours."""
    if base.m == 0:
        raise BadParameters("the line graph of an edgeless graph is empty")
    edges = [
        (e1, e2)
        for e1, e2 in combinations(range(base.m), 2)
        if set(base.edge(e1)) & set(base.edge(e2))
    ]
    line = Graph.from_edges(base.m, edges)
    sets: dict[int, list[Label]] = {edge_id: list(base.edge(edge_id)) for edge_id in range(base.m)}
    return line, IntersectionRep(universe=list(range(base.n)), sets=sets)


def hat_graph(g: Graph) -> Graph:
    """g plus a universal vertex labelled n."""
    return Graph.from_edges(g.n + 1, [*g.edges, *((v, g.n) for v in range(g.n))])


def hat_cp3_coloring(g: Graph, p: CliquePartition) -> Coloring:
    """Three colours on hat(g): part i's inner edges and spokes get colour i, edges between parts i and j the third."""
    if len(p.parts) > 3:
        raise TooManyParts(f"partition has {len(p.parts)} parts; at most 3 are allowed")
    validate_clique_partition(g, p)
    part_of = {v: index for index, part in enumerate(p.parts) for v in part}
    hat = hat_graph(g)
    labels: dict[int, Hashable] = {}
    for edge_id, (u, v) in enumerate(hat.edges):
        if v == g.n:
            labels[edge_id] = part_of[u]
        elif part_of[u] == part_of[v]:
            labels[edge_id] = part_of[u]
        else:
            labels[edge_id] = 3 - part_of[u] - part_of[v]
    return Coloring.from_labels(labels)


def vsrc_bounds(
    g: Graph, budget: int = DEFAULT_BUDGET, max_neighborhood: int = GROUPABLE_MAX_NEIGHBORHOOD
) -> BoundsReport:
    """Every lower and upper bound this package knows, each with its certificate. Engines that run out of budget or
    do not apply are listed in `skipped` instead of failing the report."""
    d = all_pairs_distances(g)
    conflict = build_conflict_graph(g, d)
    skipped: dict[str, str] = {}

    bridge_ids = bridges(g)
    lower_bounds = [
        LowerBound(method="diameter", k=d.diameter),
        LowerBound(method="bridges", k=len(bridge_ids), detail=f"{len(bridge_ids)} pairwise conflicting bridges"),
    ]
    if max_degree(g) <= max_neighborhood:
        try:
            needed = {v: len(neighborhood_partition(g, v, budget)) for v in range(g.n)}
            worst = max(needed, key=needed.__getitem__)
            lower_bounds.append(
                LowerBound(method="groupable", k=needed[worst], detail=f"N({worst}) needs {needed[worst]} cliques")
            )
        except BudgetExceeded as e:
            skipped["groupable"] = str(e)
    else:
        skipped["groupable"] = f"maximum degree exceeds {max_neighborhood}"
    lower_bounds.append(LowerBound(method="conflict-clique", k=max_clique_size(conflict.to_networkx())))

    upper_bounds: list[UpperBound] = []

    def offer(method: str, coloring: Coloring):
        verified = verify_coloring(g, coloring, d=d, conflict=conflict).valid
        upper_bounds.append(UpperBound(method=method, k=coloring.k, coloring=coloring, verified=verified))

    try:
        offer("ecc", coloring_from_ecc(g, edge_clique_cover_exact(g, budget)))
    except BudgetExceeded as e:
        skipped["ecc"] = str(e)
        offer("ecc-greedy", coloring_from_ecc(g, greedy_edge_clique_cover(g)))
    try:
        offer("clique-partition", coloring_from_clique_partition(g, clique_partition_exact(g, budget)))
    except BudgetExceeded as e:
        skipped["clique-partition"] = str(e)
    offer("edges", Coloring.from_labels({edge_id: edge_id for edge_id in range(g.m)}))
    upper_bounds.append(UpperBound(method="n2/4", k=g.n * g.n // 4))
    try:
        offer("chordal", chordal_coloring(g))
    except NotChordal as e:
        skipped["chordal"] = str(e)
    try:
        offer("cactus", color_cactus(g)[1])
    except NotCactus as e:
        skipped["cactus"] = str(e)

    usable = [bound.k for bound in upper_bounds if bound.verified is not False]
    return BoundsReport(
        lower=max(bound.k for bound in lower_bounds),
        upper=min(usable),
        lower_bounds=lower_bounds,
        upper_bounds=upper_bounds,
        skipped=skipped,
    )


def describe_bounds(report: BoundsReport) -> dict[str, Any]:
    """Compact summary for logs: best value and method on each side."""
    best_lower = max(report.lower_bounds, key=lambda bound: bound.k)
    best_upper: Optional[UpperBound] = report.best_upper()
    return {
        "lower": report.lower,
        "lower_method": best_lower.method,
        "upper": report.upper,
        "upper_method": best_upper.method if best_upper else None,
        "tight": report.tight,
    }
