"""Exact chromatic numbers, and through them exact vsrc on the conflict graph.

Two engines:

* `chromatic_number` is a DSATUR-ordered branch-and-bound. The maximum clique is precoloured (it is both the lower
  bound and a symmetry break) and networkx's DSATUR greedy colouring seeds the incumbent.
* `chromatic_number_ie` / `is_k_colorable_ie` count k-covers by independent sets with inclusion-exclusion. They are
  decision-only and serve as an independent cross-check on graphs of at most 24 vertices.
"""

from typing import Any, Optional

import networkx as nx
import numpy as np

from .conflict import build_conflict_graph
from .errors import BadParameters, BudgetExceeded
from .graph import Graph, is_bipartite, max_degree
from .models import ChromaticResult, Coloring

DEFAULT_BUDGET = 10**7
IE_MAX_VERTICES = 24


def max_clique_size(h: nx.Graph) -> int:
    if h.number_of_nodes() == 0:
        return 0
    _, size = nx.max_weight_clique(h, weight=None)
    return size


def _canonical(nodes: list, colors: dict) -> dict:
    # renumber classes by the first node (in sorted order) that carries them
    numbering: dict[int, int] = {}
    result = {}
    for node in nodes:
        color = colors[node]
        if color not in numbering:
            numbering[color] = len(numbering)
        result[node] = numbering[color]
    return result


def chromatic_number(h: nx.Graph, budget: int = DEFAULT_BUDGET, logger: Optional[Any] = None) -> ChromaticResult:
    """Exact χ(h) with a proper witness colouring whose classes are numbered by their first node.

    `budget` caps the number of search nodes; when it runs out `BudgetExceeded` carries the best bounds so far.
    """
    nodes = sorted(h.nodes)
    n = len(nodes)
    if n == 0:
        return ChromaticResult(chi=0, witness={}, lower_bound=0)

    index = {node: i for i, node in enumerate(nodes)}
    adjacency = [sorted(index[other] for other in h.neighbors(node)) for node in nodes]
    degree = [len(neighbors) for neighbors in adjacency]

    clique, _ = nx.max_weight_clique(h, weight=None) if h.number_of_edges() else ([nodes[0]], 1)
    lower = len(clique)
    greedy = nx.greedy_color(h, strategy="DSATUR")
    best_colors = [greedy[node] for node in nodes]
    best_k = max(best_colors) + 1
    if logger:
        logger.debug(f"chromatic search {n=} {lower=} greedy_upper={best_k}")

    if best_k == lower:
        witness = _canonical(nodes, dict(zip(nodes, best_colors)))
        return ChromaticResult(chi=best_k, witness=witness, lower_bound=lower, engine="dsatur-greedy")

    colors = [-1] * n
    neighbor_colors: list[dict[int, int]] = [{} for _ in range(n)]

    def assign(v: int, c: int):
        colors[v] = c
        for w in adjacency[v]:
            neighbor_colors[w][c] = neighbor_colors[w].get(c, 0) + 1

    def unassign(v: int, c: int):
        colors[v] = -1
        for w in adjacency[v]:
            remaining = neighbor_colors[w][c] - 1
            if remaining:
                neighbor_colors[w][c] = remaining
            else:
                del neighbor_colors[w][c]

    for c, node in enumerate(sorted(clique, key=index.get)):
        assign(index[node], c)

    nodes_explored = 0

    def choose_vertex() -> Optional[int]:
        best, best_key = None, None
        for v in range(n):
            if colors[v] != -1:
                continue
            key = (len(neighbor_colors[v]), degree[v])
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def backtrack(current_k: int):
        nonlocal best_k, best_colors, nodes_explored
        nodes_explored += 1
        if nodes_explored > budget:
            raise BudgetExceeded(lower, best_k, nodes_explored)

        v = choose_vertex()
        if v is None:
            best_k = current_k
            best_colors = list(colors)
            return

        for c in range(current_k + 1):
            if c in neighbor_colors[v]:
                continue
            new_k = max(current_k, c + 1)
            if new_k >= best_k:
                continue
            assign(v, c)
            backtrack(new_k)
            unassign(v, c)
            if best_k == lower:
                return

    backtrack(lower)
    if logger:
        logger.debug(f"chromatic search finished chi={best_k} {nodes_explored=}")
    witness = _canonical(nodes, dict(zip(nodes, best_colors)))
    return ChromaticResult(chi=best_k, witness=witness, lower_bound=lower, nodes_explored=nodes_explored)


def _independent_set_table(h: nx.Graph) -> tuple[np.ndarray, np.ndarray]:
    """For every vertex subset S (as a bitmask): the number of independent sets inside S, and |S|."""
    nodes = sorted(h.nodes)
    n = len(nodes)
    if n > IE_MAX_VERTICES:
        raise BadParameters(f"inclusion-exclusion is limited to {IE_MAX_VERTICES} vertices, got {n}")
    index = {node: i for i, node in enumerate(nodes)}
    neighbor_mask = [0] * n
    for u, v in h.edges:
        neighbor_mask[index[u]] |= 1 << index[v]
        neighbor_mask[index[v]] |= 1 << index[u]

    counts = np.empty(1 << n, dtype=np.int64)
    sizes = np.empty(1 << n, dtype=np.int64)
    counts[0], sizes[0] = 1, 0
    for j in range(n):
        low = np.arange(1 << j, dtype=np.int64)
        # sets avoiding j, plus sets using j (which then avoid its neighbours)
        counts[1 << j : 1 << (j + 1)] = counts[: 1 << j] + counts[low & ~neighbor_mask[j]]
        sizes[1 << j : 1 << (j + 1)] = sizes[: 1 << j] + 1
    return counts, sizes


def _covering_count(counts: np.ndarray, sizes: np.ndarray, n: int, k: int) -> int:
    """Σ_S (-1)^(n-|S|) i(S)^k, summed exactly; positive iff k independent sets cover every vertex."""
    total = 0
    for parity, sign in ((0, 1), (1, -1)):
        values, multiplicity = np.unique(counts[(n - sizes) % 2 == parity], return_counts=True)
        total += sign * sum(int(count) * int(value) ** k for value, count in zip(values, multiplicity))
    return total


def is_k_colorable_ie(h: nx.Graph, k: int) -> bool:
    n = h.number_of_nodes()
    if n == 0:
        return True
    if k <= 0:
        return False
    counts, sizes = _independent_set_table(h)
    return _covering_count(counts, sizes, n, k) > 0


def chromatic_number_ie(h: nx.Graph) -> int:
    n = h.number_of_nodes()
    if n == 0:
        return 0
    counts, sizes = _independent_set_table(h)
    k = 1
    while _covering_count(counts, sizes, n, k) <= 0:
        k += 1
    return k


def vsrc_exact_result(
    g: Graph, budget: int = DEFAULT_BUDGET, logger: Optional[Any] = None
) -> tuple[ChromaticResult, Coloring]:
    conflict = build_conflict_graph(g)
    result = chromatic_number(conflict.to_networkx(), budget=budget, logger=logger)
    return result, Coloring.from_labels(result.witness)


def vsrc_exact(g: Graph, budget: int = DEFAULT_BUDGET, logger: Optional[Any] = None) -> tuple[int, Coloring]:
    """vsrc(g) = χ(G'), with the optimal conflict-graph colouring turned into an edge colouring."""
    _, coloring = vsrc_exact_result(g, budget, logger)
    return coloring.k, coloring


def decide_vsrc2(g: Graph) -> bool:
    """vsrc(g) <= 2 iff the conflict graph is bipartite; polynomial, no search."""
    bipartite, _ = is_bipartite(build_conflict_graph(g).to_networkx())
    return bipartite


def check_twbound_consistency(g: Graph, k: int, max_clique: int) -> bool:
    """Δ(g) <= k·t and n <= (k·t)^k with t = `max_clique`, the clique number ω(g) standing in for treewidth + 1."""
    kt = k * max_clique
    return max_degree(g) <= kt and g.n <= kt**k
