"""Seeded instance generators and the reduction from 3-colouring.

All randomness comes from ``numpy.random.Generator(numpy.random.PCG64(seed))``, so a seed reproduces the same graph
on every platform numpy supports.
"""

from enum import Enum
from itertools import combinations
from typing import ClassVar, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .bounds import hat_graph
from .errors import BadParameters
from .graph import Edge, Graph, complement


class Family(str, Enum):
    PATH = "path"
    CYCLE = "cycle"
    STAR = "star"
    COMPLETE = "complete"
    COMPLETE_BIPARTITE = "complete_bipartite"
    RANDOM_CACTUS = "random_cactus"
    RANDOM_INTERVAL = "random_interval"
    RANDOM_CONNECTED = "random_connected"
    RANDOM_CHORDAL = "random_chordal"


class GenSpec(BaseModel):
    family: Family
    n: Optional[int] = Field(default=None, description="Vertex count for the size-driven families.")
    a: Optional[int] = Field(default=None, description="First side of complete_bipartite.")
    b: Optional[int] = Field(default=None, description="Second side of complete_bipartite.")
    blocks: Optional[int] = Field(default=None, description="Number of blocks glued together by random_cactus.")
    max_len: int = Field(default=7, description="Longest cycle (random_cactus) or interval (random_interval).")
    cycles: Optional[Literal["odd", "even"]] = Field(default=None, description="Restrict random_cactus cycles.")
    allow_bridges: bool = True
    p: float = Field(default=0.5, description="Edge probability for random_connected and random_chordal.")
    seed: int = Field(default=0, ge=0, lt=2**64)

    model_config: ClassVar[ConfigDict] = ConfigDict(extra="forbid")

    def label(self) -> str:
        params = self.model_dump(exclude_none=True, exclude={"family"}, exclude_defaults=True)
        inner = ",".join(f"{key}={value}" for key, value in params.items())
        return f"{self.family.value}({inner})"


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _require(value: Optional[int], name: str, minimum: int) -> int:
    if value is None:
        raise BadParameters(f"parameter {name} is required")
    if value < minimum:
        raise BadParameters(f"parameter {name} must be at least {minimum}, got {value}")
    return value


def _probability(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise BadParameters(f"probability must lie in [0, 1], got {p}")
    return p


def path_graph(n: int) -> Graph:
    _require(n, "n", 1)
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    _require(n, "n", 3)
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    """K_{1,n-1}, centre 0."""
    _require(n, "n", 1)
    return Graph.from_edges(n, [(0, leaf) for leaf in range(1, n)])


def complete_graph(n: int) -> Graph:
    _require(n, "n", 1)
    return Graph.from_edges(n, list(combinations(range(n), 2)))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    _require(a, "a", 1)
    _require(b, "b", 1)
    return Graph.from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def random_cactus(
    blocks: int,
    max_len: int,
    seed: int,
    cycles: Optional[Literal["odd", "even"]] = None,
    allow_bridges: bool = True,
) -> Graph:
    """Glue `blocks` random blocks, one at a time, onto a uniformly chosen existing vertex.

    Each block is a bridge, an odd cycle or an even cycle with equal probability (restricted by `cycles` and
    `allow_bridges`); cycle lengths are uniform over the lengths of that parity in [3, max_len].
    """
    _require(blocks, "blocks", 1)
    _require(max_len, "max_len", 3)
    kinds = []
    if allow_bridges:
        kinds.append("bridge")
    if cycles in (None, "odd"):
        kinds.append("odd")
    if cycles in (None, "even") and max_len >= 4:
        kinds.append("even")
    if not kinds:
        raise BadParameters("no block kind is allowed by these parameters")

    rng = rng_for(seed)
    n = 1
    edges: list[Edge] = []
    for _ in range(blocks):
        kind = kinds[int(rng.integers(len(kinds)))]
        anchor = int(rng.integers(n))
        if kind == "bridge":
            edges.append((anchor, n))
            n += 1
            continue
        lengths = [length for length in range(3, max_len + 1) if length % 2 == (1 if kind == "odd" else 0)]
        length = lengths[int(rng.integers(len(lengths)))]
        ring = [anchor, *range(n, n + length - 1)]
        edges.extend((ring[i], ring[(i + 1) % length]) for i in range(length))
        n += length - 1
    return Graph.from_edges(n, edges)


def interval_representation(intervals: list[tuple[int, int]], require_connected: bool = True) -> Graph:
    """Intersection graph of closed intervals ``[start, end]``."""
    edges = [
        (u, v)
        for u, v in combinations(range(len(intervals)), 2)
        if max(intervals[u][0], intervals[v][0]) <= min(intervals[u][1], intervals[v][1])
    ]
    return Graph.from_edges(len(intervals), edges, require_connected=require_connected)


def random_interval_model(n: int, seed: int, max_len: int = 7) -> tuple[list[tuple[int, int]], Graph]:
    """Intervals with non-decreasing starts, each start clamped to the reach of the earlier ones so the
    intersection graph is connected."""
    _require(n, "n", 1)
    _require(max_len, "max_len", 1)
    rng = rng_for(seed)
    intervals: list[tuple[int, int]] = []
    start, reach = 0, 0
    for i in range(n):
        if i:
            start = min(start + int(rng.integers(0, 3)), reach)
        end = start + int(rng.integers(1, max_len + 1))
        intervals.append((start, end))
        reach = max(reach, end)
    return intervals, interval_representation(intervals)


def random_connected(n: int, p: float, seed: int) -> Graph:
    """Random labelled spanning tree plus every remaining pair with probability p, under a random relabelling."""
    _require(n, "n", 1)
    _probability(p)
    rng = rng_for(seed)
    labels = rng.permutation(n)
    chosen: set[Edge] = set()
    for v in range(1, n):
        chosen.add((int(rng.integers(v)), v))
    for u, v in combinations(range(n), 2):
        if (u, v) not in chosen and rng.random() < p:
            chosen.add((u, v))
    return Graph.from_edges(n, sorted((int(labels[u]), int(labels[v])) for u, v in sorted(chosen)))


def random_chordal(n: int, p: float, seed: int) -> Graph:
    """Add vertices one at a time, each joined to a random nonempty subset of an existing clique, so every new vertex
    is simplicial when it arrives."""
    _require(n, "n", 1)
    _probability(p)
    rng = rng_for(seed)
    cliques: list[list[int]] = [[0]]
    edges: list[Edge] = []
    for v in range(1, n):
        base = cliques[int(rng.integers(len(cliques)))]
        subset = [u for u in base if rng.random() < p] or [base[int(rng.integers(len(base)))]]
        edges.extend((u, v) for u in subset)
        cliques.append([*subset, v])
    return Graph.from_edges(n, edges)


def generate(spec: GenSpec) -> Graph:
    match spec.family:
        case Family.PATH:
            return path_graph(_require(spec.n, "n", 1))
        case Family.CYCLE:
            return cycle_graph(_require(spec.n, "n", 3))
        case Family.STAR:
            return star_graph(_require(spec.n, "n", 1))
        case Family.COMPLETE:
            return complete_graph(_require(spec.n, "n", 1))
        case Family.COMPLETE_BIPARTITE:
            return complete_bipartite_graph(_require(spec.a, "a", 1), _require(spec.b, "b", 1))
        case Family.RANDOM_CACTUS:
            return random_cactus(
                _require(spec.blocks, "blocks", 1), spec.max_len, spec.seed, spec.cycles, spec.allow_bridges
            )
        case Family.RANDOM_INTERVAL:
            return random_interval_model(_require(spec.n, "n", 1), spec.seed, spec.max_len)[1]
        case Family.RANDOM_CONNECTED:
            return random_connected(_require(spec.n, "n", 1), spec.p, spec.seed)
        case Family.RANDOM_CHORDAL:
            return random_chordal(_require(spec.n, "n", 1), spec.p, spec.seed)
    raise BadParameters(f"unknown family {spec.family}")


def planted_3colorable(n: int, p: float, seed: int, num_classes: int = 3) -> Graph:
    """Random graph whose edges only join different planted classes; classes are assigned round-robin and then
    shuffled, so none is empty when n >= num_classes. The result may be disconnected."""
    _require(n, "n", 3)
    _probability(p)
    if num_classes not in (1, 2, 3):
        raise BadParameters(f"num_classes must be 1, 2 or 3, got {num_classes}")
    rng = rng_for(seed)
    classes = rng.permutation(np.arange(n) % num_classes)
    edges = [(u, v) for u, v in combinations(range(n), 2) if classes[u] != classes[v] and rng.random() < p]
    return Graph.from_edges(n, edges, require_connected=False)


def planted_k4(n: int, p: float, seed: int) -> Graph:
    """Random graph containing a K4 on four random vertices, hence never 3-colourable."""
    _require(n, "n", 4)
    _probability(p)
    rng = rng_for(seed)
    core = {int(v) for v in rng.choice(n, size=4, replace=False)}
    edges = [
        (u, v) for u, v in combinations(range(n), 2) if (u in core and v in core) or rng.random() < p
    ]
    return Graph.from_edges(n, edges, require_connected=False)


def reduce_3col(g: Graph) -> Graph:
    """hat(complement(g)); vsrc of the result is at most 3 exactly when g is 3-colourable."""
    return hat_graph(complement(g))
