"""Batch experiments: each suite maps an instance index to one or more `ExperimentRow`s.

Case functions are module-level and take only plain values, so a suite can be fanned out over a process pool;
rows are always assembled in index order. Suites that build graphs expose their instance builder too, and the
sandwich suite re-checks the bounds on every one of those instances.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import partial
from typing import Callable, Optional

from .bounds import (
    chordal_coloring,
    clique_partition_exact,
    coloring_from_clique_partition,
    k_perfectly_groupable,
    vsrc_bounds,
)
from .cactus import color_cactus
from .conflict import DEFAULT_ORACLE_CAP, build_conflict_graph, oracle_conflict_pairs, verify_coloring
from .errors import BadParameters, BudgetExceeded
from .exact import DEFAULT_BUDGET, chromatic_number, decide_vsrc2, max_clique_size, vsrc_exact
from .graph import Graph, bridges, diameter
from .instances import (
    cycle_graph,
    path_graph,
    planted_3colorable,
    planted_k4,
    random_cactus,
    random_chordal,
    random_connected,
    random_interval_model,
    reduce_3col,
)
from .models import CliquePartition, ExperimentRow, ResultTable

# exact reference search per sandwich instance; larger instances become skipped rows
SANDWICH_BUDGET = 10**5


@dataclass(frozen=True)
class CaseContext:
    max_size: int
    budget: int
    oracle_cap: int


CaseFn = Callable[[int, CaseContext], list[ExperimentRow]]
# (label, graph) for an index; the graph is the one the suite computes vsrc on
InstanceFn = Callable[[int, CaseContext], tuple[str, Graph]]


@dataclass(frozen=True)
class Suite:
    case: CaseFn
    default_count: int
    default_max_size: int
    first_index: int = 0
    # vertex count of the instance built for an index, for suites indexed by size rather than seed
    size_of: Optional[Callable[[int], int]] = None
    instance: Optional[InstanceFn] = None


def _verifies(g: Graph, coloring) -> bool:
    return verify_coloring(g, coloring).valid


def small_random_graph(seed: int, max_n: int) -> Graph:
    """The shared pool of small connected graphs: size and density both cycle with the seed."""
    n = 2 + seed % max(max_n - 1, 1)
    p = (0.15, 0.3, 0.5, 0.7)[(seed // 7) % 4]
    return random_connected(n, p, seed)


def bounded_cactus(seed: int, max_m: int) -> Graph:
    blocks = 1 + seed % 5
    g = random_cactus(blocks, 7, seed)
    while g.m > max_m and blocks > 1:
        blocks -= 1
        g = random_cactus(blocks, 7, seed)
    return g


def _shape(name: str, g: Graph) -> str:
    return f"{name}(n={g.n},m={g.m})"


def path_instance(n: int, ctx: CaseContext) -> tuple[str, Graph]:
    return f"P{n}", path_graph(n)


def even_cycle_instance(half: int, ctx: CaseContext) -> tuple[str, Graph]:
    return f"C{2 * half}", cycle_graph(2 * half)


def odd_cycle_instance(half: int, ctx: CaseContext) -> tuple[str, Graph]:
    return f"C{2 * half + 1}", cycle_graph(2 * half + 1)


def cactus_instance(seed: int, ctx: CaseContext) -> tuple[str, Graph]:
    g = bounded_cactus(seed, ctx.max_size)
    return _shape("cactus", g), g


def pool_instance(seed: int, ctx: CaseContext) -> tuple[str, Graph]:
    g = small_random_graph(seed, ctx.max_size)
    return _shape("G", g), g


def dense_partitioned_graph(seed: int, ctx: CaseContext) -> tuple[Graph, CliquePartition]:
    n = 3 + seed % max(ctx.max_size - 2, 1)
    # densify until the partition has at most 4 parts; p = 1 always gets there
    for p in (0.6, 0.7, 0.8, 0.9, 1.0):
        g = random_connected(n, p, seed)
        partition = clique_partition_exact(g, ctx.budget)
        if len(partition.parts) <= 4:
            break
    return g, partition


def clique_partition_instance(seed: int, ctx: CaseContext) -> tuple[str, Graph]:
    g, _ = dense_partitioned_graph(seed, ctx)
    return _shape("G", g), g


def chordal_instance(seed: int, ctx: CaseContext) -> tuple[str, Graph]:
    n = 1 + seed % ctx.max_size
    if seed % 2:
        g = random_chordal(n, 0.5, seed)
        return _shape("chordal", g), g
    g = random_interval_model(n, seed)[1]
    return _shape("interval", g), g


def reduction_source(seed: int, ctx: CaseContext) -> tuple[str, Graph]:
    if seed % 2 == 0:
        g = planted_3colorable(3 + seed % max(ctx.max_size - 2, 1), 0.6, seed)
        return _shape("planted-3col", g), g
    g = planted_k4(4 + seed % max(ctx.max_size - 3, 1), 0.5, seed)
    return _shape("planted-k4", g), g


def reduction_instance(seed: int, ctx: CaseContext) -> tuple[str, Graph]:
    label, g = reduction_source(seed, ctx)
    return f"reduce({label})", reduce_3col(g)


def paths_case(n: int, ctx: CaseContext) -> list[ExperimentRow]:
    label, g = path_instance(n, ctx)
    k, coloring = color_cactus(g)
    ok = k == n - 1 and _verifies(g, coloring)
    return [ExperimentRow(suite="paths", seed=n, instance=label, expected=n - 1, observed=k, passed=ok)]


def even_cycles_case(half: int, ctx: CaseContext) -> list[ExperimentRow]:
    label, g = even_cycle_instance(half, ctx)
    k, coloring = color_cactus(g)
    ok = k == half and _verifies(g, coloring)
    detail = None
    if 2 * half <= 12:
        exact_k, _ = vsrc_exact(g, ctx.budget)
        ok = ok and exact_k == k
        detail = f"exact={exact_k}"
    return [
        ExperimentRow(
            suite="even-cycles", seed=half, instance=label, expected=half, observed=k, passed=ok, detail=detail
        )
    ]


def odd_cycles_case(half: int, ctx: CaseContext) -> list[ExperimentRow]:
    label, g = odd_cycle_instance(half, ctx)
    expected = half + 1 if half >= 2 else 1
    k, coloring = color_cactus(g)
    ok = k == expected and _verifies(g, coloring)
    detail = None
    if 2 * half + 1 <= 11:
        exact_k, _ = vsrc_exact(g, ctx.budget)
        ok = ok and exact_k == k
        detail = f"exact={exact_k}"
    return [
        ExperimentRow(
            suite="odd-cycles", seed=half, instance=label, expected=expected, observed=k, passed=ok, detail=detail
        )
    ]


def cactus_vs_exact_case(seed: int, ctx: CaseContext) -> list[ExperimentRow]:
    label, g = cactus_instance(seed, ctx)
    cactus_k, cactus_coloring = color_cactus(g)
    exact_k, exact_coloring = vsrc_exact(g, ctx.budget)
    ok = cactus_k == exact_k and _verifies(g, cactus_coloring) and _verifies(g, exact_coloring)
    return [
        ExperimentRow(
            suite="cactus-vs-exact", seed=seed, instance=label, expected=exact_k, observed=cactus_k, passed=ok
        )
    ]


def conflict_oracle_case(seed: int, ctx: CaseContext) -> list[ExperimentRow]:
    label, g = pool_instance(seed, ctx)
    fast = set(build_conflict_graph(g).pairs())
    slow = oracle_conflict_pairs(g, cap=ctx.oracle_cap)
    detail = None if fast == slow else f"only fast={sorted(fast - slow)} only oracle={sorted(slow - fast)}"
    return [
        ExperimentRow(
            suite="conflict-oracle",
            seed=seed,
            instance=label,
            expected=len(slow),
            observed=len(fast),
            passed=fast == slow,
            detail=detail,
        )
    ]


def vsrc2_dichotomy_case(seed: int, ctx: CaseContext) -> list[ExperimentRow]:
    label, g = pool_instance(seed, ctx)
    k, _ = vsrc_exact(g, ctx.budget)
    decided = decide_vsrc2(g)
    return [
        ExperimentRow(
            suite="vsrc2-dichotomy",
            seed=seed,
            instance=label,
            expected=k <= 2,
            observed=decided,
            passed=decided == (k <= 2),
            detail=f"vsrc={k}",
        )
    ]


def clique_partition_case(seed: int, ctx: CaseContext) -> list[ExperimentRow]:
    g, partition = dense_partitioned_graph(seed, ctx)
    r = len(partition.parts)
    coloring = coloring_from_clique_partition(g, partition)
    limit = r * (r + 1) // 2
    return [
        ExperimentRow(
            suite="clique-partition",
            seed=seed,
            instance=_shape("G", g),
            expected=limit,
            observed=coloring.k,
            passed=coloring.k <= limit and _verifies(g, coloring),
            detail=f"r={r}",
        )
    ]


def chordal_case(seed: int, ctx: CaseContext) -> list[ExperimentRow]:
    label, g = chordal_instance(seed, ctx)
    omega = max_clique_size(g.to_networkx())
    chi = chromatic_number(g.to_networkx(), ctx.budget).chi
    coloring = chordal_coloring(g)
    limit = g.n - omega + 1
    ok = coloring.k <= limit and chi == omega and coloring.k <= g.n - chi + 1 and _verifies(g, coloring)
    return [
        ExperimentRow(
            suite="chordal",
            seed=seed,
            instance=label,
            expected=limit,
            observed=coloring.k,
            passed=ok,
            detail=f"omega={omega} chi={chi}",
        )
    ]


def reduction_case(seed: int, ctx: CaseContext) -> list[ExperimentRow]:
    label, g = reduction_source(seed, ctx)
    colorable = chromatic_number(g.to_networkx(), ctx.budget).chi <= 3
    k, _ = vsrc_exact(reduce_3col(g), ctx.budget)
    return [
        ExperimentRow(
            suite="reduction",
            seed=seed,
            instance=label,
            expected=colorable,
            observed=k <= 3,
            passed=colorable == (k <= 3),
            detail=f"vsrc(reduced)={k}",
        )
    ]


def groupable_case(seed: int, ctx: CaseContext) -> list[ExperimentRow]:
    label, g = pool_instance(seed, ctx)
    k, _ = vsrc_exact(g, ctx.budget)
    report = k_perfectly_groupable(g, k, ctx.budget)
    return [
        ExperimentRow(
            suite="groupable",
            seed=seed,
            instance=label,
            expected=True,
            observed=report.groupable,
            passed=report.groupable,
            detail=f"vsrc={k}",
        )
    ]


def sandwich_row(seed: int, label: str, g: Graph, budget: int) -> ExperimentRow:
    """lower <= vsrc <= upper and lower >= max(diameter, bridges) on one graph; skipped if exact search gives up."""
    try:
        k, _ = vsrc_exact(g, budget)
    except BudgetExceeded as e:
        return ExperimentRow(
            suite="sandwich", seed=seed, instance=label, passed=True, skipped=True, detail=f"exact search: {e}"
        )
    report = vsrc_bounds(g, budget=budget)
    floor = max(diameter(g), len(bridges(g)))
    return ExperimentRow(
        suite="sandwich",
        seed=seed,
        instance=label,
        expected=k,
        observed=f"{report.lower}..{report.upper}",
        passed=report.lower <= k <= report.upper and report.lower >= floor,
    )


def sandwich_case(seed: int, ctx: CaseContext) -> list[ExperimentRow]:
    """One row per instance suite at this index: the instance that suite builds, at that suite's default scale.

    The n <= 8 pool is shared by conflict-oracle, vsrc2-dichotomy and groupable, so it is visited once. Instances
    above `max_size` vertices are recorded as skipped rather than searched.
    """
    rows = []
    budget = min(ctx.budget, SANDWICH_BUDGET)
    visited: set[InstanceFn] = set()
    for name, suite in SUITES.items():
        if suite.instance is None or suite.instance in visited:
            continue
        visited.add(suite.instance)
        if seed >= suite.default_count:
            continue
        index = suite.first_index + seed
        if suite.size_of and suite.size_of(index) > suite.default_max_size:
            continue
        label, g = suite.instance(index, replace(ctx, max_size=suite.default_max_size))
        label = f"{name}:{label}"
        if g.n > ctx.max_size:
            rows.append(
                ExperimentRow(
                    suite="sandwich",
                    seed=seed,
                    instance=label,
                    passed=True,
                    skipped=True,
                    detail=f"n={g.n} exceeds max size {ctx.max_size}",
                )
            )
            continue
        rows.append(sandwich_row(seed, label, g, budget))
    return rows


SUITES: dict[str, Suite] = {
    "paths": Suite(
        paths_case, default_count=49, default_max_size=50, first_index=2, size_of=lambda n: n, instance=path_instance
    ),
    "even-cycles": Suite(
        even_cycles_case,
        default_count=24,
        default_max_size=50,
        first_index=2,
        size_of=lambda half: 2 * half,
        instance=even_cycle_instance,
    ),
    "odd-cycles": Suite(
        odd_cycles_case,
        default_count=25,
        default_max_size=51,
        first_index=1,
        size_of=lambda half: 2 * half + 1,
        instance=odd_cycle_instance,
    ),
    "cactus-vs-exact": Suite(cactus_vs_exact_case, default_count=100, default_max_size=18, instance=cactus_instance),
    "conflict-oracle": Suite(conflict_oracle_case, default_count=500, default_max_size=8, instance=pool_instance),
    "vsrc2-dichotomy": Suite(vsrc2_dichotomy_case, default_count=500, default_max_size=8, instance=pool_instance),
    "clique-partition": Suite(
        clique_partition_case, default_count=50, default_max_size=10, instance=clique_partition_instance
    ),
    "chordal": Suite(chordal_case, default_count=50, default_max_size=12, instance=chordal_instance),
    "reduction": Suite(reduction_case, default_count=100, default_max_size=8, instance=reduction_instance),
    "groupable": Suite(groupable_case, default_count=500, default_max_size=8, instance=pool_instance),
    # max size caps the instance graphs searched exactly; odd cycles above it are out of reach of the clique bound
    "sandwich": Suite(sandwich_case, default_count=500, default_max_size=21),
}


def _run_case(case: CaseFn, ctx: CaseContext, index: int) -> list[ExperimentRow]:
    return case(index, ctx)


def run_suite(
    name: str,
    seeds: Optional[int] = None,
    max_size: Optional[int] = None,
    first_seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    workers: int = 1,
) -> ResultTable[ExperimentRow]:
    """Run suite `name` over `seeds` consecutive indices.

    For the deterministic families (paths, cycles) the index is the size parameter and starts at the smallest
    meaningful size; for the random ones it is the seed, offset by `first_seed`.
    """
    if name not in SUITES:
        raise BadParameters(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    suite = SUITES[name]
    ctx = CaseContext(max_size=max_size or suite.default_max_size, budget=budget, oracle_cap=oracle_cap)
    count = suite.default_count if seeds is None else seeds
    indices = [suite.first_index + first_seed + i for i in range(count)]
    if suite.size_of:
        indices = [index for index in indices if suite.size_of(index) <= ctx.max_size]

    run = partial(_run_case, suite.case, ctx)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(run, indices))
    else:
        batches = [run(index) for index in indices]

    table: ResultTable[ExperimentRow] = ResultTable(row for batch in batches for row in batch)
    table.suite = name
    return table
