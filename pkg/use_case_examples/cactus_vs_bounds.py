from logzero import logger

from vsrcbench import VsrcWorkbench
from vsrcbench.instances import GenSpec

workbench = VsrcWorkbench(logger=logger, budget=10**6)

# a handful of random cacti; the cactus algorithm is exact, so the bounds report shows how far each engine is off
for seed in range(5):
    graph = workbench.generate(GenSpec(family="random_cactus", blocks=6, max_len=7, seed=seed))
    record = workbench.compute(graph, "cactus")
    _, report = workbench.bounds(graph)
    reuse = record.certificates["reuse"]
    logger.info(f"seed={seed} vsrc={record.k} bounds={report.lower}..{report.upper} reuse={reuse}")
    for bound in report.upper_bounds:
        if bound.k > record.k:
            logger.debug(f"  {bound.method} overshoots by {bound.k - record.k}")

# odd cycles only, no bridges: every edge is either REM or OPP
graph = workbench.generate(GenSpec(family="random_cactus", blocks=4, cycles="odd", allow_bridges=False, seed=7))
record = workbench.compute(graph, "cactus")
logger.info(f"odd-only cactus n={graph.n} m={graph.m} vsrc={record.k} budget={record.certificates['color_budget']}")

# the same experiment suites the CLI runs are available directly
table = workbench.experiment("cactus-vs-exact", seeds=20)
logger.info(f"{len(table.failures())} failures in {table.runtime}")
