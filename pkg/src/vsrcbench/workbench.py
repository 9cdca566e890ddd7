from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Optional

from .bounds import GROUPABLE_MAX_NEIGHBORHOOD, describe_bounds, vsrc_bounds
from .cactus import color_cactus_detailed
from .conflict import DEFAULT_ORACLE_CAP, verify_coloring
from .errors import NotCactus
from .exact import DEFAULT_BUDGET, IE_MAX_VERTICES, vsrc_exact_result
from .graph import Graph, cactus_decomposition, parse_graph
from .instances import GenSpec, generate, reduce_3col
from .models import BoundsReport, Coloring, ExperimentRow, ResultTable, RunRecord
from .suites import run_suite
from .utils import _now, describe_runtime, elapsed_ms, encode_edge_key, input_digest


class Constants:
    DEFAULT_BUDGET = DEFAULT_BUDGET
    ORACLE_CAP = DEFAULT_ORACLE_CAP
    IE_MAX_VERTICES = IE_MAX_VERTICES
    GROUPABLE_MAX_NEIGHBORHOOD = GROUPABLE_MAX_NEIGHBORHOOD
    DEFAULT_EXPERIMENT_SEEDS = 100


class Method(str, Enum):
    AUTO = "auto"
    CACTUS = "cactus"
    EXACT = "exact"


@dataclass
class VsrcWorkbench:
    """Runs the library operations behind the command line and packages their results as `RunRecord`s.

    Every coloring a command produces is verified again here before it is reported.
    """

    logger: Any
    budget: int = Constants.DEFAULT_BUDGET
    oracle_cap: int = Constants.ORACLE_CAP
    max_neighborhood: int = Constants.GROUPABLE_MAX_NEIGHBORHOOD
    workers: int = 1

    def load_graph(self, path: Path | str, require_connected: bool = True) -> Graph:
        graph = parse_graph(Path(path).read_text(), require_connected=require_connected)
        self.logger.debug(f"loaded graph from {path}: n={graph.n} m={graph.m}")
        return graph

    def compute(self, graph: Graph, method: Method | str = Method.AUTO) -> RunRecord:
        method = Method(method)
        started_at = _now()
        if method == Method.AUTO:
            try:
                cactus_decomposition(graph)
                method = Method.CACTUS
            except NotCactus as e:
                self.logger.debug(f"falling back to exact search: {e}")
                method = Method.EXACT

        if method == Method.CACTUS:
            result = color_cactus_detailed(graph)
            coloring = result.coloring
            certificates = {
                "color_budget": result.budget,
                "reuse": {
                    encode_edge_key(*graph.edge(opp)): encode_edge_key(*graph.edge(source))
                    for opp, source in sorted(result.reuse.items())
                },
            }
        else:
            chromatic, coloring = vsrc_exact_result(graph, budget=self.budget, logger=self.logger)
            certificates = {
                "engine": chromatic.engine,
                "clique_lower_bound": chromatic.lower_bound,
                "nodes_explored": chromatic.nodes_explored,
            }

        report = verify_coloring(graph, coloring)
        if not report.valid:
            self.logger.error(f"{method.value} produced a coloring that fails verification: {report.violation}")
        runtime_ms = elapsed_ms(started_at)
        self.logger.info(
            f"compute finished method={method.value} k={coloring.k} valid={report.valid} in "
            f"{describe_runtime(runtime_ms)}"
        )
        return RunRecord(
            command="compute",
            input_digest=input_digest(graph),
            method=method.value,
            k=coloring.k,
            runtime_ms=runtime_ms,
            runtime=describe_runtime(runtime_ms),
            valid=report.valid,
            coloring=coloring.to_json_dict(graph),
            violation=report.violation,
            certificates=certificates,
        )

    def verify(self, graph: Graph, coloring_document: Any) -> RunRecord:
        started_at = _now()
        coloring = Coloring.from_json_dict(graph, coloring_document)
        declared = Coloring.declared_k(coloring_document)
        if declared is not None and declared != coloring.k:
            self.logger.warning(f"coloring declares k={declared} but uses {coloring.k} distinct colors")
        report = verify_coloring(graph, coloring)
        runtime_ms = elapsed_ms(started_at)
        if report.valid:
            self.logger.info(f"coloring with k={coloring.k} is valid")
        else:
            self.logger.info(f"coloring is invalid; violation={report.violation}")
        return RunRecord(
            command="verify",
            input_digest=input_digest(graph),
            k=coloring.k,
            runtime_ms=runtime_ms,
            runtime=describe_runtime(runtime_ms),
            valid=report.valid,
            violation=report.violation,
        )

    def bounds(self, graph: Graph) -> tuple[RunRecord, BoundsReport]:
        started_at = _now()
        report = vsrc_bounds(graph, budget=self.budget, max_neighborhood=self.max_neighborhood)
        for method, reason in report.skipped.items():
            self.logger.warning(f"bound {method} skipped: {reason}")
        runtime_ms = elapsed_ms(started_at)
        summary = describe_bounds(report)
        self.logger.info(f"bounds {summary}")
        best = report.best_upper()
        verified = all(bound.verified is not False for bound in report.upper_bounds)
        return (
            RunRecord(
                command="bounds",
                input_digest=input_digest(graph),
                method=summary["upper_method"],
                k=report.upper,
                runtime_ms=runtime_ms,
                runtime=describe_runtime(runtime_ms),
                valid=verified and report.lower <= report.upper,
                coloring=best.coloring.to_json_dict(graph) if best else None,
                certificates=self._bounds_certificates(graph, report),
            ),
            report,
        )

    @staticmethod
    def _bounds_certificates(graph: Graph, report: BoundsReport) -> dict:
        return {
            "lower": report.lower,
            "upper": report.upper,
            "lower_bounds": [bound.model_dump() for bound in report.lower_bounds],
            "upper_bounds": [
                {
                    "method": bound.method,
                    "k": bound.k,
                    "verified": bound.verified,
                    "coloring": bound.coloring.to_json_dict(graph) if bound.coloring else None,
                }
                for bound in report.upper_bounds
            ],
            "skipped": report.skipped,
        }

    def generate(self, spec: GenSpec) -> Graph:
        graph = generate(spec)
        self.logger.info(f"generated {spec.label()} n={graph.n} m={graph.m}")
        return graph

    def reduce(self, graph: Graph) -> Graph:
        reduced = reduce_3col(graph)
        self.logger.info(f"reduced n={graph.n} m={graph.m} to n={reduced.n} m={reduced.m}")
        return reduced

    def experiment(
        self,
        suite: str,
        seeds: Optional[int] = None,
        max_size: Optional[int] = None,
        first_seed: int = 0,
    ) -> ResultTable[ExperimentRow]:
        started_at = _now()
        table = run_suite(
            suite,
            seeds=seeds,
            max_size=max_size,
            first_seed=first_seed,
            budget=self.budget,
            oracle_cap=self.oracle_cap,
            workers=self.workers,
        )
        table.runtime_ms = elapsed_ms(started_at)
        table.runtime = describe_runtime(table.runtime_ms)
        failures = table.failures()
        self.logger.info(f"suite {suite}: {len(table)} rows, {len(failures)} failing, in {table.runtime}")
        for row in failures:
            self.logger.warning(f"failing row {row.instance}: expected={row.expected} observed={row.observed}")
        return table
