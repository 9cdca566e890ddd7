"""Command line entry point.

Exit codes: 0 success, 1 semantic failure (invalid coloring, failing experiment rows, non-cactus input to the cactus
method), 2 unreadable input, 3 search budget or oracle cap exhausted, 4 internal assertion.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import logzero
from humanize import intcomma
from logzero import logger
from pydantic import ValidationError

from .errors import BudgetExceeded, CapExceeded, InternalAssertion, NotCactus, VsrcError
from .graph import Graph
from .instances import Family, GenSpec
from .models import RunRecord
from .suites import SUITES
from .utils import dump_json, read_json
from .workbench import Constants, Method, VsrcWorkbench


class ExitCode:
    OK = 0
    FAILURE = 1
    PARSE = 2
    BUDGET = 3
    INTERNAL = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vsrcbench", description="Very strong rainbow coloring workbench.")
    parser.add_argument("--verbose", "-v", action="store_true", help="log per-stage detail to stderr")
    parser.add_argument("--quiet", "-q", action="store_true", help="only log warnings and errors")
    commands = parser.add_subparsers(dest="command", required=True)

    def with_common(sub: argparse.ArgumentParser, needs_input: bool = True) -> argparse.ArgumentParser:
        if needs_input:
            sub.add_argument("--input", type=Path, required=True, help="edge-list file")
        sub.add_argument("--budget", type=int, default=Constants.DEFAULT_BUDGET, help="search node budget")
        sub.add_argument("--json", action="store_true", help="print the machine-readable record on stdout")
        sub.add_argument("--timing", action="store_true", help="include runtime fields in --json output")
        return sub

    compute = with_common(commands.add_parser("compute", help="compute vsrc and an optimal coloring"))
    compute.add_argument("--method", choices=[method.value for method in Method], default=Method.AUTO.value)

    verify = with_common(commands.add_parser("verify", help="check a coloring file against a graph"))
    verify.add_argument("--coloring", type=Path, required=True, help='{"k": int, "colors": {"<u>-<v>": int}}')

    with_common(commands.add_parser("bounds", help="lower and upper bounds with certificates"))

    generate = commands.add_parser("generate", help="write a generated instance as an edge list")
    generate.add_argument("--spec", type=Path, help="GenSpec JSON file; overrides the family flags")
    generate.add_argument("--family", choices=[family.value for family in Family])
    generate.add_argument("--n", type=int)
    generate.add_argument("--a", type=int)
    generate.add_argument("--b", type=int)
    generate.add_argument("--blocks", type=int)
    generate.add_argument("--max-len", type=int, default=7)
    generate.add_argument("--cycles", choices=["odd", "even"])
    generate.add_argument("--no-bridges", action="store_true")
    generate.add_argument("--p", type=float, default=0.5)
    generate.add_argument("--seed", type=int, help="required for the random families")
    generate.add_argument("--output", type=Path, help="write here instead of stdout")

    reduce = commands.add_parser("reduce", help="hat(complement(g)) for a 3-coloring instance g")
    reduce.add_argument("--input", type=Path, required=True)
    reduce.add_argument("--output", type=Path)

    experiment = with_common(commands.add_parser("experiment", help="run an acceptance suite"), needs_input=False)
    experiment.add_argument("--suite", choices=list(SUITES), required=True)
    experiment.add_argument("--seeds", type=int, help="number of instances (suite default otherwise)")
    experiment.add_argument("--seed", type=int, default=0, help="first seed")
    experiment.add_argument("--max-size", type=int, help="instance size limit (suite default otherwise)")
    experiment.add_argument("--workers", type=int, default=1)
    return parser


def _emit_record(record: RunRecord, args: argparse.Namespace):
    if args.json:
        data = record.model_dump(mode="json") if args.timing else record.stable_dump()
        print(dump_json(data))
        return
    print(f"{record.command}: k={record.k} method={record.method} valid={record.valid} ({record.runtime})")
    if record.violation:
        print(f"  shortest path {'-'.join(map(str, record.violation.path))}")
        first, second = record.violation.edges
        print(f"  edges {first} and {second} share color {record.violation.color}")
    if record.coloring:
        print(json.dumps(record.coloring, sort_keys=True))


def _exit_for(record: RunRecord) -> int:
    return ExitCode.OK if record.valid else ExitCode.FAILURE


def cmd_compute(workbench: VsrcWorkbench, args: argparse.Namespace) -> int:
    graph = workbench.load_graph(args.input)
    record = workbench.compute(graph, Method(args.method))
    _emit_record(record, args)
    return _exit_for(record)


def cmd_verify(workbench: VsrcWorkbench, args: argparse.Namespace) -> int:
    graph = workbench.load_graph(args.input)
    record = workbench.verify(graph, read_json(args.coloring))
    _emit_record(record, args)
    return _exit_for(record)


def cmd_bounds(workbench: VsrcWorkbench, args: argparse.Namespace) -> int:
    graph = workbench.load_graph(args.input)
    record, report = workbench.bounds(graph)
    if args.json:
        _emit_record(record, args)
    else:
        print(f"bounds: {report.lower} <= vsrc <= {report.upper}")
        for bound in report.lower_bounds:
            print(f"  lower {bound.method}: {bound.k}" + (f" ({bound.detail})" if bound.detail else ""))
        for bound in report.upper_bounds:
            print(f"  upper {bound.method}: {bound.k} verified={bound.verified}")
        for method, reason in report.skipped.items():
            print(f"  skipped {method}: {reason}")
    return _exit_for(record)


def _write_graph(graph: Graph, output: Optional[Path]):
    if output:
        output.write_text(graph.to_edge_list())
    else:
        sys.stdout.write(graph.to_edge_list())


def cmd_generate(workbench: VsrcWorkbench, args: argparse.Namespace) -> int:
    if args.spec:
        spec = GenSpec.model_validate(read_json(args.spec))
    else:
        if not args.family:
            logger.error("either --family or --spec is required")
            return ExitCode.PARSE
        if args.family.startswith("random_") and args.seed is None:
            logger.error("random families require an explicit --seed")
            return ExitCode.PARSE
        spec = GenSpec(
            family=args.family,
            n=args.n,
            a=args.a,
            b=args.b,
            blocks=args.blocks,
            max_len=args.max_len,
            cycles=args.cycles,
            allow_bridges=not args.no_bridges,
            p=args.p,
            seed=args.seed or 0,
        )
    _write_graph(workbench.generate(spec), args.output)
    return ExitCode.OK


def cmd_reduce(workbench: VsrcWorkbench, args: argparse.Namespace) -> int:
    graph = workbench.load_graph(args.input, require_connected=False)
    _write_graph(workbench.reduce(graph), args.output)
    return ExitCode.OK


def cmd_experiment(workbench: VsrcWorkbench, args: argparse.Namespace) -> int:
    table = workbench.experiment(args.suite, seeds=args.seeds, max_size=args.max_size, first_seed=args.seed)
    if args.json:
        data = {
            "suite": table.suite,
            "passed": table.passed,
            "rows": [row.model_dump(mode="json") for row in table],
        }
        if args.timing:
            data["runtime_ms"] = table.runtime_ms
        print(dump_json(data))
    else:
        for row in table:
            status = "skip" if row.skipped else "ok  " if row.passed else "FAIL"
            print(f"{status} {row.seed:>5} {row.instance:<28} expected={row.expected} observed={row.observed}")
        summary = f"{table.suite}: {intcomma(len(table) - len(table.failures()))}/{intcomma(len(table))} rows passed"
        if skipped := table.skipped():
            summary += f" ({intcomma(len(skipped))} skipped)"
        print(summary)
    return ExitCode.OK if table.passed else ExitCode.FAILURE


COMMANDS = {
    "compute": cmd_compute,
    "verify": cmd_verify,
    "bounds": cmd_bounds,
    "generate": cmd_generate,
    "reduce": cmd_reduce,
    "experiment": cmd_experiment,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logzero.loglevel(logging.DEBUG)
    elif args.quiet:
        logzero.loglevel(logging.WARNING)
    else:
        logzero.loglevel(logging.INFO)

    workbench = VsrcWorkbench(
        logger=logger,
        budget=getattr(args, "budget", Constants.DEFAULT_BUDGET),
        workers=getattr(args, "workers", 1),
    )
    try:
        return COMMANDS[args.command](workbench, args)
    except NotCactus as e:
        logger.error(f"input is not a cactus: {e}")
        return ExitCode.FAILURE
    except (BudgetExceeded, CapExceeded) as e:
        logger.error(str(e))
        return ExitCode.BUDGET
    except InternalAssertion as e:
        logger.error(f"internal assertion failed: {e}")
        return ExitCode.INTERNAL
    except (VsrcError, ValidationError, json.JSONDecodeError, OSError) as e:
        logger.error(str(e))
        return ExitCode.PARSE


if __name__ == "__main__":
    sys.exit(main())
