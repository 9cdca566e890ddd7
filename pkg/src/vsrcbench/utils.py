import hashlib
import json
import time
from pathlib import Path
from typing import TYPE_CHECKING, Any

from humanize import precisedelta

if TYPE_CHECKING:
    from .graph import Graph


def _now() -> float:
    # this function exists only to make it easy to mock the clock when timing runs in the tests
    return time.perf_counter()


def encode_edge_key(u: int, v: int) -> str:
    """Turn an edge into the ``"<u>-<v>"`` key used by the coloring JSON documents."""
    if u > v:
        u, v = v, u
    return f"{u}-{v}"


def decode_edge_key(key: str) -> tuple[int, int]:
    """Turn a ``"<u>-<v>"`` key back into a vertex pair; raises ValueError on anything else."""
    left, sep, right = key.partition("-")
    if not sep:
        raise ValueError(f"edge key {key!r} is not of the form '<u>-<v>'")
    return int(left), int(right)


def input_digest(graph: "Graph") -> str:
    """sha256 over the canonical edge list; identical graphs give identical digests regardless of comments."""
    return hashlib.sha256(graph.to_edge_list().encode()).hexdigest()


def elapsed_ms(started_at: float) -> float:
    return round((_now() - started_at) * 1000, 3)


def describe_runtime(runtime_ms: float) -> str:
    return precisedelta(runtime_ms / 1000, minimum_unit="milliseconds", format="%0.1f")


def read_json(path: Path | str) -> Any:
    return json.loads(Path(path).read_text())


def dump_json(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True)
