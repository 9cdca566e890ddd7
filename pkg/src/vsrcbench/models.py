from collections.abc import Hashable, Mapping
from typing import TYPE_CHECKING, Any, ClassVar, Optional, TypeVar, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .errors import ColoringParseError, IncompleteColoring
from .utils import decode_edge_key, encode_edge_key

if TYPE_CHECKING:
    from .graph import Graph

_T = TypeVar("_T")

Label = Union[int, str]


class ResultTable(list[_T]):
    """A list of experiment rows that also carries run-level facts about how it was produced."""

    suite: str = ""
    runtime_ms: Optional[float] = None
    runtime: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self)

    def failures(self) -> list[_T]:
        return [row for row in self if not row.passed]

    def skipped(self) -> list[_T]:
        return [row for row in self if getattr(row, "skipped", False)]

    def as_list(self) -> list[_T]:
        return self


class Coloring(BaseModel):
    """Edge id -> color index in [0, k); build with `from_labels` to get canonical class numbering."""

    colors: dict[int, int]
    k: int

    model_config: ClassVar[ConfigDict] = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def _k_counts_the_colors(self) -> "Coloring":
        used = set(self.colors.values())
        if used != set(range(self.k)):
            raise ValueError(f"k={self.k} but the colors used are {sorted(used)}; expected exactly 0..{self.k - 1}")
        return self

    @classmethod
    def from_labels(cls, labels: Mapping[int, Hashable]) -> "Coloring":
        """Number color classes by the lowest edge id they contain, so equal partitions give equal colorings."""
        numbering: dict[Hashable, int] = {}
        colors: dict[int, int] = {}
        for edge_id in sorted(labels):
            label = labels[edge_id]
            if label not in numbering:
                numbering[label] = len(numbering)
            colors[edge_id] = numbering[label]
        return cls(colors=colors, k=len(numbering))

    def color_classes(self) -> list[list[int]]:
        classes: list[list[int]] = [[] for _ in range(self.k)]
        for edge_id in sorted(self.colors):
            classes[self.colors[edge_id]].append(edge_id)
        return classes

    def missing_edges(self, graph: "Graph") -> list[int]:
        return [edge_id for edge_id in range(graph.m) if edge_id not in self.colors]

    def to_json_dict(self, graph: "Graph") -> dict:
        return {
            "k": self.k,
            "colors": {encode_edge_key(*graph.edge(edge_id)): color for edge_id, color in sorted(self.colors.items())},
        }

    @classmethod
    def from_json_dict(cls, graph: "Graph", data: Any) -> "Coloring":
        """Load the ``{"k": int, "colors": {"<u>-<v>": int}}`` document for `graph`.

        Labels are renumbered canonically; the caller decides what to do about a declared ``k`` that disagrees with
        the number of distinct colors (see `declared_k`).
        """
        if not isinstance(data, dict) or not isinstance(data.get("colors"), dict):
            raise ColoringParseError("coloring document must be an object with a 'colors' object")
        labels: dict[int, Hashable] = {}
        for key, color in data["colors"].items():
            try:
                u, v = decode_edge_key(key)
            except ValueError as e:
                raise ColoringParseError(str(e)) from None
            if not graph.has_edge(u, v):
                raise ColoringParseError(f"coloring names {key} which is not an edge of the graph")
            edge_id = graph.edge_id(u, v)
            if edge_id in labels:
                raise ColoringParseError(f"edge {key} is colored twice")
            if not isinstance(color, int) or isinstance(color, bool):
                raise ColoringParseError(f"color of {key} must be an integer, got {color!r}")
            labels[edge_id] = color
        coloring = cls.from_labels(labels)
        if missing := coloring.missing_edges(graph):
            raise IncompleteColoring([graph.edge(edge_id) for edge_id in missing])
        return coloring

    @staticmethod
    def declared_k(data: Any) -> Optional[int]:
        if isinstance(data, dict) and isinstance(data.get("k"), int):
            return data["k"]
        return None


class ViolationWitness(BaseModel):
    """A shortest path (vertex sequence) and two edges on it that share a color."""

    path: list[int]
    edge_ids: tuple[int, int]
    edges: tuple[str, str]
    color: int


class VerificationReport(BaseModel):
    valid: bool
    violation: Optional[ViolationWitness] = None


class ChromaticResult(BaseModel):
    chi: int
    witness: dict[int, int]
    lower_bound: int
    nodes_explored: int = 0
    engine: str = "dsatur"


class CliquePartition(BaseModel):
    parts: list[list[int]]


class EdgeCliqueCover(BaseModel):
    cliques: list[list[int]]


class IntersectionRep(BaseModel):
    """Per-vertex subsets of a labelled universe whose intersection graph should equal the target graph."""

    universe: list[Label]
    sets: dict[int, list[Label]]


class GroupabilityReport(BaseModel):
    k: int
    groupable: bool
    partitions: dict[int, list[list[int]]] = Field(
        default_factory=dict,
        description="For every checked vertex, a minimum partition of its neighborhood into cliques.",
    )
    failing_vertex: Optional[int] = None
    cliques_needed: Optional[int] = None


class LowerBound(BaseModel):
    method: str
    k: int
    detail: Optional[str] = None


class UpperBound(BaseModel):
    method: str
    k: int
    coloring: Optional[Coloring] = None
    verified: Optional[bool] = None


class BoundsReport(BaseModel):
    lower: int
    upper: int
    lower_bounds: list[LowerBound]
    upper_bounds: list[UpperBound]
    skipped: dict[str, str] = Field(default_factory=dict)

    @property
    def tight(self) -> bool:
        return self.lower == self.upper

    def best_upper(self) -> Optional[UpperBound]:
        verified = [bound for bound in self.upper_bounds if bound.coloring is not None and bound.verified]
        return min(verified, key=lambda bound: bound.k, default=None)


class RunRecord(BaseModel):
    command: str
    input_digest: str
    method: Optional[str] = None
    k: Optional[int] = None
    runtime_ms: float = 0.0
    runtime: str = ""
    valid: Optional[bool] = None
    coloring: Optional[dict] = None
    violation: Optional[ViolationWitness] = None
    certificates: dict[str, Any] = Field(default_factory=dict)

    def stable_dump(self) -> dict:
        """The record without timing fields; identical inputs and flags give identical stable dumps."""
        return self.model_dump(mode="json", exclude={"runtime_ms", "runtime"})


class ExperimentRow(BaseModel):
    suite: str
    seed: int
    instance: str
    expected: Optional[Union[int, bool, str]] = None
    observed: Optional[Union[int, bool, str]] = None
    passed: bool
    skipped: bool = False
    detail: Optional[str] = None
