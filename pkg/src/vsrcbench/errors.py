from typing import Optional


class VsrcError(Exception):
    """Common parent for every error raised by vsrcbench."""


class GraphParseError(VsrcError, ValueError):
    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class MalformedLine(GraphParseError):
    pass


class SelfLoop(GraphParseError):
    def __init__(self, vertex: int, line_no: Optional[int] = None):
        self.vertex = vertex
        super().__init__(f"self-loop at vertex {vertex}", line_no)


class DuplicateEdge(GraphParseError):
    def __init__(self, edge: tuple[int, int], line_no: Optional[int] = None):
        self.edge = edge
        super().__init__(f"duplicate edge {edge[0]}-{edge[1]}", line_no)


class Disconnected(GraphParseError):
    def __init__(self, unreachable: int, line_no: Optional[int] = None):
        self.unreachable = unreachable
        super().__init__(f"graph is disconnected; vertex {unreachable} is unreachable from vertex 0", line_no)


class ColoringParseError(VsrcError, ValueError):
    pass


class IncompleteColoring(ColoringParseError):
    def __init__(self, missing: list[tuple[int, int]]):
        self.missing = missing
        shown = ", ".join(f"{u}-{v}" for u, v in missing[:5])
        super().__init__(f"coloring leaves {len(missing)} edge(s) uncolored: {shown}")


class NotCactus(VsrcError, ValueError):
    def __init__(self, block):
        self.block = block
        super().__init__(
            f"block with {len(block.vertices)} vertices and {len(block.edge_ids)} edges is neither a bridge nor a cycle"
        )


class NotChordal(VsrcError, ValueError):
    def __init__(self, cycle: list[int]):
        self.cycle = cycle
        super().__init__(f"chordless cycle of length {len(cycle)}: {'-'.join(map(str, cycle))}")


class InvalidPartition(VsrcError, ValueError):
    pass


class InvalidCover(VsrcError, ValueError):
    pass


class NotARepresentation(VsrcError, ValueError):
    def __init__(self, pair: tuple[int, int], is_edge: bool):
        self.pair = pair
        self.is_edge = is_edge
        if is_edge:
            message = f"edge {pair[0]}-{pair[1]} has an empty set intersection"
        else:
            message = f"non-edge {pair[0]}-{pair[1]} has a nonempty set intersection"
        super().__init__(message)


class ArcMismatch(VsrcError, ValueError):
    def __init__(self, pair: tuple[int, int], arcs_intersect: bool):
        self.pair = pair
        self.arcs_intersect = arcs_intersect
        relation = "intersect but are not adjacent" if arcs_intersect else "are adjacent but do not intersect"
        super().__init__(f"arcs of vertices {pair[0]} and {pair[1]} {relation}")


class TooManyParts(VsrcError, ValueError):
    pass


class BadParameters(VsrcError, ValueError):
    pass


class BudgetExceeded(VsrcError, RuntimeError):
    def __init__(self, lower: int, upper: int, nodes: int):
        self.lower = lower
        self.upper = upper
        self.nodes = nodes
        super().__init__(f"search budget exhausted after {nodes} nodes; best bounds {lower} <= chi <= {upper}")


class CapExceeded(VsrcError, RuntimeError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"more than {cap} shortest paths; the enumeration oracle refuses this instance")


class InternalAssertion(VsrcError, RuntimeError):
    """Raised when a structural guarantee of the cactus algorithm fails; always a bug upstream."""


class DegreeViolation(InternalAssertion):
    pass


class NoReuseEdge(InternalAssertion):
    pass
