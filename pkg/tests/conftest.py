import pytest
from logzero import logger as logzero_logger

from vsrcbench import VsrcWorkbench
from vsrcbench.graph import Graph
from vsrcbench.instances import complete_graph, cycle_graph, path_graph


@pytest.fixture()
def logger():
    return logzero_logger


@pytest.fixture()
def workbench(logger) -> VsrcWorkbench:
    return VsrcWorkbench(logger=logger, budget=10**6)


@pytest.fixture()
def p3() -> Graph:
    return path_graph(3)


@pytest.fixture()
def p4() -> Graph:
    return path_graph(4)


@pytest.fixture()
def p5() -> Graph:
    return path_graph(5)


@pytest.fixture()
def k3() -> Graph:
    return complete_graph(3)


@pytest.fixture()
def k4() -> Graph:
    return complete_graph(4)


@pytest.fixture()
def c4() -> Graph:
    return cycle_graph(4)


@pytest.fixture()
def c5() -> Graph:
    return cycle_graph(5)


@pytest.fixture()
def c6() -> Graph:
    return cycle_graph(6)


@pytest.fixture()
def c5_pendant() -> Graph:
    """C5 on 0..4 with pendant edge 0-5."""
    return Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)])


@pytest.fixture()
def bowtie() -> Graph:
    """Two triangles sharing vertex 0."""
    return Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])


@pytest.fixture()
def write_graph(tmp_path):
    def _write(graph: Graph, name: str = "graph.txt"):
        path = tmp_path / name
        path.write_text(graph.to_edge_list())
        return path

    return _write
