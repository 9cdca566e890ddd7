import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from strategies import cacti, connected_graphs

from vsrcbench.errors import Disconnected, DuplicateEdge, MalformedLine, NotCactus, SelfLoop
from vsrcbench.graph import (
    BlockKind,
    Graph,
    all_pairs_distances,
    blocks,
    bridges,
    cactus_decomposition,
    complement,
    diameter,
    is_bipartite,
    parse_graph,
)
from vsrcbench.instances import complete_graph, cycle_graph, path_graph


def test_parse_graph__header_and_edges():
    g = parse_graph("p 3 2\n0 1\n1 2\n")
    assert g.n == 3
    assert g.m == 2
    assert g.edges == ((0, 1), (1, 2))


def test_parse_graph__no_header_comments_and_blank_lines():
    g = parse_graph("# a triangle\n\n0 1\n1 2\n  # still a comment\n2 0\n")
    assert g.n == 3
    assert g.edges == ((0, 1), (1, 2), (0, 2))
    assert g.edge_id(2, 0) == 2


def test_parse_graph__disconnected():
    with pytest.raises(Disconnected) as exc_info:
        parse_graph("0 1\n2 3\n")
    assert exc_info.value.unreachable == 2


def test_parse_graph__disconnected_allowed_on_request():
    g = parse_graph("0 1\n2 3\n", require_connected=False)
    assert not g.is_connected()


def test_parse_graph__self_loop_names_line():
    with pytest.raises(SelfLoop) as exc_info:
        parse_graph("0 1\n1 1\n")
    assert exc_info.value.line_no == 2
    assert "line 2" in str(exc_info.value)


def test_parse_graph__duplicate_edge_in_either_orientation():
    with pytest.raises(DuplicateEdge) as exc_info:
        parse_graph("0 1\n1 2\n1 0\n")
    assert exc_info.value.edge == (0, 1)
    assert exc_info.value.line_no == 3


@pytest.mark.parametrize(
    "text",
    [
        "0 x\n",
        "0 1 2\n",
        "p 3 5\n0 1\n1 2\n",
        "p 2 1\n0 2\n",
        "0 1\np 2 1\n",
        "-1 0\n",
        "# nothing here\n",
    ],
)
def test_parse_graph__malformed(text):
    with pytest.raises(MalformedLine):
        parse_graph(text)


def test_parse_graph__single_vertex_from_header():
    g = parse_graph("p 1 0\n")
    assert g.n == 1
    assert g.m == 0


def test_edge_list_writes_back_the_same_graph(bowtie):
    assert parse_graph(bowtie.to_edge_list()) == bowtie


def test_graph_equality_ignores_cached_views(c5):
    other = cycle_graph(5)
    c5.to_networkx()
    assert c5 == other


def test_from_edges__label_out_of_range():
    with pytest.raises(MalformedLine):
        Graph.from_edges(2, [(0, 2)])


def test_all_pairs_distances__examples(p3, c5, k4):
    assert all_pairs_distances(p3)(0, 2) == 2
    assert all_pairs_distances(c5)(1, 4) == 2
    d = all_pairs_distances(k4)
    assert all(d(u, v) == 1 for u in range(4) for v in range(4) if u != v)


@settings(max_examples=60, deadline=None)
@given(connected_graphs())
def test_all_pairs_distances__metric(g):
    d = all_pairs_distances(g).d
    assert (np.diag(d) == 0).all()
    assert (d == d.T).all()
    assert d.max() <= g.n - 1
    for u in range(g.n):
        for v in range(g.n):
            assert (d[u, v] == 1) == g.has_edge(u, v)
            assert (d[u, v] <= d[u, :] + d[:, v]).all()


def test_blocks__path_is_all_bridges(p4):
    found = blocks(p4)
    assert [block.kind for block in found] == [BlockKind.BRIDGE] * 3


def test_blocks__even_cycle(c6):
    (block,) = blocks(c6)
    assert block.kind == BlockKind.CYCLE
    assert block.length == 6
    assert block.cycle_order == (0, 1, 2, 3, 4, 5)
    for i, edge_id in enumerate(block.cycle_edge_ids):
        assert set(c6.edge(edge_id)) == {block.cycle_order[i], block.cycle_order[(i + 1) % 6]}


def test_blocks__bowtie_has_two_cycles(bowtie):
    found = blocks(bowtie)
    assert [block.kind for block in found] == [BlockKind.CYCLE, BlockKind.CYCLE]
    assert found[0].edge_ids == (0, 1, 2)


def test_cactus_decomposition__cycle_with_pendant(c5_pendant):
    cd = cactus_decomposition(c5_pendant)
    kinds = sorted(block.kind.value for block in cd.blocks)
    assert kinds == ["bridge", "cycle"]
    assert cd.block_of(5).kind == BlockKind.BRIDGE


def test_cactus_decomposition__two_cycles_joined_by_bridge():
    g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 3)])
    cd = cactus_decomposition(g)
    assert len(cd.cycle_blocks()) == 2
    assert [block.kind for block in cd.blocks].count(BlockKind.BRIDGE) == 1
    assert sorted(cd.edge_to_block) == list(range(g.m))


def test_cactus_decomposition__k4_is_not_a_cactus(k4):
    with pytest.raises(NotCactus) as exc_info:
        cactus_decomposition(k4)
    assert len(exc_info.value.block.vertices) == 4
    assert len(exc_info.value.block.edge_ids) == 6


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=9))
def test_bridges_match_deletion_test(g):
    nx_graph = g.to_networkx()
    expected = []
    for edge_id, (u, v) in enumerate(g.edges):
        pruned = nx_graph.copy()
        pruned.remove_edge(u, v)
        if not nx.is_connected(pruned):
            expected.append(edge_id)
    assert bridges(g) == expected


@settings(max_examples=60, deadline=None)
@given(connected_graphs())
def test_cactus_edge_count_bound(g):
    try:
        cactus_decomposition(g)
    except NotCactus:
        return
    assert g.m <= 3 * (g.n - 1) // 2


@settings(max_examples=40, deadline=None)
@given(cacti())
def test_blocks_partition_the_edges(g):
    cd = cactus_decomposition(g)
    seen = [edge_id for block in cd.blocks for edge_id in block.edge_ids]
    assert sorted(seen) == list(range(g.m))


def test_is_bipartite__examples(c4, c5):
    assert is_bipartite(c4) == (True, None)
    assert is_bipartite(path_graph(7)) == (True, None)
    bipartite, cycle = is_bipartite(c5)
    assert not bipartite
    assert len(cycle) == 5
    assert all(c5.has_edge(cycle[i], cycle[(i + 1) % 5]) for i in range(5))


def test_is_bipartite__accepts_networkx_graphs():
    bipartite, cycle = is_bipartite(nx.cycle_graph(7))
    assert not bipartite
    assert len(cycle) == 7


def test_diameter_and_complement(p4):
    assert diameter(p4) == 3
    assert diameter(complete_graph(5)) == 1
    assert complement(p4).edges == ((0, 2), (0, 3), (1, 3))
