import pytest
from hypothesis import given, settings
from strategies import connected_graphs

from vsrcbench.bounds import (
    arcs_intersect,
    chordal_coloring,
    circular_arc_coloring,
    circular_arc_representation,
    clique_partition_exact,
    clique_tree,
    coloring_from_clique_partition,
    coloring_from_ecc,
    coloring_from_intersection_rep,
    describe_bounds,
    edge_clique_cover_exact,
    edge_clique_cover_from_orientation,
    greedy_edge_clique_cover,
    groupability_number,
    hat_cp3_coloring,
    hat_graph,
    is_chordal,
    k_perfectly_groupable,
    lexbfs,
    line_graph_representation,
    perfect_elimination_order,
    validate_clique_partition,
    validate_edge_clique_cover,
    vsrc_bounds,
)
from vsrcbench.conflict import verify_coloring
from vsrcbench.errors import (
    ArcMismatch,
    BadParameters,
    BudgetExceeded,
    InvalidCover,
    InvalidPartition,
    NotARepresentation,
    NotChordal,
    TooManyParts,
)
from vsrcbench.exact import vsrc_exact
from vsrcbench.graph import Graph
from vsrcbench.instances import complete_graph, cycle_graph, path_graph, random_chordal, star_graph
from vsrcbench.models import CliquePartition, EdgeCliqueCover, IntersectionRep

C4_ARCS = [(0, 100), (90, 190), (180, 280), (270, 10)]


@pytest.mark.parametrize(
    "parts, message",
    [
        ([[0, 1], []], "empty part"),
        ([[0, 1], [1, 2, 3]], "more than one part"),
        ([[0, 2], [1, 3]], "does not induce a clique"),
        ([[0, 1], [2]], "vertex 3 is not covered"),
        ([[0, 1], [2, 3], [7]], "not a vertex"),
    ],
)
def test_validate_clique_partition__rejects(c4, parts, message):
    with pytest.raises(InvalidPartition, match=message):
        validate_clique_partition(c4, CliquePartition(parts=parts))


def test_coloring_from_clique_partition__pairs_of_parts(k4):
    coloring = coloring_from_clique_partition(k4, CliquePartition(parts=[[0, 1], [2, 3]]))
    assert coloring.k == 3
    assert verify_coloring(k4, coloring).valid


@pytest.mark.parametrize("graph, parts", [(complete_graph(5), 1), (cycle_graph(5), 3), (path_graph(4), 2)])
def test_clique_partition_exact(graph, parts):
    partition = clique_partition_exact(graph)
    assert len(partition.parts) == parts
    validate_clique_partition(graph, partition)


def test_intersection_rep__coloring_and_rejection(p3):
    rep = IntersectionRep(universe=["a", "b"], sets={0: ["a"], 1: ["a", "b"], 2: ["b"]})
    coloring = coloring_from_intersection_rep(p3, rep)
    assert coloring.k == 2
    assert verify_coloring(p3, coloring).valid

    wrong = IntersectionRep(universe=["a"], sets={0: ["a"], 1: ["a"], 2: ["a"]})
    with pytest.raises(NotARepresentation) as exc_info:
        coloring_from_intersection_rep(p3, wrong)
    assert exc_info.value.pair == (0, 2)
    assert not exc_info.value.is_edge

    with pytest.raises(BadParameters):
        coloring_from_intersection_rep(p3, IntersectionRep(universe=["a"], sets={0: ["z"], 1: [], 2: []}))


def test_edge_clique_cover__bowtie(bowtie):
    cover = greedy_edge_clique_cover(bowtie)
    assert cover.cliques == [[0, 1, 2], [0, 3, 4]]
    coloring = coloring_from_ecc(bowtie, cover)
    assert coloring.k == 2
    assert coloring.k == vsrc_exact(bowtie)[0]


def test_edge_clique_cover__rejects(c4):
    with pytest.raises(InvalidCover, match="does not induce a clique"):
        validate_edge_clique_cover(c4, EdgeCliqueCover(cliques=[[0, 2]]))
    with pytest.raises(InvalidCover, match="edge 0-3 is not covered"):
        validate_edge_clique_cover(c4, EdgeCliqueCover(cliques=[[0, 1], [1, 2], [2, 3]]))


def test_edge_clique_cover_exact(k4, c5):
    assert edge_clique_cover_exact(k4).cliques == [[0, 1, 2, 3]]
    assert len(edge_clique_cover_exact(c5).cliques) == 5


@settings(max_examples=50, deadline=None)
@given(connected_graphs(max_n=7))
def test_edge_clique_cover_exact__never_worse_than_greedy(g):
    exact = edge_clique_cover_exact(g)
    validate_edge_clique_cover(g, exact)
    assert len(exact.cliques) <= len(greedy_edge_clique_cover(g).cliques)
    assert verify_coloring(g, coloring_from_ecc(g, exact)).valid


def test_edge_clique_cover_from_orientation(k4):
    forward = {u: [v for v in range(4) if v > u] for u in range(4)}
    cover = edge_clique_cover_from_orientation(k4, forward)
    assert cover.cliques == [[0, 1, 2, 3], [1, 2, 3], [2, 3]]
    with pytest.raises(InvalidCover, match="unoriented"):
        edge_clique_cover_from_orientation(k4, {0: [1, 2, 3]})


def test_edge_clique_cover_from_orientation__non_edge(p3):
    with pytest.raises(InvalidCover, match="not an edge"):
        edge_clique_cover_from_orientation(p3, {0: [1, 2]})


def test_groupability__star_centre_fails():
    star = star_graph(5)
    report = k_perfectly_groupable(star, 3)
    assert not report.groupable
    assert report.failing_vertex == 0
    assert report.cliques_needed == 4
    assert k_perfectly_groupable(star, 4).groupable
    assert groupability_number(star) == 4


def test_groupability__complete_graph(k4):
    report = k_perfectly_groupable(k4, 1)
    assert report.groupable
    assert report.partitions[0] == [[1, 2, 3]]


def test_lexbfs_and_elimination_order(p5):
    assert lexbfs(p5) == [0, 1, 2, 3, 4]
    assert perfect_elimination_order(p5) == [4, 3, 2, 1, 0]
    assert is_chordal(complete_graph(5))


def test_perfect_elimination_order__cycle_is_not_chordal(c6):
    with pytest.raises(NotChordal) as exc_info:
        perfect_elimination_order(c6)
    assert sorted(exc_info.value.cycle) == list(range(6))
    assert not is_chordal(c6)


def test_clique_tree__path(p5):
    tree = clique_tree(p5)
    assert tree.nodes == [[0, 1], [1, 2], [2, 3], [3, 4]]
    assert tree.tree_edges == [(0, 1), (1, 2), (2, 3)]


@pytest.mark.parametrize("seed", range(10))
def test_chordal_coloring__random_chordal(seed):
    g = random_chordal(9, 0.6, seed)
    coloring = chordal_coloring(g)
    assert verify_coloring(g, coloring).valid
    tree = clique_tree(g)
    omega = max(len(node) for node in tree.nodes)
    assert coloring.k <= g.n - omega + 1


def test_arcs_intersect():
    assert arcs_intersect((0, 100), (90, 190))
    assert arcs_intersect((350, 20), (10, 30))
    assert not arcs_intersect((0, 100), (180, 280))


def test_circular_arc_representation__four_cycle(c4):
    rep = circular_arc_representation(C4_ARCS, c4)
    assert rep.sets == {0: [0, 3], 1: [0, 1], 2: [1, 2], 3: [2, 3]}
    coloring = circular_arc_coloring(C4_ARCS, c4)
    assert verify_coloring(c4, coloring).valid


def test_circular_arc_representation__mismatch(p4):
    with pytest.raises(ArcMismatch) as exc_info:
        circular_arc_representation(C4_ARCS, p4)
    assert exc_info.value.pair == (0, 3)
    assert exc_info.value.arcs_intersect
    with pytest.raises(BadParameters):
        circular_arc_representation(C4_ARCS[:3], p4)


def test_line_graph_representation():
    line, rep = line_graph_representation(star_graph(4))
    assert line == complete_graph(3)
    assert coloring_from_intersection_rep(line, rep).k == 1

    line, rep = line_graph_representation(path_graph(4))
    assert line == path_graph(3)
    coloring = coloring_from_intersection_rep(line, rep)
    assert coloring.k == 2
    assert verify_coloring(line, coloring).valid

    with pytest.raises(BadParameters):
        line_graph_representation(path_graph(1))


def test_hat_graph(p3):
    assert hat_graph(path_graph(1)) == path_graph(2)
    hat = hat_graph(p3)
    assert hat.n == 4
    assert hat.m == 5


@pytest.mark.parametrize(
    "graph, parts",
    [
        (path_graph(3), [[0, 1], [2]]),
        (Graph.from_edges(3, [], require_connected=False), [[0], [1], [2]]),
        (cycle_graph(4), [[0, 1], [2, 3]]),
    ],
    ids=["p3", "three-singletons", "c4"],
)
def test_hat_cp3_coloring(graph, parts):
    coloring = hat_cp3_coloring(graph, CliquePartition(parts=parts))
    assert coloring.k == 3
    assert verify_coloring(hat_graph(graph), coloring).valid


def test_hat_cp3_coloring__singletons_color_the_star_spokes():
    edgeless = Graph.from_edges(3, [], require_connected=False)
    hat = hat_graph(edgeless)
    assert hat.edges == ((0, 3), (1, 3), (2, 3))
    coloring = hat_cp3_coloring(edgeless, CliquePartition(parts=[[0], [1], [2]]))
    assert sorted(coloring.colors.values()) == [0, 1, 2]


def test_hat_cp3_coloring__cross_edges_take_the_third_color(c4):
    hat = hat_graph(c4)
    coloring = hat_cp3_coloring(c4, CliquePartition(parts=[[0, 1], [2, 3]]))
    color_of = {hat.edge(edge_id): color for edge_id, color in coloring.colors.items()}
    inner = {color_of[(0, 1)], color_of[(2, 3)]}
    assert len(inner) == 2
    assert color_of[(1, 2)] == color_of[(0, 3)]
    assert color_of[(1, 2)] not in inner
    assert color_of[(0, 4)] == color_of[(1, 4)] == color_of[(0, 1)]
    assert color_of[(2, 4)] == color_of[(3, 4)] == color_of[(2, 3)]


def test_hat_cp3_coloring__too_many_parts():
    edgeless = Graph.from_edges(4, [], require_connected=False)
    with pytest.raises(TooManyParts):
        hat_cp3_coloring(edgeless, CliquePartition(parts=[[0], [1], [2], [3]]))


@pytest.mark.parametrize(
    "graph, lower, upper",
    [(path_graph(5), 4, 4), (cycle_graph(6), 3, 3), (complete_graph(4), 1, 1)],
)
def test_vsrc_bounds__tight_examples(graph, lower, upper):
    report = vsrc_bounds(graph)
    assert report.lower == lower
    assert report.upper == upper
    assert report.tight
    assert all(bound.verified for bound in report.upper_bounds if bound.coloring is not None)


def test_vsrc_bounds__skips_inapplicable_engines(c6, k4):
    assert "chordal" in vsrc_bounds(c6).skipped
    assert "cactus" in vsrc_bounds(k4).skipped


def test_vsrc_bounds__groupable_needs_small_neighborhoods():
    report = vsrc_bounds(star_graph(6), max_neighborhood=3)
    assert "groupable" in report.skipped
    assert report.lower == 5


def test_describe_bounds(p5):
    summary = describe_bounds(vsrc_bounds(p5))
    assert summary == {"lower": 4, "lower_method": "diameter", "upper": 4, "upper_method": "ecc", "tight": True}


@settings(max_examples=50, deadline=None)
@given(connected_graphs(max_n=7))
def test_vsrc_bounds__sandwich_exact(g):
    report = vsrc_bounds(g)
    exact, _ = vsrc_exact(g)
    assert report.lower <= exact <= report.upper
    assert all(bound.verified is not False for bound in report.upper_bounds)


def test_vsrc_bounds__exact_cover_over_budget_falls_back_to_greedy(mocker, bowtie):
    mocker.patch("vsrcbench.bounds.edge_clique_cover_exact", side_effect=BudgetExceeded(1, 2, 3))
    report = vsrc_bounds(bowtie)
    assert "ecc" in report.skipped
    greedy = next(bound for bound in report.upper_bounds if bound.method == "ecc-greedy")
    assert greedy.k == 2
    assert greedy.verified
