import networkx as nx
import pytest
from hypothesis import assume, given, settings
from strategies import cacti, connected_graphs

from vsrcbench.conflict import build_conflict_graph, verify_coloring
from vsrcbench.errors import BadParameters, BudgetExceeded
from vsrcbench.exact import (
    check_twbound_consistency,
    chromatic_number,
    chromatic_number_ie,
    decide_vsrc2,
    is_k_colorable_ie,
    max_clique_size,
    vsrc_exact,
    vsrc_exact_result,
)
from vsrcbench.instances import complete_bipartite_graph, complete_graph, cycle_graph, path_graph, star_graph


def _is_proper(h: nx.Graph, colors: dict) -> bool:
    return all(colors[u] != colors[v] for u, v in h.edges)


def test_chromatic_number__greedy_meets_clique():
    result = chromatic_number(nx.complete_graph(5))
    assert result.chi == 5
    assert result.engine == "dsatur-greedy"
    assert result.witness == {v: v for v in range(5)}


def test_chromatic_number__needs_search():
    grotzsch = nx.mycielski_graph(4)
    result = chromatic_number(grotzsch)
    assert result.chi == 4
    assert result.lower_bound == 2
    assert _is_proper(grotzsch, result.witness)
    assert max(result.witness.values()) == 3


def test_chromatic_number__empty_and_edgeless():
    assert chromatic_number(nx.Graph()).chi == 0
    assert chromatic_number(nx.empty_graph(4)).chi == 1


def test_chromatic_number__budget_exceeded(mocker):
    logger = mocker.Mock()
    with pytest.raises(BudgetExceeded) as exc_info:
        chromatic_number(nx.cycle_graph(5), budget=1, logger=logger)
    assert exc_info.value.lower == 2
    assert exc_info.value.upper == 3
    logger.debug.assert_called_once()


@settings(max_examples=80, deadline=None)
@given(connected_graphs(max_n=8))
def test_chromatic_number__agrees_with_inclusion_exclusion(g):
    h = g.to_networkx()
    result = chromatic_number(h)
    assert result.chi == chromatic_number_ie(h)
    assert _is_proper(h, result.witness)
    assert len(set(result.witness.values())) == result.chi
    assert result.lower_bound == max_clique_size(h)


def test_is_k_colorable_ie():
    odd = nx.cycle_graph(7)
    assert not is_k_colorable_ie(odd, 2)
    assert is_k_colorable_ie(odd, 3)
    assert not is_k_colorable_ie(odd, 0)
    assert is_k_colorable_ie(nx.Graph(), 0)


def test_inclusion_exclusion_vertex_limit():
    with pytest.raises(BadParameters):
        chromatic_number_ie(nx.empty_graph(25))


@pytest.mark.parametrize("n", [2, 3, 5, 9])
def test_vsrc_exact__paths(n):
    k, coloring = vsrc_exact(path_graph(n))
    assert k == n - 1
    assert coloring.k == n - 1


@pytest.mark.parametrize("half", [2, 3, 4, 5])
def test_vsrc_exact__even_cycles(half):
    k, _ = vsrc_exact(cycle_graph(2 * half))
    assert k == half


@pytest.mark.parametrize("half", [2, 3, 4])
def test_vsrc_exact__odd_cycles(half):
    k, _ = vsrc_exact(cycle_graph(2 * half + 1))
    assert k == half + 1


@pytest.mark.parametrize(
    "graph, expected",
    [
        (complete_graph(3), 1),
        (complete_graph(4), 1),
        (star_graph(6), 5),
        (complete_bipartite_graph(2, 3), 3),
    ],
)
def test_vsrc_exact__small_families(graph, expected):
    k, coloring = vsrc_exact(graph)
    assert k == expected
    assert verify_coloring(graph, coloring).valid


def test_vsrc_exact__single_vertex():
    k, coloring = vsrc_exact(path_graph(1))
    assert k == 0
    assert coloring.colors == {}


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=7))
def test_vsrc_exact__coloring_is_valid_and_canonical(g):
    result, coloring = vsrc_exact_result(g)
    assert coloring.k == result.chi
    assert verify_coloring(g, coloring).valid
    if g.m:
        assert coloring.colors[0] == 0


def test_decide_vsrc2(c4, p4, k3, p3):
    assert decide_vsrc2(c4)
    assert decide_vsrc2(k3)
    assert decide_vsrc2(p3)
    assert not decide_vsrc2(p4)


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=7))
def test_decide_vsrc2__agrees_with_exact(g):
    assert decide_vsrc2(g) == (vsrc_exact(g)[0] <= 2)


def test_check_twbound_consistency(k4, p5):
    assert check_twbound_consistency(k4, 1, 4)
    assert check_twbound_consistency(p5, 4, 2)
    assert not check_twbound_consistency(star_graph(11), 1, 2)


@settings(max_examples=60, deadline=None)
@given(cacti(max_blocks=3, max_len=5))
def test_check_twbound_consistency__holds_on_small_cacti(g):
    assume(g.n <= 12)
    k, _ = vsrc_exact(g)
    assert check_twbound_consistency(g, k, max_clique_size(g.to_networkx()))


def test_max_clique_size(c5):
    assert max_clique_size(nx.Graph()) == 0
    assert max_clique_size(build_conflict_graph(c5).to_networkx()) == 2
