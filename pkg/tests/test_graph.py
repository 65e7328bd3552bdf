import pytest

from graphdecode.graph import (
    Graph,
    GraphParseError,
    complete_graph,
    cycle_graph,
    graph_state_stabilizers,
    load_graph,
    neighborhood,
    parse_graph,
    random_graph,
    render_graph,
)
from graphdecode.pauli import commutes


def test_cycle_neighbourhoods():
    g = cycle_graph(5)
    assert neighborhood(g, 1) == {2, 5}
    assert neighborhood(g, 3) == {2, 4}
    assert len(g.edges) == 5


def test_stabilizer_shape():
    s = graph_state_stabilizers(cycle_graph(5))
    assert str(s[0]) == "X1 Z2 Z5"
    assert all(p.weight == 3 for p in s)


@pytest.mark.parametrize("seed", range(100))
def test_random_graph_stabilizers_commute(seed):
    n = 3 + seed % 8
    s = graph_state_stabilizers(random_graph(n, 0.5, seed))
    assert all(commutes(a, b) for a in s for b in s)


def test_complete_graph():
    g = complete_graph(4)
    assert len(g.edges) == 6


def test_invalid_graphs():
    with pytest.raises(ValueError):
        Graph(3, ((1, 1),))
    with pytest.raises(ValueError):
        Graph(3, ((1, 4),))
    with pytest.raises(ValueError):
        cycle_graph(2)


def test_parse_and_render_roundtrip():
    text = "# a path\nn 4\ne 1 2\ne 2 3\n\ne 3 4\n"
    g = parse_graph(text)
    assert g.n == 4 and len(g.edges) == 3
    assert parse_graph(render_graph(g)) == g


@pytest.mark.parametrize(
    "text, where",
    [("e 1 2\n", "line 1"), ("n 3\ne 1\n", "line 2"), ("n 3\ne 1 7\n", "line 2"), ("n x\n", "line 1")],
)
def test_parse_errors_name_the_line(text, where):
    with pytest.raises(GraphParseError, match=where):
        parse_graph(text)


def test_load_graph(tmp_path):
    assert load_graph("cycle:6") == cycle_graph(6)
    f = tmp_path / "g.txt"
    f.write_text(render_graph(cycle_graph(4)))
    assert load_graph(str(f)) == cycle_graph(4)
