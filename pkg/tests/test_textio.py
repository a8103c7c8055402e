import random

import pytest

from pcfcolor.colorings import Coloring, ListAssignment, SetColoring
from pcfcolor.errors import FormatError
from pcfcolor.graphs import Hypergraph, generate, neighborhood_hypergraph
from pcfcolor.textio import (
    parse_coloring,
    parse_graph,
    parse_hypergraph,
    parse_lists,
    parse_set_coloring,
    write_coloring,
    write_graph,
    write_hypergraph,
    write_lists,
    write_set_coloring,
)

from helpers import cycle


def test_graph_round_trip():
    g = cycle(5)
    text = write_graph(g)
    assert text.splitlines()[0] == "p edge 5 5"
    h = parse_graph(text)
    assert h.n == g.n and set(h.edges()) == set(g.edges())


def test_graph_round_trip_random():
    rng = random.Random(3)
    for _ in range(25):
        g = generate("gnp", rng.randrange(1, 15), seed=rng.randrange(10**6), p=0.3)
        h = parse_graph(write_graph(g))
        assert h.n == g.n and set(h.edges()) == set(g.edges())


def test_graph_parse_comments_and_one_based():
    text = "c a comment\nc\np edge 3 2\ne 1 2\ne 2 3\n"
    g = parse_graph(text)
    assert g.n == 3 and set(g.edges()) == {(0, 1), (1, 2)}


@pytest.mark.parametrize("text", [
    "e 1 2\n",                           # edge before header
    "p edge 2 1\np edge 2 1\ne 1 2\n",   # duplicate header
    "p edge 2 0\ne 1 2\n",               # count mismatch
    "p edge 2 1\ne 1 3\n",               # vertex out of range
    "p edge 2 1\ne 1 x\n",               # non-integer vertex
    "p edge 2 1\nq 1 2\n",               # unrecognized line
    "p node 2 1\ne 1 2\n",               # bad header keyword
    "",                                  # missing header
    "p edge 2 1\ne 1 1\n",               # loop, rejected by Graph
])
def test_graph_parse_errors(text):
    with pytest.raises(FormatError):
        parse_graph(text)


def test_hypergraph_round_trip():
    hg = neighborhood_hypergraph(cycle(5))
    back = parse_hypergraph(write_hypergraph(hg), 5)
    assert back.edges == hg.edges
    assert parse_hypergraph("", 4).edges == ()


def test_hypergraph_parse_errors():
    with pytest.raises(FormatError):
        parse_hypergraph("1 6\n", 5)
    with pytest.raises(FormatError):
        parse_hypergraph("1 a\n", 5)


def test_hypergraph_write_is_one_based_sorted():
    hg = Hypergraph(4, [[3, 0, 2]])
    assert write_hypergraph(hg) == "1 3 4\n"


def test_coloring_round_trip():
    col = Coloring([2, 1, 2])
    assert parse_coloring(write_coloring(col), 3).colors == col.colors
    # rows may come in any order
    assert parse_coloring("3 7\n1 1\n2 4\n", 3).colors == (1, 4, 7)


@pytest.mark.parametrize("text", [
    "1 1\n",               # vertex 2 missing
    "1 1\n1 2\n2 1\n",     # vertex listed twice
    "1 0\n2 1\n",          # colors start at 1
    "1 1 2\n2 1\n",        # two colors for one vertex
    "1\n2 1\n",            # no color token
])
def test_coloring_parse_errors(text):
    with pytest.raises(FormatError):
        parse_coloring(text, 2)


def test_lists_round_trip():
    lists = ListAssignment([[3, 1], [2], [1, 2, 4]])
    back = parse_lists(write_lists(lists), 3)
    assert [sorted(l) for l in back.lists] == [[1, 3], [2], [1, 2, 4]]
    with pytest.raises(FormatError):
        parse_lists("1 1\n2 1\n3 1\n", 2)  # count mismatch with n


def test_set_coloring_round_trip():
    psi = SetColoring([{1, 2}, {3, 4}, {2, 5}])
    back = parse_set_coloring(write_set_coloring(psi), 3)
    assert back.sets == psi.sets
    assert write_set_coloring(psi).splitlines()[0] == "1 1,2"


@pytest.mark.parametrize("text", [
    "1 1,2\n2 3\n",     # ragged sizes rejected by SetColoring
    "1 ,\n2 1\n",       # empty color set
    "1 1 2\n2 3,4\n",   # two tokens instead of one comma list
    "1 0,1\n2 2,3\n",   # color 0
])
def test_set_coloring_parse_errors(text):
    with pytest.raises(FormatError):
        parse_set_coloring(text, 2)
