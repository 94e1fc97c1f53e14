import random

import pytest

from amrpara.graph import AmrError, GraphError, Triple, Var, graph_equal, normalized_triples
from amrpara.parser import PenmanSyntaxError, iter_blocks, parse_penman
from amrpara.refocus import linearize
from amrpara.tree import token_stream

from helpers import FIG1, random_graph


def test_figure_fixture():
    g = parse_penman(FIG1)
    assert g.top == "z1"
    assert len(g.instances()) == 10
    assert Triple("z1", "ARG1", Var("z3")) in g.triples
    assert Triple("z7", "ARG0", Var("z4")) in g.triples  # re-entrant mention


def test_need_listing():
    from helpers import LISTING_Z3

    g = parse_penman(LISTING_Z3)
    assert g.top == "z3"
    assert len(g.instances()) == 10
    assert Triple("z3", "ARG1-of", Var("z1")) in g.triples
    assert Triple("z7", "ARG0", Var("z4")) in g.triples


def test_minimal_graph():
    g = parse_penman("(a / and)")
    assert g.top == "a"
    assert g.triples == (Triple("a", "instance", "and"),)


def test_duplicate_instance_rejected():
    with pytest.raises(GraphError, match="duplicate-instance"):
        parse_penman("(a / alpha :mod (a / alpha))")


def test_empty_input():
    with pytest.raises(AmrError, match="empty"):
        parse_penman("")
    with pytest.raises(AmrError, match="empty"):
        parse_penman("# only a comment\n")


def test_syntax_error_position():
    with pytest.raises(PenmanSyntaxError) as exc:
        parse_penman("(a / alpha :mod")
    assert exc.value.line == 1

    with pytest.raises(PenmanSyntaxError) as exc:
        parse_penman("(a / alpha))")
    assert exc.value.column == 12


def test_comments_skipped():
    g = parse_penman("# ::snt hello\n(a / alpha)")
    assert g.top == "a"


def test_string_literals_and_numbers():
    g = parse_penman('(a / alpha :name "New York" :quant 3 :polarity -)')
    attrs = {(t.role, t.target) for t in g.attributes()}
    assert ("name", '"New York"') in attrs
    assert ("quant", "3") in attrs
    assert ("polarity", "-") in attrs


def test_reentrancy_is_edge_not_instance():
    g = parse_penman("(a / alpha :ARG0 (b / beta) :ARG1 b)")
    assert len([t for t in g.triples if t.is_instance]) == 2
    assert Triple("a", "ARG1", Var("b")) in g.triples


def test_constant_target_not_matching_variable():
    g = parse_penman("(a / alpha :mod beta)")
    assert Triple("a", "mod", "beta") in g.triples


def test_round_trip_fixture():
    g = parse_penman(FIG1)
    again = parse_penman(linearize(g))
    assert graph_equal(g, again)
    assert again.top == g.top


def test_round_trip_random_graphs():
    for seed in range(100):
        g = random_graph(random.Random(seed))
        text = linearize(g)
        again = parse_penman(text)
        assert normalized_triples(again) == normalized_triples(g), f"seed {seed}"
        assert again.top == g.top


def test_serialized_token_stream_one_role_per_line():
    g = parse_penman(FIG1)
    text = linearize(g)
    for line in text.splitlines()[1:]:
        assert line.lstrip().startswith(":")
    # child indentation strictly greater than parent
    assert token_stream(text) == token_stream(FIG1)


def test_iter_blocks_metadata():
    text = (
        "# ::id 1\n# ::snt alpha sentence\n(a / alpha)\n"
        "\n"
        "# ::id 2\n(b / beta :mod (c / gamma))\n"
    )
    blocks = list(iter_blocks(text))
    assert len(blocks) == 2
    assert blocks[0].metadata == ["# ::id 1", "# ::snt alpha sentence"]
    assert blocks[1].graph.top == "b"
