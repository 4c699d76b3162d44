from fractions import Fraction

import pytest

from graphcore.canon import canonicalize
from graphcore.combination import Combination
from graphcore.grammar import (
    format_combination,
    parse_combination,
    parse_graph,
    serialize,
)
from graphcx.exceptions import ParseError

TRIPOD = """
# tripod in HGC_{1,2}
hgraph m=1 n=2 v=1 h=3
E h1 v1
E h2 v1
E h3 v1
"""

TETRAHEDRON = """hgraph m=- n=2 v=4 h=0
E v1 v2
E v1 v3
E v1 v4
E v2 v3
E v2 v4
E v3 v4
"""


# ---------------------------------------------------------------------------------------------------
class TestGrammar:
    """
    Testing Steps:
    1. Parse graph records and combination files
    2. Serialise and parse again
    3. Check error positions on malformed input
    """

    # ---------------------------------
    def test_parse_tripod(self):
        graph = parse_graph(TRIPOD)
        assert (graph.n, graph.m, graph.v, graph.h) == (2, 1, 1, 3)
        assert graph.edges == ((~0, 0), (~1, 0), (~2, 0))

    def test_parse_gc_graph(self):
        graph = parse_graph(TETRAHEDRON)
        assert graph.m is None
        assert graph.e == 6

    def test_serialized_atom_reparses_with_positive_sign(self):
        reversed_tet = TETRAHEDRON.replace("E v1 v2\nE v1 v3", "E v1 v3\nE v1 v2")
        text = serialize(parse_graph(reversed_tet))
        graph, sign = canonicalize(parse_graph(text))
        assert sign == 1
        assert serialize(graph) == text

    def test_combination_file(self):
        text = "coef 3/4\n" + TRIPOD + "coef -1/2\n" + TETRAHEDRON.replace("m=-", "m=1")
        with pytest.raises(ParseError):
            parse_combination(text)
        total = parse_combination("coef 3/4\n" + TRIPOD)
        assert total.coefficient(parse_graph(TRIPOD)) == Fraction(3, 4)
        assert parse_combination(format_combination(total)) == total

    def test_zero_combination(self):
        zero = Combination.zero(2, None)
        assert format_combination(zero) == "zero m=- n=2\n"
        assert parse_combination(format_combination(zero)).is_zero()

    # ---------------------------------
    def test_error_carries_position(self):
        with pytest.raises(ParseError) as info:
            parse_graph("hgraph m=1 n=2 v=1 h=1\nE h1 v7\n")
        assert info.value.line == 2
        assert info.value.column == 6

    def test_bad_header(self):
        with pytest.raises(ParseError) as info:
            parse_graph("hgraph m=1 n=two v=1 h=1\n")
        assert info.value.line == 1
        assert "n must be an integer" in str(info.value)

    def test_bad_coefficient(self):
        with pytest.raises(ParseError):
            parse_combination("coef 1/0\n" + TRIPOD)

    def test_structural_error_is_reported_as_parse_error(self):
        with pytest.raises(ParseError):
            parse_graph("hgraph m=1 n=2 v=2 h=1\nE h1 v1\n")


# ---------------------------------------------------------------------------------------------------
# pytest graphcore/tests/test_grammar.py -v
