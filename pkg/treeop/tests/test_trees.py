from fractions import Fraction

import pytest

from graphcx.exceptions import ParseError, UsageError
from treeop.operad import (
    compose_terms,
    corolla_brace,
    graft,
    labeled_trees,
    module_brace,
    rt_compose,
)
from treeop.trees import (
    TreeCombination,
    canonical_tree,
    format_tree,
    parse_tree,
    parse_tree_combination,
)


def atom(text, coef=1):
    return TreeCombination.atom(text, coef)


# ---------------------------------------------------------------------------------------------------
class TestRootedTrees:
    """
    Testing Steps:
    1. Parse and print trees in the bracket grammar
    2. Canonicalise and compare signs of black orderings
    """

    # ---------------------------------
    def test_parse_and_format(self):
        assert format_tree(parse_tree("1(3,4(2,5))")) == "1(3,4(2,5))"
        assert format_tree(parse_tree(" M ( a , 1 ) ")) == "M(a,1)"

    def test_children_are_unordered(self):
        assert atom("1(2,3)") == atom("1(3,2)")

    def test_black_order_sign(self):
        assert atom("b(b(2),b(1))") == -atom("b(b(1),b(2))")
        tree, sign = canonical_tree(parse_tree("b(b(1),b(2))"))
        assert sign == 1
        assert tree.keys == (0, 1, None, 2, None)

    def test_identical_odd_siblings_vanish(self):
        assert atom("1(b,b)").is_zero()
        assert not atom("1(b(2),b(3))").is_zero()

    def test_degree(self):
        assert parse_tree("b(1,b(2,3))").degree == -2

    # ---------------------------------
    def test_parse_errors(self):
        with pytest.raises(ParseError):
            parse_tree("1(2,")
        with pytest.raises(ParseError):
            parse_tree("1(2)3")
        with pytest.raises(ParseError):
            parse_tree("1(M)")
        with pytest.raises(ParseError):
            parse_tree("1(1)")

    def test_combination_text(self):
        x = atom("b(a)") - atom("c").scale(Fraction(1, 2))
        assert parse_tree_combination(str(x)) == x
        assert parse_tree_combination("a(c) + 2 c") == atom("a(c)") + atom("c", 2)
        assert parse_tree_combination("0").is_zero()
        with pytest.raises(ParseError):
            parse_tree_combination("a + 1/2 (")


# ---------------------------------------------------------------------------------------------------
class TestOperad:
    """
    Testing Steps:
    1. Compose and graft small trees
    2. Compare with hand expansions and Cayley counts
    """

    # ---------------------------------
    def test_compose_shifts_labels(self):
        assert rt_compose("1(2)", 1, "1(2)") == atom("1(2,3)") + atom("1(2(3))")

    def test_compose_with_generators(self):
        assert rt_compose("1(2)", 1, "a(c)") == atom("a(c,2)") + atom("a(c(2))")

    def test_compose_with_unit(self):
        assert rt_compose("1(2)", 2, "1") == atom("1(2)")
        assert rt_compose("1(2,3)", 1, "1") == atom("1(2,3)")

    def test_corolla_reconnections(self):
        t, s = parse_tree("1(2,3,4)"), parse_tree("a(c,d,e)")
        assert len(list(compose_terms(t, 1, s))) == 64

    def test_compose_missing_label(self):
        with pytest.raises(UsageError):
            rt_compose("1(2)", 3, "1")

    @pytest.mark.parametrize("i,j", [(1, 1), (1, 2), (2, 1), (2, 2)])
    def test_compose_is_associative(self, i, j):
        t, s, u = "1(2)", "2(1)", "1(2)"
        left = rt_compose(rt_compose(t, i, s), i + j - 1, u)
        right = rt_compose(t, i, rt_compose(s, j, u))
        assert left == right

    # ---------------------------------
    def test_graft(self):
        assert graft("a", "c") == atom("a(c)")
        assert graft("a(c)", "d") == atom("a(c,d)") + atom("a(c(d))")

    def test_graft_label_clash(self):
        with pytest.raises(UsageError):
            graft("1", "1(2)")

    @pytest.mark.parametrize("r,count", [(1, 1), (2, 2), (3, 9), (4, 64), (5, 625)])
    def test_cayley_count(self, r, count):
        assert len(labeled_trees(r)) == count

    # ---------------------------------
    def test_corolla_brace(self):
        assert corolla_brace("a", ["c", "d"]) == atom("a(c,d)")
        assert corolla_brace("a", ["c"]) == graft("a", "c")

    def test_brace_recursion(self):
        x, y, z = "a(e)", "c", "d(f)"
        expected = graft(graft(x, y), z) - graft(x, graft(y, z))
        assert corolla_brace(x, [y, z]) == expected

    def test_module_brace(self):
        assert module_brace(None, ["a", "c"]) == atom("M(a,c)")
        with pytest.raises(UsageError):
            module_brace("a", ["c"])


# ---------------------------------------------------------------------------------------------------
# pytest treeop/tests/test_trees.py -v
