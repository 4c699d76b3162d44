from fractions import Fraction

import pytest

from graphcx.exceptions import UsageError
from linfty.bch import bch_series, log_of_product, right_nested
from linfty.instances import oracle_instance
from linfty.mc import instance_bch
from linfty.structure import lie_bracket
from treeop.operad import graft


def series(depth):
    return {word: coef for coef, word in bch_series(depth)}


# ---------------------------------------------------------------------------------------------------
class TestFormalSeries:
    """
    Testing Steps:
    1. Expand log(exp x exp y) in the free associative algebra
    2. Read off the Lie coefficients
    """

    # ---------------------------------
    def test_depth_one(self):
        assert series(1) == {"x": 1, "y": 1}

    def test_depth_two(self):
        assert series(2) == {"x": 1, "y": 1, ("x", "y"): Fraction(1, 2)}

    def test_depth_three(self):
        coefficients = series(3)
        assert coefficients[("x", ("x", "y"))] == Fraction(1, 12)
        assert coefficients[("y", ("x", "y"))] == Fraction(-1, 12)
        assert len(coefficients) == 5

    def test_associative_words(self):
        words = log_of_product(3)
        assert words[("x", "x", "y")] == Fraction(1, 12)
        assert words[("x", "y")] == Fraction(1, 2)
        assert words[("y", "x")] == Fraction(-1, 2)

    def test_right_nested(self):
        assert right_nested(("y", "x")) == (-1, ("x", "y"))
        assert right_nested(("x", "x")) is None
        assert right_nested(("y", "x", "y")) == (1, ("y", ("x", "y")))

    def test_depth_zero(self):
        with pytest.raises(UsageError):
            bch_series(0)


# ---------------------------------------------------------------------------------------------------
class TestOnTrees:
    """
    Testing Steps:
    1. Evaluate BCH on generators of the free pre-Lie algebra
    2. Check units, the quadratic term and associativity
    """

    # ---------------------------------
    @pytest.fixture(autouse=True)
    def setup(self):
        self.oracle = oracle_instance(max_size=4)
        self.a = self.oracle.atom("a")
        self.c = self.oracle.atom("c")

    def test_zero_is_a_unit(self):
        zero = self.oracle.algebra_zero()
        assert instance_bch(self.a, zero, 3, self.oracle) == self.a
        assert instance_bch(zero, self.c, 3, self.oracle) == self.c

    def test_inverse(self):
        assert instance_bch(self.a, -self.a, 4, self.oracle).is_zero()

    def test_quadratic(self):
        expected = self.a + self.c + lie_bracket(graft, self.a, self.c).scale(Fraction(1, 2))
        assert instance_bch(self.a, self.c, 2, self.oracle) == expected

    def test_associative(self):
        a, c, o = self.a, self.c, self.oracle
        left = instance_bch(instance_bch(a, c, 4, o), a + c, 4, o)
        right = instance_bch(a, instance_bch(c, a + c, 4, o), 4, o)
        assert left == right

    def test_odd_arguments_rejected(self):
        with pytest.raises(UsageError):
            instance_bch(self.oracle.atom("b(a)"), self.a, 2, self.oracle)


# ---------------------------------------------------------------------------------------------------
# pytest linfty/tests/test_bch.py -v
