from fractions import Fraction

import pytest

from exactla.sparse import SparseMatrix
from graphcx.exceptions import UsageError
from treeop.hall import hall_basis, lie_image, lyndon_words, parse_lie_word
from treeop.trees import TreeCombination, parse_tree
from treeop.twisted import (
    boundary_matrix,
    intrinsic_d,
    is_trt,
    split_terms,
    trt_basis,
    trt_homology,
    tw_differential,
)


def atom(text, coef=1):
    return TreeCombination.atom(text, coef)


# ---------------------------------------------------------------------------------------------------
class TestTwistedDifferential:
    """
    Testing Steps:
    1. Apply the twisted differential to small trees
    2. Check the hand-computed values, d^2 = 0 and closure on TRT
    """

    # ---------------------------------
    def test_white_vertex_is_closed(self):
        assert tw_differential("1").is_zero()

    def test_edge(self):
        assert tw_differential("1(2)") == -atom("b(1,2)")

    def test_black_corolla_is_closed(self):
        assert tw_differential("b(1,2)").is_zero()

    def test_intrinsic_d_of_alpha(self):
        assert intrinsic_d("b") == -atom("b(b)")

    def test_split_keys_are_exact(self):
        tree = parse_tree("b(b(1),2)")
        for _, split in split_terms(tree):
            new_key = split.keys[-1]
            assert isinstance(new_key, Fraction)
            assert new_key.denominator == 2
            assert not any(isinstance(k, float) for k in split.keys)
        for result, _ in intrinsic_d(tree).terms():
            assert all(isinstance(k, int) for k in result.keys if k is not None)

    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_squares_to_zero_in_arity_three(self, k):
        for tree in trt_basis(3, k):
            x = TreeCombination({tree: 1})
            assert tw_differential(tw_differential(x)).is_zero()

    @pytest.mark.parametrize("k", [0, 1])
    def test_trt_is_closed(self, k):
        for tree in trt_basis(3, k):
            image = tw_differential(TreeCombination({tree: 1}))
            assert all(is_trt(t) for t, _ in image.terms())

    def test_star_is_rejected(self):
        with pytest.raises(UsageError):
            tw_differential("M(1)")


# ---------------------------------------------------------------------------------------------------
class TestTRTHomology:
    """
    Testing Steps:
    1. Count TRT bases per black count
    2. Compute homology by exact ranks
    3. Compare with the Hall-basis dimension of the Lie operad
    """

    # ---------------------------------
    @pytest.mark.parametrize(
        "r,k,count", [(2, 0, 2), (2, 1, 1), (3, 0, 9), (3, 1, 10), (3, 2, 3), (3, 3, 0)]
    )
    def test_basis_counts(self, r, k, count):
        assert len(trt_basis(r, k)) == count

    def test_boundary_matrix_shape(self):
        matrix = boundary_matrix(trt_basis(2, 0), trt_basis(2, 1))
        assert isinstance(matrix, SparseMatrix)
        assert matrix.shape == (1, 2)

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_homology_matches_lie(self, r):
        assert trt_homology(r) == {0: len(hall_basis(r))}

    @pytest.mark.slow
    def test_homology_in_arity_four(self):
        assert trt_homology(4) == {0: 6}

    def test_infeasible_arity(self):
        with pytest.raises(UsageError):
            trt_homology(9)


# ---------------------------------------------------------------------------------------------------
class TestLieImage:
    # ---------------------------------
    def test_lyndon_words(self):
        assert list(lyndon_words(2, 3)) == [(0, 0, 1), (0, 1, 1)]

    @pytest.mark.parametrize("r,dim", [(2, 1), (3, 2), (4, 6)])
    def test_hall_basis_dimension(self, r, dim):
        assert len(hall_basis(r)) == dim

    def test_hall_basis_of_three(self):
        assert hall_basis(3) == [(1, (2, 3)), ((1, 3), 2)]

    def test_generator(self):
        assert lie_image("[1,2]") == atom("1(2)") - atom("2(1)")

    def test_nested_bracket(self):
        image = lie_image(parse_lie_word("[[1,2],3]"))
        assert len(image) == 6

    @pytest.mark.parametrize("word", ["[1,2]", "[[1,2],3]", "[1,[2,3]]"])
    def test_image_is_closed(self, word):
        assert tw_differential(lie_image(word)).is_zero()


# ---------------------------------------------------------------------------------------------------
# pytest treeop/tests/test_twisted.py -v
