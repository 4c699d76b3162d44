import pytest
from django.core.cache import cache

from exactla.sparse import rank
from graphcx.exceptions import InfiniteBucket, UsageError
from homology.tables import compute_table
from homology.windows import (
    ComplexSpec,
    boundary_rank,
    bucket_basis,
    bucket_dimension,
    build_window,
    buckets,
    homology_dims,
    is_boundary,
    square_residual,
)
from treeop.trees import TreeCombination


@pytest.fixture(autouse=True)
def fresh_cache():
    cache.clear()
    yield
    cache.clear()


# ---------------------------------------------------------------------------------------------------
class TestComplexSpec:
    """
    Testing Steps:
    1. Build specs for every kind of complex
    2. Reject inconsistent twists and missing parameters
    3. Round-trip the plain dict handed to worker tasks
    """

    # ---------------------------------
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"kind": "gcx"},
            {"kind": "hgc", "n": 2},
            {"kind": "trt"},
            {"kind": "hgc", "n": 2, "m": 1, "twist": "L"},
            {"kind": "hgc", "n": 2, "m": 2, "twist": "T"},
            {"kind": "gc", "twist": "Q"},
        ],
    )
    def test_rejected(self, kwargs):
        with pytest.raises(UsageError):
            ComplexSpec(**kwargs)

    def test_dict(self):
        spec = ComplexSpec("hgc", n=2, m=1, twist="T", lam="1/2", max_hairs=5)
        assert ComplexSpec.from_dict(spec.as_dict()) == spec
        assert spec.twist_label() == "m + T(lambda=1/2)"

    def test_degree_of_size(self):
        assert ComplexSpec("gc", n=2).degree_of_size(3, 4) == 0
        assert ComplexSpec("hgc", n=2, m=2).degree_of_size(0, 2) == -1
        assert ComplexSpec("l-source", n=2).degree_of_size(1, 6) == -4

    def test_buckets(self):
        assert buckets(ComplexSpec("trt", arity=3), None, None) == [(0, 3), (-1, 3), (-2, 3)]
        assert buckets(ComplexSpec("gc", n=2), 1, 2, min_size=1) == [(0, 1), (1, 1)]
        with pytest.raises(UsageError):
            buckets(ComplexSpec("gc", n=2), None, 3)


# ---------------------------------------------------------------------------------------------------
class TestWindows:
    """
    Testing Steps:
    1. Enumerate buckets and assemble boundaries
    2. Audit d^2 = 0 across adjacent windows
    3. Check rank invariance under reordering of the basis
    """

    # ---------------------------------
    def test_trt_basis(self):
        spec = ComplexSpec("trt", arity=3)
        assert len(bucket_basis(spec, (0, 3))) == 9
        assert bucket_basis(spec, (1, 3)) == []
        assert bucket_basis(spec, (-3, 3)) == []

    def test_line_generator(self):
        spec = ComplexSpec("l-source", n=2, valence_class=2)
        assert bucket_basis(spec, (-1, 0)) == ["D"]

    def test_empty_bucket(self):
        spec = ComplexSpec("gc", n=2)
        assert bucket_basis(spec, (5, 1)) == []
        assert bucket_dimension(spec, (5, 1)) == 0

    def test_infinite_bucket(self):
        with pytest.raises(InfiniteBucket):
            bucket_dimension(ComplexSpec("hgc", n=2, m=1), (-1, 1))

    def test_window_shape(self):
        window = build_window(ComplexSpec("trt", arity=2), (0, 2))
        assert window.boundary.shape == (1, 2)
        assert window.provenance["complex"] == "TRT(2)"

    @pytest.mark.parametrize(
        "spec,bucket",
        [
            (ComplexSpec("gc", n=2, valence_class=1), (-1, 2)),
            (ComplexSpec("gc", n=2, valence_class=2), (-1, 2)),
            (ComplexSpec("gc", n=3, valence_class=2), (2, 2)),
            (ComplexSpec("hgc", n=2, m=2, valence_class=1), (-1, 1)),
            (ComplexSpec("hgc", n=2, m=1, max_hairs=3), (-1, 1)),
            (ComplexSpec("hgc", n=2, m=2, valence_class=2, twist="L"), (-2, 1)),
            (ComplexSpec("trt", arity=3), (0, 3)),
        ],
    )
    def test_squares_to_zero(self, spec, bucket):
        assert square_residual(spec, bucket).is_zero()

    def test_rank_ignores_basis_order(self):
        spec = ComplexSpec("trt", arity=3)
        window = build_window(spec, (-1, 3))
        reordered = window.permuted(list(reversed(range(len(window.basis)))))
        assert reordered.basis == list(reversed(window.basis))
        assert boundary_rank(spec, (-1, 3)) == 3
        assert rank(reordered.boundary) == rank(window.boundary) == 3

    def test_bad_permutation(self):
        window = build_window(ComplexSpec("trt", arity=2), (0, 2))
        with pytest.raises(UsageError):
            window.permuted([0, 0])


# ---------------------------------------------------------------------------------------------------
class TestHomology:
    """
    Testing Steps:
    1. Compute homology dimensions bucket by bucket
    2. Compare TRT against the dimension of the Lie operad
    3. Render a homology table
    """

    # ---------------------------------
    @pytest.mark.parametrize("arity,dims", [(2, {0: 1}), (3, {0: 2})])
    def test_trt_is_lie(self, arity, dims):
        spec = ComplexSpec("trt", arity=arity)
        found = homology_dims(spec, buckets(spec, None, None))
        assert {d: dim for (d, _), dim in found.items() if dim} == dims

    @pytest.mark.slow
    def test_trt_in_arity_four(self):
        spec = ComplexSpec("trt", arity=4)
        found = homology_dims(spec, buckets(spec, None, None))
        assert {d: dim for (d, _), dim in found.items() if dim} == {0: 6}

    def test_line_twist_in_loop_zero(self):
        spec = ComplexSpec("hgc", n=2, m=2, valence_class=2, twist="L")
        dims = homology_dims(spec, buckets(spec, 0, 4))
        assert {b: d for b, d in dims.items() if d} == {(-1, 0): 1}

    def test_table(self):
        table = compute_table(ComplexSpec("trt", arity=3))
        lines = table.text().splitlines()
        assert lines[0] == "# complex: TRT(3)"
        assert lines[3].startswith("# tool: graphcx")
        assert lines[4:] == ["-2\t3\t0", "-1\t3\t0", "0\t3\t2"]
        assert table.nonzero() == {(0, 3): 2}
        assert table.as_dict()["rows"][-1] == {"degree": 0, "loop": 3, "dim": 2}

    def test_table_fanned_out(self):
        spec = ComplexSpec("trt", arity=3)
        assert compute_table(spec, jobs=2).dims == compute_table(spec, jobs=1).dims


# ---------------------------------------------------------------------------------------------------
class TestBoundaries:
    # ---------------------------------
    def test_black_corolla_is_a_boundary(self):
        spec = ComplexSpec("trt", arity=2)
        assert is_boundary(spec, (-1, 2), TreeCombination.atom("b(1,2)"))

    def test_bracket_is_not(self):
        spec = ComplexSpec("trt", arity=2)
        bracket = TreeCombination.atom("1(2)") - TreeCombination.atom("2(1)")
        assert not is_boundary(spec, (0, 2), bracket)

    def test_outside_the_bucket(self):
        spec = ComplexSpec("trt", arity=2)
        with pytest.raises(UsageError):
            is_boundary(spec, (0, 2), TreeCombination.atom("b(1,2)"))


# ---------------------------------------------------------------------------------------------------
# pytest homology/tests/test_windows.py -v
