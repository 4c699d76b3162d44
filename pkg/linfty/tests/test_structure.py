import dataclasses
from fractions import Fraction

import pytest

from gcalg.algebra import tetrahedron, wheel_graph
from graphcore.combination import Combination, Window
from graphcore.graph import OrientedGraph
from graphcx.exceptions import CheckFailed, UsageError
from hgcalg.algebra import gc_action, hairD
from hgcalg.elements import line, star
from linfty.checks import plan, run_check, sample_tuples
from linfty.instances import build_instance, oracle_instance
from linfty.structure import (
    DERIVATION,
    U,
    U_bundle,
    U_withD,
    W,
    W_bundle,
    compose_with_W,
    koszul_sign,
    linfty_residual,
    module_structure,
    nu,
    nu_structure,
    set_partitions,
    unshuffles,
)
from treeop.operad import graft


@pytest.fixture(scope="module")
def oracle():
    return oracle_instance(max_size=5)


@pytest.fixture(scope="module")
def gc_line():
    return build_instance("gc-l", n=2)


# ---------------------------------------------------------------------------------------------------
class TestSigns:
    # ---------------------------------
    def test_koszul_sign(self):
        assert koszul_sign([1, 1], (1, 0)) == -1
        assert koszul_sign([1, 0], (1, 0)) == 1
        assert koszul_sign([1, 1, 1], (2, 0, 1)) == 1

    def test_unshuffles(self):
        pairs = list(unshuffles(3, 1))
        assert pairs == [((0,), (1, 2)), ((1,), (0, 2)), ((2,), (0, 1))]

    def test_set_partitions(self):
        partitions = list(set_partitions(3))
        assert len(partitions) == 5
        assert [(0, 2), (1,)] in partitions
        assert all(blocks == sorted(blocks, key=min) for blocks in partitions)


# ---------------------------------------------------------------------------------------------------
class TestInstances:
    """
    Testing Steps:
    1. Build every named instance
    2. Validate the MC conditions on alpha and m
    3. Corrupt alpha and expect a failed check
    """

    # ---------------------------------
    @pytest.mark.parametrize("name", ["gc-l", "gc-t", "oracle"])
    def test_validate(self, name):
        instance = build_instance(name, n=2)
        assert instance.validate() is instance

    def test_corrupted_alpha(self, oracle):
        broken = dataclasses.replace(oracle, alpha=oracle.alpha.scale(2))
        with pytest.raises(CheckFailed):
            broken.validate()

    def test_unknown_instance(self):
        with pytest.raises(UsageError):
            build_instance("gc-x")

    def test_linear_u(self, gc_line, oracle):
        assert gc_line.u_linear
        assert not oracle.u_linear
        assert oracle.pool
        assert all(t.size <= 3 for t in oracle.pool)


# ---------------------------------------------------------------------------------------------------
class TestComponents:
    """
    Testing Steps:
    1. Evaluate nu, W and U on small inputs
    2. Compare against hand computed values
    """

    # ---------------------------------
    def test_nu1_of_alpha_vanishes_in_gc(self, gc_line):
        assert nu(1, [gc_line.alpha], gc_line).is_zero()

    def test_nu_above_arity_two_vanishes_in_gc(self, gc_line):
        tet = tetrahedron(2)
        assert nu(3, [tet, tet, tet], gc_line).is_zero()

    def test_nu_on_generators(self, oracle):
        a, c = oracle.atom("a"), oracle.atom("c")
        assert nu(1, [a], oracle) == oracle.atom("b(a)") - oracle.atom("a(b)")
        assert nu(2, [a, c], oracle) == oracle.atom("b(a,c)")

    def test_arity_zero_rejected(self, oracle):
        with pytest.raises(UsageError):
            nu(0, [], oracle)
        with pytest.raises(UsageError):
            W(2, [oracle.atom("a")], oracle)

    def test_W(self, oracle):
        a, x, y = oracle.atom("a"), oracle.atom("b(a)"), oracle.atom("b(c)")
        assert W(1, [x], oracle) == x
        assert W(2, [x, y], oracle) == (graft(x, y) - graft(y, x)).scale(Fraction(1, 2))
        assert W(3, [a, a, a], oracle) == graft(graft(a, a), a)

    def test_U_on_the_tetrahedron(self, gc_line):
        edges = ((~0, 0),) + wheel_graph(3, 2).edges
        hairy_tet = Combination.atom(OrientedGraph(2, 2, 4, 1, edges))
        assert U(1, [tetrahedron(2)], gc_line) == hairy_tet
        assert U(2, [tetrahedron(2), tetrahedron(2)], gc_line).is_zero()

    def test_composite_agrees_with_U_after_W(self, gc_line):
        V = compose_with_W(gc_line)
        tet = tetrahedron(2, window=Window(max_weight=3))
        assert V([tet]) == U(1, [tet], gc_line)
        assert V([tet, tet]) == U(1, [W(2, [tet, tet], gc_line)], gc_line)

    def test_composite_needs_linear_u(self, oracle):
        with pytest.raises(UsageError):
            compose_with_W(oracle)


# ---------------------------------------------------------------------------------------------------
class TestDerivationSlots:
    """
    Testing Steps:
    1. Put the derivation D into the leading slots of U
    2. Compare with D applied to m, then acting
    """

    # ---------------------------------
    def test_line_from_one_slot(self, gc_line):
        assert U_withD(1, 0, [], gc_line) == line(2, 2)

    def test_tripod_series_from_one_slot(self):
        instance = build_instance("gc-t", n=2, lam=1, max_weight=4, max_hairs=5)
        expected = star(3, 2, 1).scale(2) + star(5, 2, 1).scale(4)
        assert U_withD(1, 0, [], instance) == expected

    def test_two_slots_and_one_argument(self):
        instance = build_instance("gc-t", n=2)
        x = tetrahedron(2)
        assert U_withD(2, 1, [x], instance) == gc_action(hairD(hairD(instance.m)), x)

    def test_no_slots_is_U(self, gc_line):
        x = tetrahedron(2)
        assert U_withD(0, 1, [x], gc_line) == U(1, [x], gc_line)

    def test_rejected(self, gc_line, oracle):
        with pytest.raises(UsageError):
            U_withD(0, 0, [], gc_line)
        with pytest.raises(UsageError):
            U_withD(1, 0, [], oracle)
        with pytest.raises(UsageError):
            W_bundle(oracle)([DERIVATION])


# ---------------------------------------------------------------------------------------------------
class TestRelations:
    """
    Testing Steps:
    1. Evaluate the defining relation of each structure and morphism
    2. Expect an exactly vanishing residual
    """

    # ---------------------------------
    @pytest.mark.parametrize(
        "texts",
        [["a"], ["b(a)"], ["a", "c"], ["b(a)", "c"], ["b(a)", "b(c)"], ["a", "c", "a"]],
    )
    def test_nu_relations_on_trees(self, oracle, texts):
        inputs = [oracle.atom(t) for t in texts]
        assert linfty_residual(nu_structure(oracle), inputs).is_zero()

    @pytest.mark.parametrize(
        "texts", [["a", "c"], ["b(a)", "c"], ["b(a)", "b(c)"], ["a", "c", "a"], ["b(a)", "a", "c"]]
    )
    def test_W_relations_on_trees(self, oracle, texts):
        inputs = [oracle.atom(t) for t in texts]
        assert linfty_residual(W_bundle(oracle), inputs).is_zero()

    def test_W_relation_on_the_tetrahedron(self, gc_line):
        tet = tetrahedron(2)
        assert linfty_residual(W_bundle(gc_line), [tet]).is_zero()

    def test_U_relation_on_the_tetrahedron(self, gc_line):
        assert linfty_residual(U_bundle(gc_line), [tetrahedron(2)]).is_zero()

    def test_U_relation_needs_a_module_structure(self, oracle):
        with pytest.raises(UsageError):
            linfty_residual(U_bundle(oracle), [oracle.atom("a")])
        with pytest.raises(UsageError):
            module_structure(oracle)

    @pytest.mark.parametrize("name", ["gc-l", "gc-t"])
    def test_derivation_alone(self, name):
        instance = build_instance(name, n=2)
        bundle = U_bundle(instance, with_derivation=True)
        assert linfty_residual(bundle, [DERIVATION]).is_zero()
        assert linfty_residual(bundle, [DERIVATION, DERIVATION]).is_zero()

    def test_derivation_with_an_argument(self, gc_line):
        bundle = U_bundle(gc_line, with_derivation=True)
        assert linfty_residual(bundle, [DERIVATION, tetrahedron(2)]).is_zero()

    @pytest.mark.slow
    @pytest.mark.parametrize("what", ["nu", "U", "composite"])
    def test_sampled_graph_relations(self, what):
        report = run_check({"instance": "gc-l", "n": 3}, what, 2, samples=3, seed=1)
        assert report.ok, "\n".join(report.lines())

    @pytest.mark.slow
    def test_W_holds_on_a_hundred_graph_samples(self):
        report = run_check({"instance": "gc-l", "n": 2}, "W", 2, samples=100, seed=11)
        assert len(report.results) == 100
        assert report.ok, "\n".join(report.lines())


# ---------------------------------------------------------------------------------------------------
class TestRunCheck:
    """
    Testing Steps:
    1. Plan sampled inputs from a seed
    2. Run the check inline and as a Celery group
    3. Read the report
    """

    # ---------------------------------
    def test_samples_are_seeded(self):
        assert sample_tuples(10, 3, 4, seed=5) == sample_tuples(10, 3, 4, seed=5)
        with pytest.raises(UsageError):
            sample_tuples(0, 2, 1, seed=0)

    def test_plan_for_derivation_slots(self):
        jobs = plan("UD", 2, samples=3, seed=0, pool_size=5)
        assert [s for s, _ in jobs] == [1, 1, 1, 2]
        assert jobs[-1] == (2, [])

    def test_plan_rejects_arity_zero(self):
        with pytest.raises(UsageError):
            plan("nu", 0, 1, 0, 5)

    def test_report(self):
        spec = {"instance": "oracle", "max_weight": 5}
        report = run_check(spec, "W", 2, samples=3, seed=7)
        assert report.ok
        assert len(report.results) == 3
        assert next(report.lines()).startswith("W on oracle in arity 2: 3/3")

    def test_group_matches_inline(self):
        spec = {"instance": "oracle", "max_weight": 4}
        inline = run_check(spec, "nu", 2, samples=2, seed=3)
        fanned = run_check(spec, "nu", 2, samples=2, seed=3, jobs=2)
        assert inline.results == fanned.results

    def test_unknown_check(self):
        with pytest.raises(UsageError):
            run_check({"instance": "oracle"}, "X", 1)

    def test_derivation_check_on_the_line(self):
        report = run_check({"instance": "gc-l", "n": 2}, "UD", 1)
        assert report.ok
        assert report.results[0]["derivations"] == 1


# ---------------------------------------------------------------------------------------------------
# pytest linfty/tests/test_structure.py -v
