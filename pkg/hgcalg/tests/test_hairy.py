from fractions import Fraction

import pytest

from gcalg.algebra import (
    alpha,
    insertion_terms,
    koszul,
    loopD,
    prelie,
    tetrahedron,
    wheel_graph,
)
from graphcore.combination import Combination, Window
from graphcore.enumeration import BasisQuery, enumerate_basis
from graphcore.graph import OrientedGraph
from graphcx.exceptions import InvalidInput, UsageError, WindowInsufficient
from hgcalg.algebra import (
    brace,
    gc_action,
    graft_bracket,
    graft_terms,
    hairD,
    twisted_differential,
)
from hgcalg.elements import (
    line,
    m_element,
    star,
    tripod_series,
    untwisted_residual,
    verify_mc,
)

TET_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def hairy(n, m, v, h, edges):
    return Combination.atom(OrientedGraph(n, m, v, h, edges))


# ---------------------------------------------------------------------------------------------------
class TestGraftBracket:
    """
    Testing Steps:
    1. Graft small hairy graphs into each other
    2. Check vanishing brackets, antisymmetry and Jacobi
    """

    # ---------------------------------
    @pytest.mark.parametrize("n", [2, 3])
    def test_line_brackets(self, n):
        L = line(n, n)
        assert not L.is_zero()
        assert graft_bracket(L, L).is_zero()
        assert graft_bracket(m_element(n, n), L).is_zero()

    def test_graft_counts(self):
        tripod = OrientedGraph(3, 2, 1, 3, ((~0, 0), (~1, 0), (~2, 0)))
        assert len(list(graft_terms(tripod, tripod))) == 3
        merged = [g for _, g in graft_terms(tripod, tripod)]
        assert all((g.v, g.h) == (2, 5) for g in merged)

    def test_tripod_bracket_is_the_dumbbell(self):
        t1 = star(3, 3, 2)
        result = graft_bracket(t1, t1)
        assert {(g.v, g.h, g.e) for g in result.graphs()} <= {(2, 5, 6)}

    def test_antisymmetry_and_jacobi(self):
        x = m_element(3, 2)
        y = star(3, 3, 2)
        z = hairy(3, 2, 2, 2, ((0, 1), (~0, 0), (~1, 1)))
        # x and y are both odd
        assert graft_bracket(x, y) == graft_bracket(y, x)
        left = graft_bracket(x, graft_bracket(y, z))
        right = graft_bracket(graft_bracket(x, y), z) - graft_bracket(
            y, graft_bracket(x, z)
        )
        assert left == right

    def test_parity_mismatch(self):
        with pytest.raises(UsageError):
            graft_bracket(m_element(2, 1), m_element(2, 2))


# ---------------------------------------------------------------------------------------------------
class TestGCAction:
    """
    Testing Steps:
    1. Act by GC_n on hairy graphs
    2. Check the module identity and braces
    """

    # ---------------------------------
    def test_line_is_inert(self):
        assert gc_action(line(2, 2), alpha(2)).is_zero()

    def test_m_times_alpha(self):
        m = OrientedGraph(2, 2, 1, 1, ((~0, 0),))
        edge = OrientedGraph(2, None, 2, 0, ((0, 1),))
        assert len(list(insertion_terms(m, edge, 0))) == 2
        q = hairy(2, 2, 2, 1, ((~0, 0), (0, 1)))
        assert gc_action(m_element(2, 2), alpha(2)) == q

    @pytest.mark.parametrize(
        "host,a,b",
        [
            ("edge", "alpha", "tet"),
            ("edge", "tet", "alpha"),
            ("m", "alpha", "tet"),
            ("tripod", "alpha", "alpha"),
        ],
    )
    def test_right_module_identity(self, host, a, b):
        elements = {
            "edge": hairy(2, 1, 2, 1, ((0, 1), (~0, 0))),
            "m": m_element(2, 2),
            "tripod": star(3, 2, 1),
            "alpha": alpha(2),
            "tet": tetrahedron(2),
        }
        h, a, b = elements[host], elements[a], elements[b]
        left = gc_action(gc_action(h, a), b) - gc_action(h, prelie(a, b))
        right = gc_action(gc_action(h, b), a) - gc_action(h, prelie(b, a))
        assert left == right.scale(koszul(a.degree, b.degree))

    def test_module_identity(self):
        x = hairy(2, 1, 2, 1, ((0, 1), (~0, 0)))
        assert brace(x, [alpha(2), tetrahedron(2)]) == brace(x, [tetrahedron(2), alpha(2)])

    def test_brace_of_m_with_tetrahedron(self):
        hairy_tet = hairy(2, 2, 4, 1, ((~0, 0),) + wheel_graph(3, 2).edges)
        assert hairy_tet == -hairy(2, 2, 4, 1, ((~0, 0),) + TET_EDGES)
        assert brace(m_element(2, 2), [tetrahedron(2)]) == hairy_tet

    def test_brace_with_two_arguments_on_one_vertex(self):
        host = m_element(2, 2) + line(2, 2)
        assert brace(host, [alpha(2), alpha(2)]).is_zero()

    def test_empty_brace_rejected(self):
        with pytest.raises(UsageError):
            brace(m_element(2, 2), [])


# ---------------------------------------------------------------------------------------------------
class TestHairDerivation:
    # ---------------------------------
    def test_values(self):
        m, L = m_element(2, 2), line(2, 2)
        assert hairD(m).is_zero()
        assert hairD(L) == L
        assert hairD(m + L) == L

    def test_compatible_with_the_action(self):
        x = star(3, 2, 1)
        gamma = tetrahedron(2)
        assert hairD(gc_action(x, gamma)) == gc_action(hairD(x), gamma) + gc_action(
            x, loopD(gamma)
        )


# ---------------------------------------------------------------------------------------------------
class TestTwistedDifferential:
    """
    Testing Steps:
    1. Build the MC elements m, L and the tripod series
    2. Check their MC equations and the closedness of L and T_1
    3. Check d^2 = 0 on a small bucket
    """

    # ---------------------------------
    @pytest.mark.parametrize("n,m", [(2, 2), (3, 3), (2, 1), (3, 2)])
    def test_m_is_maurer_cartan(self, n, m):
        assert untwisted_residual(m_element(n, m)).is_zero()

    @pytest.mark.parametrize("n", [2, 3])
    def test_line_is_closed(self, n):
        assert twisted_differential(line(n, n)).is_zero()
        assert verify_mc(line(n, n)).certificate() == "OK exactly"

    @pytest.mark.parametrize("n", [2, 3])
    def test_tripod_is_closed(self, n):
        assert twisted_differential(star(3, n, n - 1)).is_zero()

    def test_tripod_series_terms(self):
        window = Window(max_hairs=5)
        assert tripod_series(1, 2, window=window) == star(3, 2, 1) + star(5, 2, 1)
        lam = Fraction(2, 3)
        expected = star(3, 2, 1).scale(lam) + star(5, 2, 1).scale(lam**2)
        assert tripod_series(lam, 2, window=window) == expected

    def test_tripod_series_needs_a_bound(self):
        with pytest.raises(WindowInsufficient):
            tripod_series(1, 2)

    @pytest.mark.parametrize("lam", [1, Fraction(-1, 2)])
    def test_tripod_series_is_maurer_cartan(self, lam):
        window = Window(max_hairs=7)
        result = verify_mc(tripod_series(lam, 2, window=window))
        assert result.certified
        assert result.certificate() == "OK up to 7 hairs"

    def test_line_twist_adds_a_hair(self):
        x = hairy(3, 3, 2, 1, ((0, 1), (0, 1), (~0, 0)))
        L = line(3, 3)
        difference = twisted_differential(x, extra_mc=L) - twisted_differential(x)
        assert difference == graft_bracket(L, x)
        assert {g.h for g in difference.graphs()} <= {2}

    def test_twist_must_be_a_weighted_degree_minus_one_element(self):
        x = hairy(2, 2, 2, 1, ((0, 1), (~0, 0)))
        with pytest.raises(InvalidInput, match="degree -1"):
            twisted_differential(x, extra_mc=m_element(2, 2))
        with pytest.raises(InvalidInput):
            twisted_differential(x, extra_mc=x)

    def test_truncated_twist_needs_a_truncated_input(self):
        x = star(3, 2, 1)
        series = tripod_series(1, 2, window=Window(max_hairs=5))
        with pytest.raises(WindowInsufficient, match="hairs 5"):
            twisted_differential(x, extra_mc=series)
        wide = Combination.atom(x.graphs()[0], window=Window(max_hairs=7))
        with pytest.raises(WindowInsufficient):
            twisted_differential(wide, extra_mc=series)
        narrow = Combination.atom(x.graphs()[0], window=Window(max_hairs=5))
        result = twisted_differential(narrow, extra_mc=series)
        assert {g.h for g in result.graphs()} <= {3, 5}

    @pytest.mark.slow
    def test_squares_to_zero_on_a_bucket(self):
        query = BasisQuery(3, 2, degree=-2, loop=1, valence_class=1, max_hairs=3)
        for graph in enumerate_basis(query):
            x = Combination({graph: 1}, n=3, m=2)
            assert twisted_differential(twisted_differential(x)).is_zero()


# ---------------------------------------------------------------------------------------------------
# pytest hgcalg/tests/test_hairy.py -v
