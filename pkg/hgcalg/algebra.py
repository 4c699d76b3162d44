"""The hairy graph complexes HGC_{m,n}.

``x ⋆ y`` grafts every hair of ``y`` onto every internal vertex of ``x``: the
hair's external end is deleted and the edge is reattached to the vertex. The
result lists the vertices of ``x`` then those of ``y``, the hairs of ``x`` then
the remaining hairs of ``y``, and the edges of ``x`` then those of ``y``.
"""

import logging
import time

from gcalg.algebra import (
    alpha,
    koszul,
    prelie,
    split_degrees,
    symmetric_brace,
)
from graphcore.combination import Combination, meet_windows
from graphcore.graph import OrientedGraph
from graphcx.exceptions import InvalidInput, UsageError, WindowInsufficient

logger = logging.getLogger(__name__)


def graft_terms(x, y):
    """Yield ``(sign, labelled graph)`` for every hair of ``y`` grafted onto a vertex of ``x``."""
    if (x.n, x.m) != (y.n, y.m):
        raise UsageError(f"cannot graft HGC_{{{y.m},{y.n}}} into HGC_{{{x.m},{x.n}}}")
    hairs_odd = x.hairs_odd
    carry = -1 if hairs_odd and (y.h - 1) * x.odd_body % 2 else 1
    for j in range(y.h):
        sign = carry * (-1 if hairs_odd and j % 2 else 1)

        def moved(w, j=j):
            if w >= 0:
                return w + x.v
            k = ~w
            return ~(x.h + (k if k < j else k - 1))

        for u in range(x.v):
            edges = list(x.edges)
            for a, b in y.edges:
                if a == ~j:
                    edges.append((u, moved(b)))
                elif b == ~j:
                    edges.append((moved(a), u))
                else:
                    edges.append((moved(a), moved(b)))
            yield sign, OrientedGraph(
                x.n, x.m, x.v + y.v, x.h + y.h - 1, tuple(edges)
            )


def graft(x, y):
    """``x ⋆ y`` on combinations."""
    if (x.n, x.m) != (y.n, y.m) or x.m is None:
        raise UsageError("grafting needs two hairy combinations of the same parity")

    def raw():
        for gx, cx in x.plain_terms():
            for gy, cy in y.plain_terms():
                for sign, graph in graft_terms(gx, gy):
                    yield cx * cy * sign, graph

    return Combination.from_raw(
        raw(), n=x.n, m=x.m, window=meet_windows(x.window, y.window)
    )


def graft_bracket(x, y):
    """``[x, y] = x ⋆ y - (-1)^{|x||y|} y ⋆ x``."""
    started = time.time()
    result = Combination.zero(x.n, x.m, window=meet_windows(x.window, y.window))
    for dx, px in split_degrees(x):
        for dy, py in split_degrees(y):
            result = result + graft(px, py) - graft(py, px).scale(koszul(dx, dy))
    logger.debug(
        "Bracket of %d and %d atoms has %d atoms (elapsed: %.3fs)",
        len(x),
        len(y),
        len(result),
        time.time() - started,
    )
    return result


def gc_action(x, gamma):
    """Right action ``x • γ`` of GC_n by insertion into internal vertices."""
    if x.n != gamma.n:
        raise UsageError(f"GC_{gamma.n} does not act on an n={x.n} complex")
    return prelie(x, gamma)


def brace(host, args):
    """``host∘(γ_1, ..., γ_r)``: insert the arguments into distinct internal vertices."""
    if not args:
        raise UsageError("a brace needs at least one argument")
    return symmetric_brace(gc_action, host, list(args))


def hairD(x):
    """Scale every atom by ``E - V``."""
    return Combination(
        {g: c * g.weight for g, c in x.terms()}, n=x.n, m=x.m, window=x.window
    )


def hair_counts(x):
    return sorted({g.h for g in x.graphs()})


def alpha_action(x):
    """``δx = (-1)^{|x|} x • α``."""
    a = alpha(x.n, window=x.window)
    result = Combination.zero(x.n, x.m, window=x.window)
    for degree, part in split_degrees(x):
        result = result + gc_action(part, a).scale(-1 if degree % 2 else 1)
    return result


def check_twisting_element(x, extra_mc):
    """Reject twists that are not degree -1 elements of positive weight.

    A twist truncated by its window is only known up to that bound, so ``x``
    must be truncated at least as tightly.
    """
    for graph in extra_mc.graphs():
        if graph.degree != -1 or graph.weight < 1:
            raise InvalidInput(
                f"a twisting element needs degree -1 and weight >= 1, got {graph} "
                f"of degree {graph.degree} and weight {graph.weight}"
            )
    for bound, label in (("max_hairs", "hairs"), ("max_weight", "weight")):
        limit = getattr(extra_mc.window, bound, None)
        if limit is None:
            continue
        outer = getattr(x.window, bound, None)
        if outer is None or outer > limit:
            raise WindowInsufficient(
                f"the twisting element is truncated at {label} {limit}, "
                f"but the input allows {'any' if outer is None else outer}"
            )


def twisted_differential(x, m=None, extra_mc=None, valence_class=1):
    """``[m, x] + (-1)^{|x|} x • α`` (plus ``[μ, x]`` for an extra MC element μ).

    ``m`` defaults to the one-vertex one-hair graph.
    """
    if m is None:
        m = Combination.atom(
            OrientedGraph(x.n, x.m, 1, 1, ((~0, 0),)), window=x.window
        )
    result = graft_bracket(m, x) + alpha_action(x)
    if extra_mc is not None:
        check_twisting_element(x, extra_mc)
        result = result + graft_bracket(extra_mc, x)
    return result.project(valence_class)
