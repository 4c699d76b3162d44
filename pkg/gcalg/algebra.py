"""The pre-Lie algebra GC_n.

``x • y`` inserts ``y`` into each vertex of ``x`` and reconnects the edges
that were attached to that vertex to vertices of ``y`` in all possible ways.
The same rule, applied to a hairy host, is the right action of GC_n on
HGC_{m,n} (hair edges at the vertex are reconnected too).

Every product works on labelled representatives and folds the result back
through :meth:`Combination.from_raw`.
"""

import logging
import time
from fractions import Fraction
from itertools import product

from graphcore.combination import Combination, meet_windows
from graphcore.graph import OrientedGraph
from graphcx.exceptions import UsageError

logger = logging.getLogger(__name__)


def insertion_terms(host, guest, vertex):
    """Yield ``(sign, labelled graph)`` for every reconnection of ``guest`` into ``vertex``."""
    if guest.hairy:
        raise UsageError("only graphs of GC_n can be inserted into a vertex")
    if host.n != guest.n:
        raise UsageError(f"cannot insert a GC_{guest.n} graph into an n={host.n} graph")
    if not 0 <= vertex < host.v:
        raise UsageError(f"vertex {vertex} out of range for a {host.v}-vertex graph")

    sign = -1 if host.vertices_odd and (host.v - 1 - vertex) % 2 else 1
    offset = host.v - 1

    def moved(w):
        if w < 0:
            return w
        return w - 1 if w > vertex else w

    slots = [
        (pos, side)
        for pos, edge in enumerate(host.edges)
        for side in (0, 1)
        if edge[side] == vertex
    ]
    guest_edges = tuple((a + offset, b + offset) for a, b in guest.edges)
    for targets in product(range(guest.v), repeat=len(slots)):
        edges = [[moved(a), moved(b)] for a, b in host.edges]
        for (pos, side), target in zip(slots, targets):
            edges[pos][side] = target + offset
        yield sign, OrientedGraph(
            host.n,
            host.m,
            host.v - 1 + guest.v,
            host.h,
            tuple(map(tuple, edges)) + guest_edges,
        )


def _bilinear(x, y, terms):
    window = meet_windows(x.window, y.window)

    def raw():
        for gx, cx in x.plain_terms():
            for gy, cy in y.plain_terms():
                weight = cx * cy
                for sign, graph in terms(gx, gy):
                    yield weight * sign, graph

    return Combination.from_raw(raw(), n=x.n, m=x.m, window=window)


def _vertex_insertions(gx, gy):
    for u in range(gx.v):
        yield from insertion_terms(gx, gy, u)


def insert(host, guest, vertex):
    """The canonicalised sum of all insertions of ``guest`` into ``vertex`` of ``host``."""
    return Combination.from_raw(
        ((sign, graph) for sign, graph in insertion_terms(host, guest, vertex)),
        n=host.n,
        m=host.m,
    )


def prelie(x, y):
    """``x • y``; for a hairy ``x`` this is the right action of GC_n."""
    if y.m is not None:
        raise UsageError("the right factor of an insertion must lie in GC_n")
    started = time.time()
    result = _bilinear(x, y, _vertex_insertions)
    logger.debug(
        "Inserted %d atoms into %d atoms giving %d atoms (elapsed: %.3fs)",
        len(y),
        len(x),
        len(result),
        time.time() - started,
    )
    return result


def koszul(a, b):
    return -1 if (a * b) % 2 else 1


def split_degrees(combination):
    return combination.homogeneous_parts().items()


def bracket(x, y):
    """``[x, y] = x • y - (-1)^{|x||y|} y • x`` for combinations in GC_n."""
    result = Combination.zero(x.n, x.m, window=meet_windows(x.window, y.window))
    for dx, px in split_degrees(x):
        for dy, py in split_degrees(y):
            result = result + prelie(px, py) - prelie(py, px).scale(koszul(dx, dy))
    return result


def project(x, valence_class):
    return x.project(valence_class)


def differential(x, valence_class=1):
    """``[α, x]`` computed with all valences, then restricted to the class."""
    return project(bracket(alpha(x.n, window=x.window), x), valence_class)


def symmetric_brace(product_fn, x, args):
    """Symmetric brace ``x{y_1, ..., y_k}`` built from a pre-Lie product.

    Uses ``x{Y, z} = x{Y}•z - sum_i ± x{y_1, .., y_i•z, .., y_k}``, the sign
    being the Koszul sign of moving ``z`` past ``y_{i+1} .. y_k``.
    """
    if not args:
        return x
    expanded = [[]]
    for arg in args:
        expanded = [
            chosen + [(degree, part)]
            for chosen in expanded
            for degree, part in split_degrees(arg)
        ]
    result = None
    for chosen in expanded:
        term = _brace_homogeneous(product_fn, x, chosen)
        result = term if result is None else result + term
    if result is None:
        return x.scale(0)
    return result


def _brace_homogeneous(product_fn, x, args):
    if not args:
        return x
    if len(args) == 1:
        return product_fn(x, args[0][1])
    *front, (dz, z) = args
    result = product_fn(_brace_homogeneous(product_fn, x, front), z)
    for i, (dy, y) in enumerate(front):
        later = sum(d for d, _ in front[i + 1:])
        merged = front[:i] + [(dy + dz, product_fn(y, z))] + front[i + 1:]
        result = result - _brace_homogeneous(product_fn, x, merged).scale(
            koszul(dz, later)
        )
    return result


def brace(x, args):
    return symmetric_brace(prelie, x, list(args))


def loopD(x):
    """Scale every atom by its loop order."""
    return Combination(
        {g: c * g.loop_order for g, c in x.terms()}, n=x.n, m=x.m, window=x.window
    )


# ---------------------------------------------------------------- elements
def alpha(n, window=None):
    """The two-vertex graph with one edge."""
    return Combination.atom(OrientedGraph(n, None, 2, 0, ((0, 1),)), window=window)


def cycle_graph(k, n):
    return OrientedGraph(n, None, k, 0, tuple((i, (i + 1) % k) for i in range(k)))


def wheel_graph(k, n):
    spokes = tuple((0, i) for i in range(1, k + 1))
    rim = tuple((i, i % k + 1) for i in range(1, k + 1))
    return OrientedGraph(n, None, k + 1, 0, spokes + rim)


def tetrahedron(n, window=None):
    return Combination.atom(wheel_graph(3, n), window=window)


def wheel(k, n, window=None):
    return Combination.atom(wheel_graph(k, n), window=window)


def cycle(k, n, window=None):
    return Combination.atom(cycle_graph(k, n), window=window)


def mc_residual(x, twisted=True):
    """``dx + ½[x, x]``, or ``½[x, x]`` alone for the untwisted bracket."""
    residual = bracket(x, x).scale(Fraction(1, 2))
    if twisted:
        residual = residual + differential(x)
    return residual
