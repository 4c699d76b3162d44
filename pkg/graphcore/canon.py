"""Canonical forms of oriented graphs.

A graph is relabelled by colour refinement followed by an exhaustive
individualisation search; the lexicographically least certificate wins.
All labellings reaching the least certificate differ by automorphisms, so
comparing their orientation signs decides whether the graph vanishes.

The canonical edge list puts internal edges first, low endpoint first and
sorted, then one ``(hair, vertex)`` edge per hair in hair order. Hairs are
numbered by the canonical index of their vertex.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod

from django.conf import settings
from sympy.combinatorics import Permutation

from graphcore.graph import OrientedGraph
from graphcx.exceptions import InvalidInput

logger = logging.getLogger(__name__)


class _Zero:
    def __bool__(self):
        return False

    def __repr__(self):
        return "ZERO"


ZERO = _Zero()


@dataclass(frozen=True)
class CanonicalForm:
    graph: OrientedGraph
    sign: int
    order: int
    reversing: bool

    @property
    def is_zero(self):
        return self.sign == 0


def perm_sign(images):
    """Sign of the permutation ``i -> images[i]``."""
    if len(images) < 2:
        return 1
    return -1 if Permutation(list(images)).is_odd else 1


# ---------------------------------------------------------------- refinement
def _rank(keys):
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _refine(colors, adj):
    count = max(colors) + 1 if colors else 0
    while True:
        keys = [
            (colors[u], tuple(sorted((colors[w], k) for w, k in adj[u].items())))
            for u in range(len(colors))
        ]
        new = _rank(keys)
        new_count = max(new) + 1 if new else 0
        if new_count == count:
            return colors
        colors, count = new, new_count


def _individualize(colors, x):
    return _rank([(c, 0 if u == x else 1) for u, c in enumerate(colors)])


class _Skeleton:
    """Vertex adjacency with multiplicities plus per-vertex hair counts."""

    __slots__ = ("v", "hairs", "adj", "pairs")

    def __init__(self, v, pairs, hairs):
        self.v = v
        self.pairs = pairs
        self.hairs = hairs
        self.adj = [dict() for _ in range(v)]
        for a, b in pairs:
            self.adj[a][b] = self.adj[a].get(b, 0) + 1
            self.adj[b][a] = self.adj[b].get(a, 0) + 1

    def certificate(self, pi):
        inverse = [0] * self.v
        for u, i in enumerate(pi):
            inverse[i] = u
        return (
            tuple(self.hairs[inverse[i]] for i in range(self.v)),
            tuple(
                sorted(
                    (pi[a], pi[b]) if pi[a] < pi[b] else (pi[b], pi[a])
                    for a, b in self.pairs
                )
            ),
        )

    def search(self):
        """Return ``(best certificate, labellings attaining it)``."""
        limit = settings.GRAPHCX["MAX_SEARCH_LEAVES"]
        valence = [sum(self.adj[u].values()) + self.hairs[u] for u in range(self.v)]
        start = _refine(_rank(list(zip(self.hairs, valence))), self.adj)
        best, best_leaves, leaves = None, [], 0
        stack = [start]
        while stack:
            colors = stack.pop()
            cells = Counter(colors)
            if len(cells) == self.v:
                leaves += 1
                if leaves > limit:
                    raise InvalidInput(
                        f"canonical search exceeded {limit} leaves on a {self.v}-vertex graph"
                    )
                cert = self.certificate(colors)
                if best is None or cert < best:
                    best, best_leaves = cert, [colors]
                elif cert == best:
                    best_leaves.append(colors)
                continue
            target = min(c for c, size in cells.items() if size > 1)
            for x in reversed([u for u, c in enumerate(colors) if c == target]):
                stack.append(_refine(_individualize(colors, x), self.adj))
        return best, best_leaves


def skeleton_certificate(v, pairs, hairs=None):
    """Isomorphism invariant of an undirected multigraph with hair counts."""
    hairs = list(hairs) if hairs is not None else [0] * v
    if v == 0:
        return ((), ())
    best, _ = _Skeleton(v, list(pairs), hairs).search()
    return best


# ---------------------------------------------------------------- orientation
def _labelling(graph, hair_at, pi):
    """Hair and edge relabelling induced by the vertex labelling ``pi``."""
    hair_order = sorted(range(graph.h), key=lambda j: (pi[hair_at[j]], j))
    hair_new = [0] * graph.h
    for k, j in enumerate(hair_order):
        hair_new[j] = k
    internal = [
        (min(pi[a], pi[b]), max(pi[a], pi[b]), pos)
        for pos, (a, b) in enumerate(graph.edges)
        if a >= 0 and b >= 0
    ]
    internal.sort()
    edge_new = [0] * graph.e
    for k, (_, _, pos) in enumerate(internal):
        edge_new[pos] = k
    for pos, (a, b) in enumerate(graph.edges):
        if a < 0:
            edge_new[pos] = len(internal) + hair_new[~a]
        elif b < 0:
            edge_new[pos] = len(internal) + hair_new[~b]
    return hair_order, hair_new, internal, edge_new


def _leaf_sign(graph, pi, hair_new, edge_new):
    sign = 1
    if graph.vertices_odd:
        sign *= perm_sign(pi)
        for a, b in graph.edges:
            if a >= 0 and b >= 0:
                if pi[a] > pi[b]:
                    sign = -sign
            elif a >= 0:
                sign = -sign
    else:
        sign *= perm_sign(edge_new)
    if graph.hairs_odd:
        sign *= perm_sign(hair_new)
    return sign


def _line_form(graph):
    (a, b) = graph.edges[0]
    canonical = OrientedGraph(graph.n, graph.m, 0, 2, ((~0, ~1),))
    if (graph.m - graph.n) % 2:
        return CanonicalForm(canonical, 0, 2, True)
    sign = -1 if (graph.vertices_odd and (a, b) == (~1, ~0)) else 1
    return CanonicalForm(canonical, sign, 2, False)


def _canonical_form(graph):
    graph.validate()
    if graph.v == 0:
        return _line_form(graph)

    hair_at = [0] * graph.h
    hairs = [0] * graph.v
    pairs = []
    for a, b in graph.edges:
        if a < 0:
            hair_at[~a] = b
            hairs[b] += 1
        elif b < 0:
            hair_at[~b] = a
            hairs[a] += 1
        else:
            pairs.append((a, b))
    skeleton = _Skeleton(graph.v, pairs, hairs)
    _, leaves = skeleton.search()

    multiplicities = Counter((min(a, b), max(a, b)) for a, b in pairs)
    order = (
        len(leaves)
        * prod(factorial(k) for k in multiplicities.values())
        * prod(factorial(k) for k in hairs)
    )

    pi = leaves[0]
    hair_order, hair_new, internal, edge_new = _labelling(graph, hair_at, pi)
    edges = [(lo, hi) for lo, hi, _ in internal]
    edges += [(~k, pi[hair_at[j]]) for k, j in enumerate(hair_order)]
    canonical = OrientedGraph(graph.n, graph.m, graph.v, graph.h, tuple(edges))

    reversing = False
    if graph.edges_odd and any(k > 1 for k in multiplicities.values()):
        reversing = True
    hair_swap_odd = graph.edges_odd != graph.hairs_odd
    if hair_swap_odd and any(k > 1 for k in hairs):
        reversing = True
    sign = _leaf_sign(graph, pi, hair_new, edge_new)
    if not reversing:
        for other in leaves[1:]:
            _, o_hair_new, _, o_edge_new = _labelling(graph, hair_at, other)
            if _leaf_sign(graph, other, o_hair_new, o_edge_new) != sign:
                reversing = True
                break
    if reversing:
        return CanonicalForm(canonical, 0, order, True)
    return CanonicalForm(canonical, sign, order, False)


_memo = None


def canonical_form(graph):
    """Canonical representative, orientation sign (0 for a vanishing graph) and |Aut|.

    Raises :class:`InvalidInput` for tadpoles, dangling hairs and other malformed graphs.
    """
    global _memo
    if _memo is None:
        _memo = lru_cache(maxsize=settings.GRAPHCX["CANON_CACHE_SIZE"])(
            _canonical_form
        )
    return _memo(graph)


def clear_cache():
    global _memo
    _memo = None


def canonicalize(graph):
    """Return ``(canonical graph, sign)`` or :data:`ZERO`."""
    form = canonical_form(graph)
    if form.sign == 0:
        return ZERO
    return form.graph, form.sign


def aut_order(graph):
    return canonical_form(graph).order


def is_isomorphic(g1, g2):
    """Structural isomorphism of the underlying (unoriented) graphs."""
    if (g1.n, g1.m, g1.v, g1.h, g1.e) != (g2.n, g2.m, g2.v, g2.h, g2.e):
        return False
    return canonical_form(g1).graph == canonical_form(g2).graph


def orientation_relation(g1, g2):
    """``+1``/``-1`` if ``g2`` is ``g1`` relabelled with that sign, 0 if unrelated or zero."""
    if not is_isomorphic(g1, g2):
        return 0
    f1, f2 = canonical_form(g1), canonical_form(g2)
    return f1.sign * f2.sign


def graph_key(graph):
    """Deterministic sort key for canonical graphs."""
    return (graph.v, graph.h, graph.e, graph.edges)


def automorphism_report(graph):
    """``order`` counts every symmetry, parallel edges and hairs on one vertex included.

    ``vertex_order`` is the part acting on the vertices alone: 2 for the double edge,
    whose full order is 4.
    """
    form = canonical_form(graph)
    hairs = graph.hair_counts()
    multiplicities = Counter(
        (min(a, b), max(a, b)) for a, b in graph.internal_edges
    )
    edge_factor = prod(factorial(k) for k in multiplicities.values())
    hair_factor = prod(factorial(k) for k in hairs)
    report = {
        "order": form.order,
        "vertex_order": form.order // (edge_factor * hair_factor),
        "parallel_edge_factor": edge_factor,
        "hair_factor": hair_factor,
        "orientation_reversing": form.reversing,
        "canonical": form.graph,
        "sign": form.sign,
    }
    logger.debug("Automorphism report for %s: order %d", graph, form.order)
    return report
