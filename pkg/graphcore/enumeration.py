"""Basis enumeration for buckets of GC_n and HGC_{m,n}.

A bucket is fixed by degree and loop order (plus optional hair and vertex
bounds). Its graphs are produced by growing connected skeletons from a single
vertex, one edge at a time, then distributing hairs over the vertices; every
candidate is canonicalised and the vanishing ones are dropped.
"""

import logging
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Optional

from graphcore.canon import canonical_form, graph_key, skeleton_certificate
from graphcore.graph import OrientedGraph
from graphcx.exceptions import InfiniteBucket, UsageError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BasisQuery:
    n: int
    m: Optional[int]
    degree: int
    loop: int
    valence_class: int = 1
    max_hairs: Optional[int] = None
    max_vertices: Optional[int] = None

    def __post_init__(self):
        if self.valence_class not in (1, 2, 3):
            raise UsageError(f"valence class must be 1, 2 or 3, got {self.valence_class}")
        if self.n < 1:
            raise UsageError(f"n must be positive, got {self.n}")

    @property
    def hairy(self):
        return self.m is not None

    def shapes(self):
        """``(vertices, hairs, edges)`` triples compatible with degree and loop order."""
        if self.loop < 0:
            return []
        if not self.hairy:
            edges = self.loop * self.n - self.degree
            vertices = edges - self.loop + 1
            if edges < 0 or vertices < 1:
                return []
            if self.max_vertices is not None and vertices > self.max_vertices:
                return []
            return [(vertices, 0, edges)]

        slope = self.n - 1 - self.m
        unbounded = self.max_hairs is None and (
            slope == 0 or self.max_vertices is None
        )
        if slope >= 0 and unbounded:
            raise InfiniteBucket(
                f"HGC_{{{self.m},{self.n}}} bucket (degree {self.degree}, loop {self.loop})"
                " is infinite without a hair bound"
            )
        base = (self.loop - 1) * (self.n - 1) + self.m - self.degree
        shapes = []
        hairs = 1
        while True:
            if self.max_hairs is not None and hairs > self.max_hairs:
                break
            vertices = base + hairs * slope
            if slope < 0 and vertices < 0:
                break
            if self.max_vertices is not None and vertices > self.max_vertices:
                if slope >= 0:
                    break
            elif vertices >= 0:
                edges = self.loop - 1 + vertices + hairs
                if vertices == 0:
                    if hairs == 2 and edges == 1:
                        shapes.append((0, 2, 1))
                elif edges >= hairs:
                    shapes.append((vertices, hairs, edges))
            hairs += 1
        return shapes


# ---------------------------------------------------------------- skeletons
def connected_skeletons(vertices, edges, simple):
    """Connected loopless multigraphs up to isomorphism, as edge-pair lists."""
    if vertices == 1:
        return [[]] if edges == 0 else []
    cyclomatic = edges - vertices + 1
    if cyclomatic < 0:
        return []
    frontier = {(1, skeleton_certificate(1, [])): (1, [])}
    for _ in range(edges):
        grown = {}
        for v, pairs in frontier.values():
            candidates = []
            if v < vertices:
                candidates += [(v + 1, pairs + [(a, v)]) for a in range(v)]
            if len(pairs) - v + 1 < cyclomatic:
                for a, b in combinations(range(v), 2):
                    if simple and (a, b) in pairs:
                        continue
                    candidates.append((v, pairs + [(a, b)]))
            for size, candidate in candidates:
                key = (size, skeleton_certificate(size, candidate))
                if key not in grown:
                    grown[key] = (size, sorted(candidate))
        frontier = grown
    return [pairs for v, pairs in frontier.values() if v == vertices]


def _hair_placements(vertices, hairs, at_most_one):
    if at_most_one:
        return combinations(range(vertices), hairs)
    return combinations_with_replacement(range(vertices), hairs)


@lru_cache(maxsize=256)
def _enumerate(query):
    started = time.time()
    basis = set()
    for vertices, hairs, edges in query.shapes():
        if vertices == 0:
            line = OrientedGraph(query.n, query.m, 0, 2, ((~0, ~1),))
            if canonical_form(line).sign:
                basis.add(canonical_form(line).graph)
            continue
        internal = edges - hairs
        simple = query.n % 2 == 0
        hair_swap_odd = (query.n % 2 == 0) != (query.hairy and query.m % 2 == 1)
        for pairs in connected_skeletons(vertices, internal, simple):
            seen = set()
            for placement in _hair_placements(vertices, hairs, hair_swap_odd):
                counts = [0] * vertices
                for u in placement:
                    counts[u] += 1
                key = skeleton_certificate(vertices, pairs, counts)
                if key in seen:
                    continue
                seen.add(key)
                raw = OrientedGraph(
                    query.n,
                    query.m,
                    vertices,
                    hairs,
                    tuple(pairs) + tuple((~j, u) for j, u in enumerate(placement)),
                )
                if min(raw.valences()) < query.valence_class:
                    continue
                form = canonical_form(raw)
                if form.sign:
                    basis.add(form.graph)
    result = tuple(sorted(basis, key=graph_key))
    logger.info(
        "Enumerated %d graphs for %s (elapsed: %.3fs)",
        len(result),
        query,
        time.time() - started,
    )
    return result


def enumerate_basis(query):
    """Sorted canonical basis of the bucket described by ``query``."""
    return list(_enumerate(query))


def basis_index(query):
    return {graph: i for i, graph in enumerate(_enumerate(query))}
