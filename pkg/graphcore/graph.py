"""Oriented (hairy) graphs.

Internal vertices are ``0 .. v-1``. Hair ``j`` is encoded as the negative
integer ``~j`` so that a single edge list describes the whole graph. A graph
with ``m is None`` lives in the Kontsevich complex GC_n; otherwise it is a
hairy graph of HGC_{m,n}.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from graphcx.exceptions import InvalidInput


def hair(j):
    return ~j


def is_hair(endpoint):
    return endpoint < 0


def hair_index(endpoint):
    return ~endpoint


@dataclass(frozen=True)
class OrientedGraph:
    n: int
    m: Optional[int]
    v: int
    h: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))

    # ---------------------------------------------------------------- kinds
    @property
    def hairy(self):
        return self.m is not None

    @property
    def is_line(self):
        return self.hairy and self.v == 0

    @property
    def e(self):
        return len(self.edges)

    @property
    def internal_edges(self):
        return [(a, b) for a, b in self.edges if a >= 0 and b >= 0]

    # ---------------------------------------------------------------- grading
    @property
    def degree(self):
        if self.hairy:
            return self.e * (self.n - 1) - self.v * self.n + self.m * (1 - self.h)
        return self.e * (self.n - 1) - (self.v - 1) * self.n

    @property
    def weight(self):
        """Filtration weight: ``E - V`` for hairy graphs, loop order for GC."""
        if self.hairy:
            return self.e - self.v
        return self.e - self.v + 1

    @property
    def loop_order(self):
        if self.hairy:
            return self.e - self.v - self.h + 1
        return self.e - self.v + 1

    # ---------------------------------------------------------------- parity
    @property
    def vertices_odd(self):
        return self.n % 2 == 1

    @property
    def edges_odd(self):
        return self.n % 2 == 0

    @property
    def hairs_odd(self):
        return self.hairy and self.m % 2 == 1

    @property
    def odd_body(self):
        """Number of odd vertex/edge symbols (vertices for odd n, edges for even n)."""
        return self.v if self.vertices_odd else self.e

    # ---------------------------------------------------------------- structure
    def hair_vertex(self, j):
        """The endpoint hair ``j`` is attached to (a vertex, or the other hair of L)."""
        for a, b in self.edges:
            if a == ~j:
                return b
            if b == ~j:
                return a
        raise InvalidInput(f"hair {j} is not attached")

    def hair_counts(self):
        counts = [0] * self.v
        for a, b in self.edges:
            if a < 0 and b >= 0:
                counts[b] += 1
            elif b < 0 and a >= 0:
                counts[a] += 1
        return counts

    def valences(self):
        """Per-vertex valence, hairs included."""
        val = [0] * self.v
        for a, b in self.edges:
            if a >= 0:
                val[a] += 1
            if b >= 0:
                val[b] += 1
        return val

    def min_valence(self):
        val = self.valences()
        return min(val) if val else None

    def is_connected(self):
        nodes = self.v + self.h
        if nodes == 0:
            return False
        parent = list(range(nodes))

        def key(x):
            return x if x >= 0 else self.v + ~x

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(key(a)), find(key(b))
            if ra != rb:
                parent[ra] = rb
        return len({find(x) for x in range(nodes)}) == 1

    def validate(self):
        """Raise :class:`InvalidInput` unless this is a legal graph; return self."""
        if self.n < 1:
            raise InvalidInput(f"dimension n={self.n} must be positive")
        if self.v < 0 or self.h < 0:
            raise InvalidInput("negative vertex or hair count")
        if not self.hairy and self.h:
            raise InvalidInput("graphs of GC_n carry no hairs")
        if self.hairy and self.h == 0:
            raise InvalidInput("hairy graphs need at least one hair")
        seen_hairs = [0] * self.h
        for a, b in self.edges:
            if a == b:
                raise InvalidInput(f"tadpole at {a}")
            for x in (a, b):
                if x >= 0 and x >= self.v:
                    raise InvalidInput(f"vertex {x} out of range 0..{self.v - 1}")
                if x < 0:
                    if ~x >= self.h:
                        raise InvalidInput(f"hair {~x} out of range 0..{self.h - 1}")
                    seen_hairs[~x] += 1
        if any(count != 1 for count in seen_hairs):
            raise InvalidInput("every hair must be the endpoint of exactly one edge")
        if self.v == 0 and self.hairy and (self.h != 2 or self.e != 1):
            raise InvalidInput("the only vertex-free hairy graph is the line")
        if not self.is_connected():
            raise InvalidInput("graph is not connected")
        return self

    # ---------------------------------------------------------------- editing
    def with_edges(self, edges, v=None, h=None):
        return OrientedGraph(
            self.n,
            self.m,
            self.v if v is None else v,
            self.h if h is None else h,
            tuple(edges),
        )

    def __str__(self):
        from graphcore.grammar import format_graph

        return format_graph(self)
