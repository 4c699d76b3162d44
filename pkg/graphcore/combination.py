"""Finite rational combinations of canonical graphs.

Coefficients are stored against the basis ``X_G = G / |Aut G|``. Operations
work on labelled representatives: :meth:`Combination.plain_terms` hands out
``(G, c / |Aut G|)`` and :meth:`Combination.from_raw` folds labelled results
back, multiplying by ``|Aut|`` of each canonical class.
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from graphcore.canon import canonical_form, graph_key
from graphcx.exceptions import UsageError


def _min(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class Window:
    """Truncation policy; ``None`` means unbounded."""

    max_weight: Optional[int] = None
    max_vertices: Optional[int] = None
    max_hairs: Optional[int] = None

    def admits(self, graph):
        if self.max_weight is not None and graph.weight > self.max_weight:
            return False
        if self.max_vertices is not None and graph.v > self.max_vertices:
            return False
        if self.max_hairs is not None and graph.h > self.max_hairs:
            return False
        return True

    def meet(self, other):
        if other is None:
            return self
        return Window(
            _min(self.max_weight, other.max_weight),
            _min(self.max_vertices, other.max_vertices),
            _min(self.max_hairs, other.max_hairs),
        )

    @property
    def unbounded(self):
        return self == Window()


def meet_windows(*windows):
    result = None
    for window in windows:
        if window is None:
            continue
        result = window if result is None else result.meet(window)
    return result


class Combination:
    __slots__ = ("n", "m", "window", "_terms")

    def __init__(self, terms=None, *, n, m=None, window=None):
        self.n = n
        self.m = m
        self.window = window
        store = {}
        for graph, coef in (terms or {}).items():
            if (graph.n, graph.m) != (n, m):
                raise UsageError(
                    f"graph of parity ({graph.n}, {graph.m}) in a ({n}, {m}) combination"
                )
            coef = Fraction(coef)
            if coef and (window is None or window.admits(graph)):
                store[graph] = coef
        self._terms = store

    # ---------------------------------------------------------------- builders
    @classmethod
    def zero(cls, n, m=None, window=None):
        return cls(n=n, m=m, window=window)

    @classmethod
    def atom(cls, graph, coef=1, window=None):
        """The basis element ``X`` of ``graph``, with the sign of its labelling."""
        form = canonical_form(graph.validate())
        terms = {form.graph: Fraction(coef) * form.sign} if form.sign else {}
        return cls(terms, n=graph.n, m=graph.m, window=window)

    @classmethod
    def from_raw(cls, raw_terms, *, n, m=None, window=None):
        """Fold ``(coef, labelled graph)`` pairs into X coordinates."""
        plain = defaultdict(Fraction)
        orders = {}
        for coef, graph in raw_terms:
            if not coef:
                continue
            if window is not None and not window.admits(graph):
                continue
            form = canonical_form(graph)
            if form.sign:
                plain[form.graph] += coef * form.sign
                orders[form.graph] = form.order
        return cls(
            {g: c * orders[g] for g, c in plain.items() if c}, n=n, m=m, window=window
        )

    # ---------------------------------------------------------------- access
    def terms(self):
        return sorted(self._terms.items(), key=lambda item: graph_key(item[0]))

    def plain_terms(self):
        """Canonical representatives with coefficients in the ``G`` basis."""
        for graph, coef in self.terms():
            yield graph, coef / canonical_form(graph).order

    def coefficient(self, graph):
        form = canonical_form(graph)
        if not form.sign:
            return Fraction(0)
        return self._terms.get(form.graph, Fraction(0)) * form.sign

    def graphs(self):
        return [g for g, _ in self.terms()]

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.terms())

    def degrees(self):
        return sorted({g.degree for g in self._terms})

    @property
    def degree(self):
        degrees = self.degrees()
        if len(degrees) > 1:
            raise UsageError(f"combination is not homogeneous: degrees {degrees}")
        return degrees[0] if degrees else None

    def max_weight(self):
        return max((g.weight for g in self._terms), default=None)

    # ---------------------------------------------------------------- algebra
    def _check(self, other):
        if not isinstance(other, Combination):
            raise UsageError(f"cannot combine a graph combination with {other!r}")
        if (self.n, self.m) != (other.n, other.m):
            raise UsageError(
                f"parity mismatch: ({self.n}, {self.m}) vs ({other.n}, {other.m})"
            )

    def __add__(self, other):
        self._check(other)
        total = dict(self._terms)
        for graph, coef in other._terms.items():
            total[graph] = total.get(graph, 0) + coef
        return Combination(
            total, n=self.n, m=self.m, window=meet_windows(self.window, other.window)
        )

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        factor = Fraction(factor)
        return Combination(
            {g: c * factor for g, c in self._terms.items()},
            n=self.n,
            m=self.m,
            window=self.window,
        )

    def __mul__(self, factor):
        if isinstance(factor, Combination):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Combination):
            return NotImplemented
        return (self.n, self.m) == (other.n, other.m) and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, self.m, frozenset(self._terms.items())))

    # ---------------------------------------------------------------- filters
    def filter(self, predicate):
        return Combination(
            {g: c for g, c in self._terms.items() if predicate(g)},
            n=self.n,
            m=self.m,
            window=self.window,
        )

    def truncate(self, window):
        window = meet_windows(self.window, window)
        return Combination(self._terms, n=self.n, m=self.m, window=window)

    def with_window(self, window):
        return Combination(self._terms, n=self.n, m=self.m, window=window)

    def degree_part(self, degree):
        return self.filter(lambda g: g.degree == degree)

    def weight_part(self, weight):
        return self.filter(lambda g: g.weight == weight)

    def homogeneous_parts(self):
        return {d: self.degree_part(d) for d in self.degrees()}

    def project(self, min_valence):
        """Drop atoms having a vertex of valence below ``min_valence``."""
        return self.filter(
            lambda g: g.v == 0 or min(g.valences()) >= min_valence
        )

    def __repr__(self):
        return f"Combination(n={self.n}, m={self.m}, terms={len(self._terms)})"

    def __str__(self):
        from graphcore.grammar import format_combination

        return format_combination(self)
