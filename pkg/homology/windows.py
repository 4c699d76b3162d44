"""Finite windows of the graph and tree complexes.

A complex is described by a :class:`ComplexSpec`; one of its buckets is a pair
``(degree, loop)`` (``(degree, arity)`` for TRT). :func:`build_window`
enumerates the bucket and the bucket one degree lower and assembles the
boundary between them column by column. Ranks of boundaries are cached in the
Django cache, so neighbouring buckets share work.

Kinds:

* ``gc``: GC_n restricted to a valence class.
* ``hgc``: HGC_{m,n} with the differential twisted by ``m_hair`` and, for
  ``twist="L"`` / ``twist="T"``, by the line or the tripod series as well.
* ``trt``: the twisted tree operad TRT in a fixed arity.
* ``l-source``: ``K[1] ⊕ GC_n^2[1]``, the source of the line-case comparison.
  Its generator ``D`` sits in bucket ``(-1, 0)``; a GC graph of degree ``k``
  sits in degree ``k - 1``.
"""

import logging
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from django.conf import settings
from django.core.cache import cache

from exactla.sparse import SparseMatrix, kernel_basis, rank, solve_in_image
from gcalg.algebra import differential
from graphcore.combination import Combination, Window
from graphcore.enumeration import BasisQuery, enumerate_basis
from graphcx.exceptions import CheckFailed, UsageError
from hgcalg.algebra import twisted_differential
from hgcalg.elements import line, tripod_series
from treeop.twisted import boundary_matrix as trt_boundary_matrix
from treeop.twisted import trt_basis

logger = logging.getLogger(__name__)

KINDS = ("gc", "hgc", "trt", "l-source")
TWISTS = ("m", "L", "T")
LINE_GENERATOR = "D"


@dataclass(frozen=True)
class ComplexSpec:
    kind: str
    n: int = 2
    m: Optional[int] = None
    valence_class: int = 1
    twist: str = "m"
    lam: str = "1"
    max_hairs: Optional[int] = None
    arity: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UsageError(f"unknown complex {self.kind!r}; choose from {', '.join(KINDS)}")
        if self.twist not in TWISTS:
            raise UsageError(f"unknown twist {self.twist!r}; choose from {', '.join(TWISTS)}")
        if self.kind == "hgc" and self.m is None:
            raise UsageError("hairy complexes need m")
        if self.kind == "trt" and (self.arity is None or self.arity < 1):
            raise UsageError("TRT windows need a positive arity")
        if self.twist == "L" and self.m != self.n:
            raise UsageError("the line twist lives in HGC_{n,n}")
        if self.twist == "T" and (self.m is None or self.m != self.n - 1):
            raise UsageError("the tripod twist lives in HGC_{n-1,n}")
        Fraction(self.lam)

    # ---------------------------------------------------------------- naming
    @property
    def key(self):
        return (
            f"{self.kind}:{self.n}:{self.m}:{self.valence_class}:{self.twist}:"
            f"{self.lam}:{self.max_hairs}:{self.arity}"
        )

    def describe(self):
        if self.kind == "gc":
            return f"GC_{self.n} class {self.valence_class}"
        if self.kind == "trt":
            return f"TRT({self.arity})"
        if self.kind == "l-source":
            return f"K[1] + GC_{self.n}^2[1]"
        return f"HGC_{{{self.m},{self.n}}} class {self.valence_class}"

    def twist_label(self):
        if self.kind != "hgc":
            return "none"
        if self.twist == "T":
            return f"m + T(lambda={self.lam})"
        return "m + L" if self.twist == "L" else "m"

    def as_dict(self):
        return {
            "kind": self.kind,
            "n": self.n,
            "m": self.m,
            "valence_class": self.valence_class,
            "twist": self.twist,
            "lambda": self.lam,
            "max_hairs": self.max_hairs,
            "arity": self.arity,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            kind=data["kind"],
            n=data.get("n", 2),
            m=data.get("m"),
            valence_class=data.get("valence_class", 1),
            twist=data.get("twist", "m"),
            lam=str(data.get("lambda", "1")),
            max_hairs=data.get("max_hairs"),
            arity=data.get("arity"),
        )

    # ---------------------------------------------------------------- shape
    @property
    def window(self):
        if self.max_hairs is None:
            return None
        return Window(max_hairs=self.max_hairs)

    def twist_element(self):
        if self.kind != "hgc" or self.twist == "m":
            return None
        if self.twist == "L":
            return line(self.n, self.m, window=self.window)
        return tripod_series(Fraction(self.lam), self.n, self.m, window=self.window)

    def degree_of_size(self, loop, size):
        """Degree of the bucket at ``loop`` whose graphs have the given size.

        Size counts vertices for GC and ``v + h (m + 1 - n)`` for hairy graphs;
        the source of the line comparison uses the size of its image.
        """
        if self.kind == "gc":
            return (loop - 1) * (self.n - 1) + self.n - size
        if self.kind == "hgc":
            return (loop - 1) * (self.n - 1) + self.m - size
        if self.kind == "l-source":
            return (loop - 1) * (self.n - 1) + self.n - size
        raise UsageError("TRT buckets are indexed by black vertices, not size")


def buckets(spec, max_loop, max_size, min_size=1):
    """Buckets up to ``max_loop`` whose graphs have size in ``[min_size, max_size]``.

    For TRT the buckets are ``(-k, arity)`` for ``k = 0 .. arity - 1``.
    """
    if spec.kind == "trt":
        return [(-k, spec.arity) for k in range(spec.arity)]
    if max_loop is None or max_size is None:
        raise UsageError("graph complexes need a loop bound and a size bound")
    first_loop = 1 if spec.kind == "gc" else 0
    return [
        (spec.degree_of_size(loop, size), loop)
        for loop in range(first_loop, max_loop + 1)
        for size in range(max_size, min_size - 1, -1)
    ]


# ---------------------------------------------------------------- bases
def _graph_basis(spec, degree, loop):
    if spec.kind == "gc":
        return enumerate_basis(BasisQuery(spec.n, None, degree, loop, spec.valence_class))
    if spec.kind == "hgc":
        return enumerate_basis(
            BasisQuery(
                spec.n,
                spec.m,
                degree,
                loop,
                valence_class=spec.valence_class,
                max_hairs=spec.max_hairs,
            )
        )
    basis = [LINE_GENERATOR] if (degree, loop) == (-1, 0) else []
    return basis + enumerate_basis(BasisQuery(spec.n, None, degree + 1, loop, 2))


def bucket_basis(spec, bucket):
    """Canonical basis of one bucket, in enumeration order."""
    degree, loop = bucket
    if spec.kind == "trt":
        if degree > 0 or -degree >= spec.arity:
            return []
        return trt_basis(spec.arity, -degree)
    if loop < 0:
        return []
    return _graph_basis(spec, degree, loop)


def atom_combination(spec, atom):
    if spec.kind == "hgc":
        return Combination({atom: 1}, n=spec.n, m=spec.m, window=spec.window)
    return Combination({atom: 1}, n=spec.n)


def apply_differential(spec, atom):
    """Differential of one basis atom, as a combination."""
    if spec.kind == "gc":
        return differential(atom_combination(spec, atom), spec.valence_class)
    if spec.kind == "hgc":
        return twisted_differential(
            atom_combination(spec, atom),
            extra_mc=spec.twist_element(),
            valence_class=spec.valence_class,
        )
    if atom == LINE_GENERATOR:
        return Combination.zero(spec.n)
    return differential(atom_combination(spec, atom), 2)


def coordinates(combination, index, where):
    """Sparse column of ``combination`` against a basis index."""
    column = {}
    for graph, coef in combination.terms():
        if graph not in index:
            raise UsageError(f"term outside the basis of {where}: {graph}")
        column[index[graph]] = coef
    return column


# ---------------------------------------------------------------- windows
@dataclass(frozen=True)
class ComplexWindow:
    spec: ComplexSpec
    bucket: tuple
    basis: list
    rows: list
    boundary: SparseMatrix

    @property
    def provenance(self):
        degree, loop = self.bucket
        return {
            "complex": self.spec.describe(),
            "twist": self.spec.twist_label(),
            "degree": degree,
            "loop": loop,
            "max_hairs": self.spec.max_hairs,
        }

    def permuted(self, order):
        """The same window with its basis listed in ``order``."""
        if sorted(order) != list(range(len(self.basis))):
            raise UsageError("not a permutation of the basis")
        return replace(
            self,
            basis=[self.basis[i] for i in order],
            boundary=self.boundary.permuted(list(range(len(self.rows))), list(order)),
        )


def build_window(spec, bucket):
    """Basis of ``bucket`` and the boundary into the bucket one degree lower."""
    started = time.time()
    degree, loop = bucket
    basis = bucket_basis(spec, bucket)
    rows = bucket_basis(spec, (degree - 1, loop))
    if spec.kind == "trt":
        if rows:
            boundary = trt_boundary_matrix(basis, rows)
        else:
            boundary = SparseMatrix(0, len(basis))
    else:
        index = {atom: i for i, atom in enumerate(rows)}
        where = f"{spec.describe()} bucket {(degree - 1, loop)}"
        columns = [coordinates(apply_differential(spec, atom), index, where) for atom in basis]
        boundary = SparseMatrix.from_columns(len(rows), columns)
    logger.info(
        "Computed %dx%d boundary matrix for %s bucket %s (elapsed: %.3fs)",
        boundary.rows,
        boundary.cols,
        spec.describe(),
        bucket,
        time.time() - started,
    )
    return ComplexWindow(spec, tuple(bucket), basis, rows, boundary)


def _matrix_rank(matrix):
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    return rank(matrix)


def boundary_rank(spec, bucket):
    """Rank of the boundary leaving ``bucket``; cached across runs."""
    key = f"graphcx:rank:{spec.key}:{bucket[0]}:{bucket[1]}"
    cached = cache.get(key)
    if cached is not None:
        return cached
    value = _matrix_rank(build_window(spec, bucket).boundary)
    cache.set(key, value, settings.GRAPHCX["BUCKET_CACHE_TIMEOUT"])
    return value


def bucket_dimension(spec, bucket):
    """``dim ker - rank of the incoming boundary`` in one bucket."""
    degree, loop = bucket
    size = len(bucket_basis(spec, bucket))
    if size == 0:
        return 0
    return size - boundary_rank(spec, bucket) - boundary_rank(spec, (degree + 1, loop))


def homology_dims(spec, bucket_list):
    """``{(degree, loop): dim}`` over the requested buckets."""
    started = time.time()
    dims = {tuple(b): bucket_dimension(spec, b) for b in bucket_list}
    logger.info(
        "Homology of %s on %d buckets (elapsed: %.3fs)",
        spec.describe(),
        len(dims),
        time.time() - started,
    )
    return dims


def square_residual(spec, bucket):
    """Product of the boundaries out of ``bucket`` and out of the bucket below."""
    upper = build_window(spec, bucket)
    lower = build_window(spec, (bucket[0] - 1, bucket[1]))
    if lower.basis != upper.rows:
        raise CheckFailed("adjacent windows disagree on their common basis")
    return lower.boundary @ upper.boundary


def cycles(window):
    return kernel_basis(window.boundary)


def is_boundary(spec, bucket, combination):
    """True when ``combination`` (living in ``bucket``) is the boundary of a chain."""
    degree, loop = bucket
    upper = build_window(spec, (degree + 1, loop))
    index = {atom: i for i, atom in enumerate(upper.rows)}
    column = coordinates(combination, index, f"{spec.describe()} bucket {bucket}")
    vector = [column.get(i, Fraction(0)) for i in range(len(upper.rows))]
    if not upper.basis:
        return not any(vector)
    return solve_in_image(upper.boundary, vector) is not None
