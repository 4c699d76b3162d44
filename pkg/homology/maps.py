"""Chain maps between windows and their effect on homology.

The comparison maps send the generator ``D`` of ``K[1]`` to ``D m`` and a graph
``Γ`` to ``m∘Γ``; they are the arity-one pieces of the morphism ``U`` of the
line and tripod instances. ``drop_line`` removes the ``D`` summand, which
breaks the isomorphism in the loop-0 bucket and is kept as a regression
fixture.
"""

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from exactla.sparse import SparseMatrix, kernel_basis, rank
from graphcore.combination import Combination, Window
from graphcx.exceptions import UsageError
from homology.windows import (
    LINE_GENERATOR,
    ComplexSpec,
    apply_differential,
    atom_combination,
    bucket_basis,
    build_window,
    coordinates,
)
from linfty.instances import graph_instance
from linfty.structure import U, U_withD

logger = logging.getLogger(__name__)

CASES = ("L", "T", "zero")


@dataclass(frozen=True)
class ChainMap:
    """A degree-preserving map ``K[1] ⊕ GC_n^2[1] -> HGC^{L or T}``."""

    case: str
    n: int = 2
    lam: str = "1"
    max_hairs: Optional[int] = None
    drop_line: bool = False

    def __post_init__(self):
        if self.case not in CASES:
            raise UsageError(f"unknown comparison {self.case!r}; choose from {', '.join(CASES)}")
        if self.case == "T" and self.max_hairs is None:
            raise UsageError("the tripod comparison needs a hair bound")

    @property
    def source(self):
        return ComplexSpec("l-source", n=self.n, valence_class=2)

    @property
    def target(self):
        if self.case == "T":
            return ComplexSpec(
                "hgc",
                n=self.n,
                m=self.n - 1,
                valence_class=2,
                twist="T",
                lam=self.lam,
                max_hairs=self.max_hairs,
            )
        return ComplexSpec(
            "hgc", n=self.n, m=self.n, valence_class=2, twist="L", max_hairs=self.max_hairs
        )

    def instance(self):
        kind = "gc-t" if self.case == "T" else "gc-l"
        window = Window(max_hairs=self.max_hairs)
        return graph_instance(kind, n=self.n, lam=Fraction(self.lam), window=window)

    def as_dict(self):
        return {
            "case": self.case,
            "n": self.n,
            "lambda": self.lam,
            "max_hairs": self.max_hairs,
            "drop_line": self.drop_line,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            case=data["case"],
            n=data.get("n", 2),
            lam=str(data.get("lambda", "1")),
            max_hairs=data.get("max_hairs"),
            drop_line=data.get("drop_line", False),
        )


def apply_map(chain_map, atom, instance=None):
    """Image of one source atom in the target complex."""
    target = chain_map.target
    zero = Combination.zero(target.n, target.m, window=target.window)
    if chain_map.case == "zero":
        return zero
    instance = instance or chain_map.instance()
    if atom == LINE_GENERATOR:
        if chain_map.drop_line:
            return zero
        image = U_withD(1, 0, [], instance)
    else:
        image = U(1, [atom_combination(chain_map.source, atom)], instance)
    return image.project(target.valence_class)


def map_matrix(chain_map, source_basis, target_basis, instance=None):
    instance = instance if chain_map.case == "zero" else instance or chain_map.instance()
    index = {graph: i for i, graph in enumerate(target_basis)}
    where = f"{chain_map.target.describe()} under the {chain_map.case} map"
    columns = [
        coordinates(apply_map(chain_map, atom, instance), index, where) for atom in source_basis
    ]
    return SparseMatrix.from_columns(len(target_basis), columns)


def chain_map_check(chain_map, bucket):
    """``d∘f - f∘d`` on the source atoms of ``bucket``, as a matrix."""
    started = time.time()
    degree, loop = bucket
    source, target = chain_map.source, chain_map.target
    source_basis = bucket_basis(source, bucket)
    rows = bucket_basis(target, (degree - 1, loop))
    index = {graph: i for i, graph in enumerate(rows)}
    instance = None if chain_map.case == "zero" else chain_map.instance()
    where = f"{target.describe()} bucket {(degree - 1, loop)}"
    columns = []
    for atom in source_basis:
        image = apply_map(chain_map, atom, instance)
        lhs = Combination.zero(target.n, target.m, window=target.window)
        for graph, coef in image.terms():
            lhs = lhs + apply_differential(target, graph).scale(coef)
        rhs = Combination.zero(target.n, target.m, window=target.window)
        for graph, coef in apply_differential(source, atom).terms():
            rhs = rhs + apply_map(chain_map, graph, instance).scale(coef)
        columns.append(coordinates(lhs - rhs, index, where))
    residual = SparseMatrix.from_columns(len(rows), columns)
    logger.info(
        "Chain map check of the %s map on bucket %s: %d nonzero entries (elapsed: %.3fs)",
        chain_map.case,
        bucket,
        residual.nnz,
        time.time() - started,
    )
    return residual


@dataclass(frozen=True)
class InducedRank:
    bucket: tuple
    rank: int
    source_dim: int
    target_dim: int

    @property
    def iso(self):
        return self.rank == self.source_dim == self.target_dim

    def as_dict(self):
        degree, loop = self.bucket
        return {
            "degree": degree,
            "loop": loop,
            "source_dim": self.source_dim,
            "target_dim": self.target_dim,
            "rank": self.rank,
            "iso": self.iso,
        }


def _rank(matrix):
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    return rank(matrix)


def induced_map_rank(chain_map, bucket):
    """Rank of the map induced on homology in one bucket.

    Cycles of the source are pushed forward and counted modulo the image of
    the incoming target boundary.
    """
    started = time.time()
    degree, loop = bucket
    source, target = chain_map.source, chain_map.target
    here = build_window(source, bucket)
    above = build_window(source, (degree + 1, loop))
    target_here = build_window(target, bucket)
    target_above = build_window(target, (degree + 1, loop))

    source_cycles = kernel_basis(here.boundary) if here.basis else []
    source_dim = len(source_cycles) - _rank(above.boundary)
    target_dim = (
        len(target_here.basis) - _rank(target_here.boundary) - _rank(target_above.boundary)
    )

    images = SparseMatrix(len(target_here.basis), 0)
    if source_cycles:
        cycles = SparseMatrix(
            len(here.basis),
            len(source_cycles),
            ((r, c, v) for c, vector in enumerate(source_cycles) for r, v in enumerate(vector) if v),
        )
        images = map_matrix(chain_map, here.basis, target_here.basis) @ cycles
    boundaries = target_above.boundary
    induced = _rank(boundaries.hstack(images)) - _rank(boundaries)
    result = InducedRank(tuple(bucket), induced, source_dim, target_dim)
    logger.info(
        "Induced map of the %s comparison on bucket %s: rank %d, dims %d -> %d (elapsed: %.3fs)",
        chain_map.case,
        bucket,
        induced,
        source_dim,
        target_dim,
        time.time() - started,
    )
    return result


def comparison(chain_map, bucket):
    """Chain-map residual and induced rank of one bucket, as plain data."""
    residual = chain_map_check(chain_map, bucket)
    row = induced_map_rank(chain_map, bucket).as_dict()
    row["chain_map"] = residual.is_zero()
    return row
