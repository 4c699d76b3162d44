"""Twisted rooted trees and their differential.

Black vertices play the role of the Maurer-Cartan generator ``α`` with
``dα = -α•α``. The intrinsic differential splits one black vertex into two;
the twisted differential adds a black root, black leaves and the operadic
twisting terms at every white vertex. TRT is the part spanned by trees whose
black vertices all have at least two children.
"""

import logging
import time
from fractions import Fraction
from itertools import product

from exactla.sparse import SparseMatrix, rank
from graphcx.exceptions import CheckFailed, UsageError
from treeop.operad import as_combination, enumerate_trees, substitution_terms
from treeop.trees import BLACK, STAR, RootedTree, TreeCombination, join

logger = logging.getLogger(__name__)

MAX_HOMOLOGY_ARITY = 5


def _corolla_with(label, black_on_top):
    if black_on_top:
        return RootedTree((BLACK, label), (-1, 0), (0, None))
    return RootedTree((label, BLACK), (-1, 0), (None, 0))


def split_terms(tree):
    """``(sign, tree)`` terms of the intrinsic differential (one black split)."""
    blacks = sorted(
        (k, i) for i, k in enumerate(tree.keys) if k is not None
    )
    kids = tree.children()
    for rank_, (key, b) in enumerate(blacks):
        sign = -1 if rank_ % 2 == 0 else 1
        new = tree.size
        for targets in product((b, new), repeat=len(kids[b])):
            parents = list(tree.parents) + [b]
            for child, target in zip(kids[b], targets):
                parents[child] = target
            yield sign, RootedTree(
                tree.labels + (BLACK,),
                tuple(parents),
                tree.keys + (key + Fraction(1, 2),),
            )


def intrinsic_d(x):
    x = as_combination(x)
    raw = []
    for tree, coef in x.terms():
        raw.extend((coef * sign, t) for sign, t in split_terms(tree))
    return TreeCombination.from_raw(raw, max_size=x.max_size)


def nu1_terms(tree):
    """``dT + α•T - (-1)^{|T|} T•α`` on a single tree."""
    yield from split_terms(tree)
    yield 1, join(RootedTree.black(), tree, 0)
    parity = -1 if tree.blacks % 2 else 1
    for v in range(tree.size):
        yield -parity, join(tree, RootedTree.black(), v)


def tw_terms(tree):
    yield from nu1_terms(tree)
    parity = -1 if tree.blacks % 2 else 1
    for position in tree.white_positions():
        label = tree.labels[position]
        for s, sign in ((_corolla_with(label, True), 1), (_corolla_with(label, False), -1)):
            for term in substitution_terms(tree, position, s):
                yield -parity * sign, term


def tw_differential(x):
    """The differential of the twisted operad on a tree combination."""
    x = as_combination(x)
    if any(STAR in tree.labels for tree, _ in x.terms()):
        raise UsageError("the twisted differential acts on trees without the star")
    raw = []
    for tree, coef in x.terms():
        raw.extend((coef * sign, t) for sign, t in tw_terms(tree))
    return TreeCombination.from_raw(raw, max_size=x.max_size)


def is_trt(tree):
    kids = tree.children()
    return all(
        len(kids[i]) >= 2 for i, label in enumerate(tree.labels) if label == BLACK
    )


def trt_basis(r, k):
    """Canonical TRT trees with white inputs 1..r and ``k`` black vertices."""
    if r < 1 or k < 0:
        raise UsageError(f"need r >= 1 and k >= 0, got r={r}, k={k}")
    return enumerate_trees(range(1, r + 1), blacks=k)


def boundary_matrix(source, target):
    """Matrix of the twisted differential from ``source`` trees to ``target`` trees."""
    index = {tree: i for i, tree in enumerate(target)}
    columns = []
    for tree in source:
        image = tw_differential(TreeCombination({tree: 1}))
        column = {}
        for t, coef in image.terms():
            if t not in index:
                raise CheckFailed(
                    "differential left the TRT subspace", offending=str(t)
                )
            column[index[t]] = coef
        columns.append(column)
    return SparseMatrix.from_columns(len(target), columns)


def trt_homology(r):
    """``{degree: dimension}`` of TRT in arity ``r``; nonzero entries only."""
    if r > MAX_HOMOLOGY_ARITY:
        raise UsageError(f"arity {r} exceeds the supported bound {MAX_HOMOLOGY_ARITY}")
    started = time.time()
    bases = [trt_basis(r, k) for k in range(r)]
    ranks = []
    for k in range(r - 1):
        ranks.append(rank(boundary_matrix(bases[k], bases[k + 1])))
    ranks.append(0)
    dims = {}
    for k, basis in enumerate(bases):
        incoming = ranks[k - 1] if k else 0
        dim = len(basis) - ranks[k] - incoming
        if dim:
            dims[-k] = dim
    logger.info(
        "TRT homology in arity %d: %s (elapsed: %.3fs)", r, dims, time.time() - started
    )
    return dims
