"""The rooted-tree operad RT, its module RTM and the free pre-Lie algebra.

Composition replaces a vertex by a tree: the parent edge of the vertex goes to
the new root and every child subtree is reattached to any vertex of the
inserted tree. Grafting attaches one root below any vertex of another tree.
Black vertices of the second argument are always ordered after those of the
first.
"""

import logging
from functools import lru_cache
from itertools import product

from sympy.utilities.iterables import multiset_partitions

from treeop.trees import (
    BLACK,
    STAR,
    RootedTree,
    TreeCombination,
    canonical_tree,
    is_numeric,
    join,
    parse_tree,
    tree_key,
)
from graphcore.canon import ZERO
from graphcx.exceptions import UsageError

logger = logging.getLogger(__name__)


def as_combination(x):
    if isinstance(x, TreeCombination):
        return x
    if isinstance(x, RootedTree):
        return TreeCombination.atom(x)
    if isinstance(x, (str, int)):
        text = str(x)
        return TreeCombination.atom(parse_tree(text))
    raise UsageError(f"cannot read {x!r} as a tree combination")


def _window(*combinations):
    sizes = [c.max_size for c in combinations if c.max_size is not None]
    return min(sizes) if sizes else None


# ---------------------------------------------------------------- substitution
def substitution_terms(t, position, s):
    """Replace vertex ``position`` of ``t`` by ``s``, summing over reattachments."""
    kids = t.children()[position]
    keep = [i for i in range(t.size) if i != position]
    index = {old: new for new, old in enumerate(keep)}
    offset = len(keep)
    s_root = s.root
    shift = t.max_key() + 1 - s.min_key()
    s_keys = tuple(None if k is None else k + shift for k in s.keys)
    for targets in product(range(s.size), repeat=len(kids)):
        parents = []
        for i in keep:
            p = t.parents[i]
            if p == position:
                p = offset + targets[kids.index(i)]
            elif p == -1:
                p = -1
            else:
                p = index[p]
            parents.append(p)
        for j in range(s.size):
            p = s.parents[j]
            if j == s_root:
                parent_of_position = t.parents[position]
                parents.append(-1 if parent_of_position == -1 else index[parent_of_position])
            else:
                parents.append(offset + p)
        yield RootedTree(
            tuple(t.labels[i] for i in keep) + s.labels,
            tuple(parents),
            tuple(t.keys[i] for i in keep) + s_keys,
        )


def _relabel(tree, mapping):
    return RootedTree(
        tuple(mapping.get(label, label) for label in tree.labels), tree.parents, tree.keys
    )


def compose_terms(t, label, s):
    """Raw terms of the operadic composition ``t ∘_label s``."""
    position = t.find(label)
    numbers = s.numeric_labels()
    if numbers and is_numeric(str(label)):
        i, q = int(label), len(numbers)
        t = _relabel(
            t, {str(k): str(k + q - 1) for k in t.numeric_labels() if k > i}
        )
        s = _relabel(s, {str(k): str(k + i - 1) for k in numbers})
    yield from substitution_terms(t, position, s)


def rt_compose(t, label, s):
    """``t ∘_label s`` as a canonical combination."""
    t, s = as_combination(t), as_combination(s)
    raw = []
    for tt, ct in t.terms():
        for ss, cs in s.terms():
            raw.extend((ct * cs, term) for term in compose_terms(tt, label, ss))
    return TreeCombination.from_raw(raw, max_size=_window(t, s))


# ---------------------------------------------------------------- grafting
def _check_labels(t, s):
    clash = set(t.numeric_labels()) & set(s.numeric_labels())
    if clash:
        raise UsageError(f"numbered inputs {sorted(clash)} occur on both sides")


def graft_terms(t, s):
    _check_labels(t, s)
    for v in range(t.size):
        yield join(t, s, v)


def graft(x, y):
    """Free pre-Lie product: every way of attaching the root of ``y`` below a vertex of ``x``."""
    x, y = as_combination(x), as_combination(y)
    raw = []
    for tx, cx in x.terms():
        for ty, cy in y.terms():
            raw.extend((cx * cy, term) for term in graft_terms(tx, ty))
    return TreeCombination.from_raw(raw, max_size=_window(x, y))


def corolla_brace(x, args):
    """Symmetric brace ``x{y_1, ..., y_k}``: each root attached below some vertex of ``x``."""
    x = as_combination(x)
    args = [as_combination(a) for a in args]
    raw = []
    for tx, cx in x.terms():
        for chosen in product(*(a.terms() for a in args)):
            coef = cx
            for _, c in chosen:
                coef *= c
            for targets in product(range(tx.size), repeat=len(chosen)):
                tree = tx
                for (ty, _), v in zip(chosen, targets):
                    _check_labels(tree, ty)
                    tree = join(tree, ty, v)
                raw.append((coef, tree))
    return TreeCombination.from_raw(raw, max_size=_window(x, *args))


def star():
    return RootedTree.vertex(STAR)


def module_brace(m, args):
    """``m∘(y_1, ..., y_k)`` in the free module generated by the star."""
    m = as_combination(m if m is not None else star())
    for tree, _ in m.terms():
        if tree.labels[tree.root] != STAR:
            raise UsageError("module elements are rooted at the star")
    return corolla_brace(m, args)


# ---------------------------------------------------------------- enumeration
def _set_partitions(items):
    if not items:
        return [[]]
    return [list(map(tuple, p)) for p in multiset_partitions(list(items))]


@lru_cache(maxsize=None)
def _forests(whites, blacks, min_black_children):
    """Unordered forests covering ``whites`` with ``blacks`` black vertices."""
    if not whites:
        return [()] if blacks == 0 else []
    forests = []
    for blocks in _set_partitions(whites):
        for split in product(range(blacks + 1), repeat=len(blocks)):
            if sum(split) != blacks:
                continue
            options = [
                _trees(block, k, min_black_children) for block, k in zip(blocks, split)
            ]
            forests.extend(product(*options))
    return forests


def _plant(label, forest):
    tree = RootedTree.vertex(label)
    for sub in forest:
        tree = join(tree, sub, 0)
    return tree


@lru_cache(maxsize=None)
def _trees(whites, blacks, min_black_children):
    trees = []
    for w in whites:
        rest = tuple(x for x in whites if x != w)
        for forest in _forests(rest, blacks, min_black_children):
            trees.append(_plant(w, forest))
    if blacks:
        for forest in _forests(whites, blacks - 1, min_black_children):
            if len(forest) >= min_black_children:
                trees.append(_plant(BLACK, forest))
    return tuple(trees)


def enumerate_trees(labels, blacks=0, min_black_children=2):
    """Canonical trees on the given white labels, without vanishing ones."""
    found = {}
    for tree in _trees(tuple(str(x) for x in labels), blacks, min_black_children):
        canonical = canonical_tree(tree)
        if canonical is not ZERO:
            found[canonical[0]] = True
    result = sorted(found, key=tree_key)
    logger.debug(
        "Enumerated %d trees on %d labels with %d black vertices",
        len(result),
        len(labels),
        blacks,
    )
    return result


def labeled_trees(r):
    """All rooted trees on the labels 1..r (there are r^(r-1))."""
    return enumerate_trees(range(1, r + 1))
