"""Pre-Lie pairs ``(g, M)`` the L∞ engine runs on.

An instance bundles the pre-Lie algebra ``g`` (product, intrinsic
differential, the MC element ``α``), a right ``g``-module ``M`` (action,
optionally an L∞ structure ``μ``), the MC element ``m`` of the twisted module
and, when present, the derivations ``D`` on both sides.

* ``gc-l``: GC_n acting on HGC_{n,n}, ``m = m_hair + L``.
* ``gc-t``: GC_n acting on HGC_{n-1,n}, ``m = m_hair + T(λ)``.
* ``oracle``: the free pre-Lie algebra on named generators plus ``α`` (the
  black vertex, ``dα = -α•α``) acting on the free module generated by the
  star. Generators are even; the module carries no L∞ structure.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from typing import Any, Callable, Optional

from gcalg.algebra import alpha as gc_alpha
from gcalg.algebra import loopD, prelie
from graphcore.combination import Combination, Window
from graphcore.enumeration import BasisQuery, enumerate_basis
from graphcx.exceptions import CheckFailed, UsageError
from hgcalg.algebra import gc_action, graft_bracket, hairD, twisted_differential
from hgcalg.elements import line, m_element, tripod_series, untwisted_residual
from treeop.operad import graft, star
from treeop.trees import BLACK, RootedTree, TreeCombination, join, parse_tree
from treeop.twisted import intrinsic_d

logger = logging.getLogger(__name__)

INSTANCE_NAMES = ("gc-l", "gc-t", "oracle")
GENERATORS = ("a", "c")
DEFAULT_WEIGHT = 3
DEFAULT_HAIRS = 5
DEFAULT_TREE_SIZE = 4


@dataclass
class PreLiePairInstance:
    name: str
    product: Callable
    differential: Callable
    alpha: Any
    action: Callable
    m: Any
    algebra_zero: Callable
    module_zero: Callable
    weight: Callable
    atom: Callable
    module_differential: Optional[Callable] = None
    module_bracket: Optional[Callable] = None
    module_mc_residual: Optional[Callable] = None
    algebra_derivation: Optional[Callable] = None
    module_derivation: Optional[Callable] = None
    alpha_arity: Optional[int] = None
    m_arity: Optional[int] = None
    pool_factory: Callable = list
    description: dict = field(default_factory=dict)

    @property
    def has_derivation(self):
        return self.module_derivation is not None

    @property
    def has_module_structure(self):
        return self.module_differential is not None

    @property
    def u_linear(self):
        """True when ``m∘(x_1, ..., x_r)`` vanishes for ``r >= 2``."""
        return self.m_arity is not None and self.m_arity <= 1

    @property
    def pool(self):
        if not hasattr(self, "_pool"):
            self._pool = list(self.pool_factory())
            logger.debug("Sample pool of %s has %d atoms", self.name, len(self._pool))
        return self._pool

    def element(self, index):
        return self.atom(self.pool[index])

    def validate(self):
        """Check ``dα + α•α = 0``, ``Dα = 0`` and the MC equation of ``m``."""
        defect = self.differential(self.alpha) + self.product(self.alpha, self.alpha)
        if not defect.is_zero():
            raise CheckFailed(f"alpha is not MC in {self.name}", offending=str(defect))
        if self.algebra_derivation is not None:
            image = self.algebra_derivation(self.alpha)
            if not image.is_zero():
                raise CheckFailed(f"D does not annihilate alpha in {self.name}")
        if self.module_mc_residual is not None:
            residual = self.module_mc_residual()
            if not residual.is_zero():
                raise CheckFailed(f"m is not MC in {self.name}", offending=str(residual))
        return self


# ---------------------------------------------------------------- graph instances
def gc_pool(n, valence_class=1, max_vertices=4, max_loop=3):
    """Small nonzero GC_n atoms used as sample inputs."""
    pool = []
    for loop in range(1, max_loop + 1):
        for vertices in range(2, max_vertices + 1):
            edges = vertices + loop - 1
            query = BasisQuery(n, None, loop * n - edges, loop, valence_class=valence_class)
            pool.extend(enumerate_basis(query))
    return pool


def graph_instance(kind, n=2, lam=1, window=None, valence_class=1):
    if kind not in ("gc-l", "gc-t"):
        raise UsageError(f"unknown graph instance {kind!r}")
    if n < 2:
        raise UsageError(f"n must be at least 2, got {n}")
    lam = Fraction(lam)
    if window is None:
        window = (
            Window(max_weight=DEFAULT_WEIGHT)
            if kind == "gc-l"
            else Window(max_weight=DEFAULT_WEIGHT, max_hairs=DEFAULT_HAIRS)
        )
    hair_parity = n if kind == "gc-l" else n - 1
    m = m_element(n, hair_parity, window=window)
    if kind == "gc-l":
        m = m + line(n, hair_parity, window=window)
    else:
        m = m + tripod_series(lam, n, hair_parity, window=window)

    def module_differential(y):
        return twisted_differential(y, m=m, valence_class=valence_class)

    return PreLiePairInstance(
        name=kind,
        product=prelie,
        differential=lambda x: x.scale(0),
        alpha=gc_alpha(n, window=window),
        action=gc_action,
        m=m,
        algebra_zero=lambda: Combination.zero(n, None, window=window),
        module_zero=lambda: Combination.zero(n, hair_parity, window=window),
        weight=lambda x: min((g.weight for g in x.graphs()), default=None),
        atom=lambda graph: Combination.atom(graph, window=window),
        module_differential=module_differential,
        module_bracket=graft_bracket,
        module_mc_residual=lambda: untwisted_residual(m),
        algebra_derivation=loopD,
        module_derivation=hairD,
        alpha_arity=2,
        m_arity=max((g.v for g in m.graphs()), default=0),
        pool_factory=lambda: gc_pool(n, valence_class),
        description={
            "instance": kind,
            "n": n,
            "m": hair_parity,
            "lambda": str(lam),
            "window": window,
        },
    )


# ---------------------------------------------------------------- free pre-Lie oracle
def _shapes(size):
    """Unlabelled rooted trees with ``size`` vertices, as parent tuples."""
    if size == 1:
        return [(-1,)]
    shapes = set()
    for smaller in _shapes(size - 1):
        for parent in range(size - 1):
            shapes.add(smaller + (parent,))
    return sorted(shapes)


def oracle_pool(max_size=3, letters=GENERATORS + (BLACK,)):
    """Canonical trees on generators and black vertices, at least one generator each."""
    found = {}
    for size in range(1, max_size + 1):
        for parents in _shapes(size):
            for labels in cartesian(letters, repeat=size):
                if all(label == BLACK for label in labels):
                    continue
                keys, count = [], 0
                for label in labels:
                    keys.append(count if label == BLACK else None)
                    count += label == BLACK
                atom = TreeCombination.atom(RootedTree(labels, parents, tuple(keys)))
                for tree, _ in atom.terms():
                    found.setdefault(str(tree), tree)
    return [found[key] for key in sorted(found, key=lambda k: (len(k), k))]


def tree_weight(x):
    return min(
        (sum(1 for label in t.labels if label != BLACK) for t, _ in x.terms()),
        default=None,
    )


def oracle_instance(max_size=DEFAULT_TREE_SIZE):
    if max_size is None or max_size < 1:
        raise UsageError("the oracle needs a positive tree-size window")

    def atom(tree):
        if isinstance(tree, str):
            tree = parse_tree(tree)
        return TreeCombination.atom(tree, max_size=max_size)

    return PreLiePairInstance(
        name="oracle",
        product=graft,
        differential=intrinsic_d,
        alpha=atom(RootedTree.black()),
        action=graft,
        m=atom(star()),
        algebra_zero=lambda: TreeCombination.zero(max_size=max_size),
        module_zero=lambda: TreeCombination.zero(max_size=max_size),
        weight=tree_weight,
        atom=atom,
        pool_factory=oracle_pool,
        description={"instance": "oracle", "max_size": max_size},
    )


def module_atom(instance, text):
    """A module element of the oracle: ``text`` planted below the star."""
    tree = parse_tree(text)
    return TreeCombination.atom(
        join(star(), tree, 0), max_size=instance.m.max_size
    )


# ---------------------------------------------------------------- specs
def build_instance(name, n=2, lam=1, max_weight=None, max_hairs=None, valence_class=1):
    """Instance from plain values (the shape handed to worker tasks)."""
    if name == "oracle":
        return oracle_instance(max_weight or DEFAULT_TREE_SIZE)
    if name not in INSTANCE_NAMES:
        raise UsageError(f"unknown instance {name!r}; choose from {', '.join(INSTANCE_NAMES)}")
    window = Window(
        max_weight=max_weight if max_weight is not None else DEFAULT_WEIGHT,
        max_hairs=max_hairs if name == "gc-l" else (max_hairs or DEFAULT_HAIRS),
    )
    return graph_instance(name, n=n, lam=lam, window=window, valence_class=valence_class)


@lru_cache(maxsize=32)
def cached_instance(name, n=2, lam="1", max_weight=None, max_hairs=None, valence_class=1):
    return build_instance(name, n, Fraction(lam), max_weight, max_hairs, valence_class)


def instance_from_spec(spec):
    return cached_instance(
        spec["instance"],
        spec.get("n", 2),
        str(spec.get("lambda", "1")),
        spec.get("max_weight"),
        spec.get("max_hairs"),
        spec.get("valence_class", 1),
    )
