"""Acceptance checks at their smallest windows.

Each check is a named callable returning ``True`` on success; engine errors
count as failures and are reported with their message.
"""

import logging
import time
from fractions import Fraction

from gcalg.algebra import alpha, mc_residual, tetrahedron
from graphcore.combination import Window
from graphcx.exceptions import GraphcxError
from hgcalg.elements import line, m_element, tripod_series, untwisted_residual, verify_mc
from homology.maps import ChainMap, induced_map_rank
from homology.tables import compute_table
from homology.windows import ComplexSpec, square_residual
from linfty.instances import build_instance, oracle_instance
from linfty.mc import (
    actions_compose_residual,
    distributive_first_residual,
    equivariance_residual,
    gauge_action,
    telescoping_residual,
)
from linfty.structure import DERIVATION, U_bundle, W_bundle, linfty_residual, nu, nu_structure
from treeop.hall import hall_basis
from treeop.operad import graft, labeled_trees
from treeop.trees import TreeCombination
from treeop.twisted import trt_homology

logger = logging.getLogger(__name__)

D2_WINDOWS = [
    ("d2/GC2-class1", ComplexSpec("gc", n=2, valence_class=1), (-1, 2)),
    ("d2/GC2-class2", ComplexSpec("gc", n=2, valence_class=2), (-1, 2)),
    ("d2/GC3-class2", ComplexSpec("gc", n=3, valence_class=2), (2, 2)),
    ("d2/HGC22-class1", ComplexSpec("hgc", n=2, m=2, valence_class=1), (-1, 1)),
    ("d2/HGC12-hairs3", ComplexSpec("hgc", n=2, m=1, max_hairs=3), (-1, 1)),
]


def _d2(spec, bucket):
    return lambda: square_residual(spec, bucket).is_zero()


def _tripod(lam, n):
    def check():
        series = tripod_series(lam, n, window=Window(max_hairs=7))
        return verify_mc(series).certified

    return check


def _oracle_suite():
    oracle = oracle_instance(max_size=4)
    a, c = oracle.atom("a"), oracle.atom("c")
    x = oracle.atom("b(a)")
    tree = TreeCombination.atom
    y = oracle.atom("a(c)")

    def associator(p, q, r):
        return graft(graft(p, q), r) - graft(p, graft(q, r))

    return [
        ("oracle/prelie", lambda: associator(a, c, y) == associator(a, y, c)),
        (
            "oracle/telescoping",
            lambda: telescoping_residual(tree("b(a)"), [tree("a"), tree("b(c)")], graft).is_zero(),
        ),
        (
            "oracle/distributive",
            lambda: distributive_first_residual(oracle.m, a, 4, oracle).is_zero(),
        ),
        ("linfty/nu", lambda: linfty_residual(nu_structure(oracle), [x, c]).is_zero()),
        ("linfty/W", lambda: linfty_residual(W_bundle(oracle), [a, c, a]).is_zero()),
        ("actions/compose", lambda: actions_compose_residual(a, c, a, 4, oracle).is_zero()),
        ("actions/equivariance", lambda: equivariance_residual(oracle, a, c, 4, "W").is_zero()),
        (
            "actions/abelian-gauge",
            lambda: gauge_action(a, c, 2, differential=lambda z: nu(1, [z], oracle))
            == a + nu(1, [c], oracle),
        ),
    ]


def _graph_suite():
    gc_line = build_instance("gc-l", n=2)
    tet = tetrahedron(2)
    with_d = U_bundle(gc_line, with_derivation=True)
    line_map = ChainMap("L", n=2)
    return [
        ("linfty/U", lambda: linfty_residual(U_bundle(gc_line), [tet]).is_zero()),
        ("linfty/UD", lambda: linfty_residual(with_d, [DERIVATION, DERIVATION]).is_zero()),
        ("homology/line-loop0", lambda: induced_map_rank(line_map, (-1, 0)).iso),
        (
            "homology/dropped-line",
            lambda: not induced_map_rank(ChainMap("L", n=2, drop_line=True), (-1, 0)).iso,
        ),
    ]


def checks():
    suite = [(name, _d2(spec, bucket)) for name, spec, bucket in D2_WINDOWS]
    suite += [
        (f"mc/alpha-n{n}", lambda n=n: mc_residual(alpha(n), twisted=False).is_zero())
        for n in (2, 3)
    ]
    suite += [
        (f"mc/m-hair-{n}{m}", lambda n=n, m=m: untwisted_residual(m_element(n, m)).is_zero())
        for n, m in ((2, 2), (2, 1), (3, 2))
    ]
    suite += [(f"mc/line-n{n}", lambda n=n: verify_mc(line(n, n)).certified) for n in (2, 3)]
    suite += [
        (f"mc/tripod-n{n}-lambda{lam}", _tripod(lam, n))
        for n in (2, 3)
        for lam in (Fraction(1), Fraction(1, 2))
    ]
    suite += [
        (f"rt/cayley-{r}", lambda r=r: len(labeled_trees(r)) == r ** (r - 1))
        for r in (1, 2, 3, 4, 5)
    ]
    suite += [
        (f"trt/lie-{r}", lambda r=r: trt_homology(r) == {0: len(hall_basis(r))}) for r in (1, 2, 3)
    ]
    suite += [
        (
            "determinism",
            lambda: compute_table(ComplexSpec("trt", arity=3)).text()
            == compute_table(ComplexSpec("trt", arity=3)).text(),
        )
    ]
    return suite + _oracle_suite() + _graph_suite()


def run_selftest(only=None):
    results = []
    for name, check in checks():
        if only and not any(name.startswith(prefix) for prefix in only):
            continue
        started = time.time()
        try:
            ok, detail = bool(check()), ""
        except GraphcxError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        if not ok and not detail:
            detail = "nonzero residual"
        logger.info("Selftest %s: %s (elapsed: %.3fs)", name, ok, time.time() - started)
        results.append({"name": name, "ok": ok, "detail": detail})
    return results
