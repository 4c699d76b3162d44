"""Maurer-Cartan data of the hairy graph complexes."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from graphcore.combination import Combination, Window
from graphcore.grammar import format_fraction, format_graph
from graphcore.graph import OrientedGraph
from graphcx.exceptions import UsageError, WindowInsufficient
from hgcalg.algebra import alpha_action, graft_bracket, twisted_differential

logger = logging.getLogger(__name__)


def m_element(n, m, window=None):
    """One internal vertex with one hair."""
    return Combination.atom(OrientedGraph(n, m, 1, 1, ((~0, 0),)), window=window)


def line(n, m, coef=1, window=None):
    """The vertex-free graph ``L``; vanishes unless ``m = n`` mod 2."""
    return Combination.atom(
        OrientedGraph(n, m, 0, 2, ((~0, ~1),)), coef=coef, window=window
    )


def star(k, n, m, window=None):
    """One internal vertex carrying ``k`` hairs."""
    return Combination.atom(
        OrientedGraph(n, m, 1, k, tuple((~j, 0) for j in range(k))), window=window
    )


def tripod_series(lam, n, m=None, window=None):
    """``Σ_k λ^k S_{2k+1}`` truncated to the window's hair (or weight) bound."""
    m = n - 1 if m is None else m
    if window is None or (window.max_hairs is None and window.max_weight is None):
        raise WindowInsufficient("the tripod series needs a hair or weight bound")
    lam = Fraction(lam)
    total = Combination.zero(n, m, window=window)
    k = 1
    while True:
        hairs = 2 * k + 1
        if window.max_hairs is not None and hairs > window.max_hairs:
            break
        if window.max_weight is not None and hairs - 1 > window.max_weight:
            break
        total = total + star(hairs, n, m, window=window).scale(lam**k)
        k += 1
    return total


# ---------------------------------------------------------------- certificates
def bound_label(window):
    if window is None:
        return "exactly"
    if window.max_weight is not None:
        return f"up to weight {window.max_weight}"
    if window.max_hairs is not None:
        return f"up to {window.max_hairs} hairs"
    return "exactly"


@dataclass(frozen=True)
class MCElement:
    element: Combination
    residual: Combination
    window: Optional[Window]

    @property
    def certified(self):
        return self.residual.is_zero()

    def first_nonzero(self):
        terms = self.residual.terms()
        return terms[0] if terms else None

    def certificate(self):
        if self.certified:
            return f"OK {bound_label(self.window)}"
        graph, coef = self.first_nonzero()
        return (
            f"FAIL {bound_label(self.window)}: residual coef "
            f"{format_fraction(coef)}\n{format_graph(graph)}"
        )


def mc_residual(x, m=None):
    """``dx + ½[x, x]`` for the differential twisted by α and ``m``."""
    return twisted_differential(x, m=m) + graft_bracket(x, x).scale(Fraction(1, 2))


def untwisted_residual(x):
    """``δx + ½[x, x]``; vanishes exactly for the one-vertex one-hair graph."""
    return alpha_action(x) + graft_bracket(x, x).scale(Fraction(1, 2))


def verify_mc(x, m=None, window=None, twisted=True):
    """Certify the MC equation of ``x`` up to ``window``."""
    if x.degrees() not in ([], [-1]):
        raise UsageError(f"MC elements have degree -1, got degrees {x.degrees()}")
    if window is not None:
        x = x.truncate(window)
    residual = mc_residual(x, m=m) if twisted else untwisted_residual(x)
    result = MCElement(x, residual, x.window)
    logger.info("MC check: %s", result.certificate().splitlines()[0])
    return result
