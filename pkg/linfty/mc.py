"""Maurer-Cartan sets, pushforwards and the group actions on them.

Series are cut at an explicit ``order`` (number of factors); results are
further bounded by the windows the elements carry. For weight-filtered
inputs of weight >= 1 an order equal to the weight bound is exact.
"""

import logging
from fractions import Fraction
from math import factorial

from gcalg.algebra import symmetric_brace
from graphcx.exceptions import UsageError, WindowInsufficient
from linfty.bch import bch
from linfty.structure import (
    U_bundle,
    W_bundle,
    expand,
    left_nested,
    lie_bracket,
    module_structure,
    nu_structure,
)

logger = logging.getLogger(__name__)


def _order(order):
    if order is None:
        raise WindowInsufficient("series operations need an explicit order")
    if order < 1:
        raise UsageError(f"series order must be at least 1, got {order}")
    return order


def _degree_zero(x, what):
    if any(d != 0 for d in x.homogeneous_parts()):
        raise UsageError(f"{what} must have degree 0, got degrees {x.degrees()}")


def _filtered(x, instance, what):
    weight = instance.weight(x)
    if weight is not None and weight < 1:
        raise UsageError(f"{what} must have weight at least 1")


# ---------------------------------------------------------------- MC sets
def mc_residual(x, structure, order):
    """``Σ_{r=1}^{order} (1/r!) l_r(x, ..., x)``."""
    order = _order(order)
    if any(d + structure.shift != 0 for d in x.homogeneous_parts()):
        raise UsageError(
            f"MC elements of {structure.name} have shifted degree 0, got degrees {x.degrees()}"
        )
    total = structure(1, [x])
    for r in range(2, order + 1):
        if structure.max_arity is not None and r > structure.max_arity:
            break
        total = total + structure(r, [x] * r).scale(Fraction(1, factorial(r)))
    return total


def mc_pushforward(bundle, beta, order):
    """``Σ_{r=1}^{order} (1/r!) F_r(β, ..., β)``."""
    order = _order(order)
    _degree_zero(beta, "MC elements of the source")
    total = bundle([beta])
    for r in range(2, order + 1):
        if bundle.max_arity is not None and r > bundle.max_arity:
            break
        total = total + bundle([beta] * r).scale(Fraction(1, factorial(r)))
    return total


def nu_residual(beta, instance, order):
    return mc_residual(beta, nu_structure(instance), order)


def module_residual(y, instance, order=2):
    return mc_residual(y, module_structure(instance), order)


# ---------------------------------------------------------------- series
def e_series(x, order, product):
    """``e_x = Σ_{j=1}^{order} (1/j!) (..(x•x)..)•x``."""
    order = _order(order)
    _degree_zero(x, "the exponent")
    total = term = x
    for j in range(2, order + 1):
        term = product(term, x)
        if term.is_zero():
            break
        total = total + term.scale(Fraction(1, factorial(j)))
    return total


def E_series(x, y, order, action):
    """``E_x y = Σ_{j=1}^{order} (1/j!) (..(y∘x)..)∘x``."""
    order = _order(order)
    _degree_zero(x, "the exponent")
    term = action(y, x)
    total = term
    for j in range(2, order + 1):
        term = action(term, x)
        if term.is_zero():
            break
        total = total + term.scale(Fraction(1, factorial(j)))
    return total


def exp_action_algebra(beta, x, order, instance):
    """``β·exp(x) = β + E_x β + e_x`` on MC(g, ν)."""
    _filtered(x, instance, "the exponent")
    product = instance.product
    return beta + E_series(x, beta, order, product) + e_series(x, order, product)


def exp_action_module(m_prime, x, order, instance):
    """``m'·exp(x) = m' + E_x(m' + m)`` on MC of the twisted module."""
    _filtered(x, instance, "the exponent")
    return m_prime + E_series(x, m_prime + instance.m, order, instance.action)


def gauge_action(beta, x, order, differential=None, bracket=None):
    """``e^{ad_x} β + ((e^{ad_x} - 1)/ad_x) dx`` with ``ad_x = [-, x]``.

    Without a bracket this is the abelian gauge action ``β + dx``.
    """
    order = _order(order)
    _degree_zero(x, "the gauge parameter")
    result = beta
    dx = differential(x) if differential is not None else None
    if dx is not None:
        result = result + dx
    if bracket is None:
        return result
    term_beta, term_dx = beta, dx
    for k in range(1, order + 1):
        term_beta = bracket(term_beta, x)
        result = result + term_beta.scale(Fraction(1, factorial(k)))
        if term_dx is not None:
            term_dx = bracket(term_dx, x)
            result = result + term_dx.scale(Fraction(1, factorial(k + 1)))
    return result


def instance_bch(x, y, depth, instance):
    _degree_zero(x, "BCH arguments")
    _degree_zero(y, "BCH arguments")
    return bch(x, y, depth, lambda a, b: lie_bracket(instance.product, a, b))


# ---------------------------------------------------------------- identities
def telescoping_residual(x, ys, product):
    """Left side minus right side of the telescoping identity for ``x`` and ``y_1..y_n``.

    ``(..(x•y_1)•..)•y_n - ± (..(y_1•y_2)•..•y_n)•x`` against
    ``Σ_j ± (..(y_1•y_2)•..•[x, y_j])•..•y_n``.
    """
    ys = list(ys)
    if not ys:
        raise UsageError("the telescoping identity needs at least one y")
    total = None
    for chosen in expand([x] + ys):
        degrees = [d for d, _ in chosen]
        dx, hx = chosen[0]
        parts = [part for _, part in chosen[1:]]
        lhs = left_nested(product, [hx] + parts)
        lhs = lhs - left_nested(product, parts + [hx]).scale(
            -1 if dx * sum(degrees[1:]) % 2 else 1
        )
        for j, part in enumerate(parts):
            replaced = parts[:j] + [lie_bracket(product, hx, part)] + parts[j + 1:]
            sign = -1 if dx * sum(degrees[1 : j + 1]) % 2 else 1
            lhs = lhs - left_nested(product, replaced).scale(sign)
        total = lhs if total is None else total + lhs
    return total if total is not None else product(x, ys[0]).scale(0)


def distributive_first_residual(y, x, order, instance):
    """``E_x y - Σ_{j>=1} (1/j!) y∘(e_x, .., e_x)``."""
    e = e_series(x, order, instance.product)
    total = E_series(x, y, order, instance.action)
    for j in range(1, order + 1):
        total = total - symmetric_brace(instance.action, y, [e] * j).scale(
            Fraction(1, factorial(j))
        )
    return total


def distributive_second_residual(y, xs, x, order, instance):
    """``E_x(y∘(x_i)) + y∘(x_i) - Σ_{j>=0} (1/j!) y∘(E_x x_i + x_i, e_x^j)``."""
    xs = list(xs)
    if not xs:
        raise UsageError("the second distributive identity needs at least one argument")
    product, action = instance.product, instance.action
    braced = symmetric_brace(action, y, xs)
    total = E_series(x, braced, order, action) + braced
    shifted = [E_series(x, xi, order, product) + xi for xi in xs]
    e = e_series(x, order, product)
    for j in range(order + 1):
        total = total - symmetric_brace(action, y, shifted + [e] * j).scale(
            Fraction(1, factorial(j))
        )
    return total


def equivariance_residual(instance, beta, x, order, along):
    """Pushforward of ``β·exp x`` minus the action on the pushforward of ``β``."""
    if along == "W":
        source = instance_bch(beta, x, order, instance)
        lhs = mc_pushforward(W_bundle(instance), source, order)
        rhs = exp_action_algebra(
            mc_pushforward(W_bundle(instance), beta, order), x, order, instance
        )
    elif along == "U":
        bundle = U_bundle(instance)
        lhs = mc_pushforward(bundle, exp_action_algebra(beta, x, order, instance), order)
        rhs = exp_action_module(mc_pushforward(bundle, beta, order), x, order, instance)
    else:
        raise UsageError(f"equivariance is checked along W or U, not {along!r}")
    return lhs - rhs


def recover_exponent(beta, target, order, instance):
    """The unique ``x`` with ``β·exp(x) = target`` inside the window.

    Each round fixes at least one more weight level, so ``order`` rounds
    suffice when every weight up to ``order`` is in the window.
    """
    order = _order(order)
    x = target - beta
    for _ in range(order + 1):
        gap = target - exp_action_algebra(beta, x, order, instance)
        if gap.is_zero():
            logger.debug("Recovered an exponent with %d atoms", len(x))
            return x
        x = x + gap
    raise WindowInsufficient("exponent not determined within the given order")


def actions_compose_residual(beta, x, y, order, instance):
    """``(β·exp x)·exp y - β·exp(BCH(x, y))``."""
    left = exp_action_algebra(
        exp_action_algebra(beta, x, order, instance), y, order, instance
    )
    right = exp_action_algebra(beta, instance_bch(x, y, order, instance), order, instance)
    return left - right