"""L∞[1] structures and morphisms built from a pre-Lie pair.

Every structure map has degree -1 and is graded symmetric. Algebra elements
enter Koszul signs with their own degree, module elements with ``|y| + 1``.
The defining relations are evaluated literally:

* structures: ``Σ_{i} Σ_{σ ∈ Sh(i, n-i)} ε(σ) l(l_i(x_σ(1..i)), x_σ(i+1..n))``
* morphisms: ``Σ F(l_i(...), ...) - Σ_{partitions} ε l'_k(F(B_1), ..., F(B_k))``,
  blocks ordered by their smallest input.

A derivation slot is passed as :data:`DERIVATION`; it has degree 0, is closed
and central in the source.
"""

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial
from typing import Callable, Optional

from sympy.utilities.iterables import multiset_partitions

from gcalg.algebra import koszul, split_degrees, symmetric_brace
from graphcx.exceptions import UsageError

logger = logging.getLogger(__name__)


class _Derivation:
    def __repr__(self):
        return "D"


DERIVATION = _Derivation()


# ---------------------------------------------------------------- signs
def homogeneous(x, shift=0):
    if x is DERIVATION:
        return [(0, x)]
    return [(degree + shift, part) for degree, part in split_degrees(x)]


def expand(inputs, shift=0):
    """Every choice of one homogeneous part per input."""
    choices = [[]]
    for x in inputs:
        parts = homogeneous(x, shift)
        choices = [chosen + [part] for chosen in choices for part in parts]
    return choices


def koszul_sign(degrees, order):
    """Sign of rearranging graded inputs into ``order``."""
    sign = 1
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if order[a] > order[b] and degrees[order[a]] * degrees[order[b]] % 2:
                sign = -sign
    return sign


def unshuffles(n, i):
    for inner in combinations(range(n), i):
        outer = tuple(k for k in range(n) if k not in inner)
        yield inner, outer


def set_partitions(n):
    """Set partitions of ``range(n)``, blocks ordered by their minimum."""
    for partition in multiset_partitions(list(range(n))):
        yield sorted((tuple(sorted(block)) for block in partition), key=min)


def _add(total, term, factor=1):
    if factor != 1:
        term = term.scale(factor)
    return term if total is None else total + term


def lie_bracket(product, x, y):
    """``[x, y] = x•y - (-1)^{|x||y|} y•x``."""
    result = None
    for dx, px in split_degrees(x):
        for dy, py in split_degrees(y):
            result = _add(result, product(px, py) - product(py, px).scale(koszul(dx, dy)))
    return product(x, y) if result is None else result


def shifted_bracket(bracket, y, z):
    """``μ_2(y, z) = (-1)^{|y|+1} [y, z]``."""
    result = None
    for dy, py in split_degrees(y):
        result = _add(result, bracket(py, z), -1 if dy % 2 == 0 else 1)
    return bracket(y, z) if result is None else result


def left_nested(product, factors):
    term = factors[0]
    for factor in factors[1:]:
        term = product(term, factor)
    return term


# ---------------------------------------------------------------- components
def _arity(name, r, args):
    if r < 1:
        raise UsageError(f"{name} starts in arity 1, got arity {r}")
    if len(args) != r:
        raise UsageError(f"{name}_{r} takes {r} arguments, got {len(args)}")


def nu(r, args, instance):
    """``ν_1 = d + [α, -]``; ``ν_r = α{x_1, ..., x_r}`` for ``r >= 2``."""
    args = list(args)
    _arity("nu", r, args)
    if r == 1:
        x = args[0]
        return instance.differential(x) + lie_bracket(instance.product, instance.alpha, x)
    if instance.alpha_arity is not None and r > instance.alpha_arity:
        return instance.algebra_zero()
    return symmetric_brace(instance.product, instance.alpha, args)


def W(r, args, instance):
    """``(1/r!) Σ_σ ε(σ) (..(x_σ(1)•x_σ(2))•..)•x_σ(r)``."""
    args = list(args)
    _arity("W", r, args)
    if r == 1:
        return args[0]
    total = None
    for chosen in expand(args):
        degrees = [d for d, _ in chosen]
        for order in permutations(range(r)):
            term = left_nested(instance.product, [chosen[i][1] for i in order])
            total = _add(total, term, koszul_sign(degrees, order))
    if total is None:
        return instance.algebra_zero()
    return total.scale(Fraction(1, factorial(r)))


def U(r, args, instance):
    """``U_r(x_1, ..., x_r) = m∘(x_1, ..., x_r)``."""
    args = list(args)
    _arity("U", r, args)
    if instance.m_arity is not None and r > instance.m_arity:
        return instance.module_zero()
    return symmetric_brace(instance.action, instance.m, args)


def U_withD(s, r, args, instance):
    """``U_{s+r}(D, .., D, x_1, .., x_r) = (D^s m)∘(x_1, .., x_r)``."""
    args = list(args)
    if not instance.has_derivation:
        raise UsageError(f"instance {instance.name} has no derivation D")
    if s < 0 or r < 0 or s + r < 1:
        raise UsageError(f"need s, r >= 0 with s + r >= 1, got s={s}, r={r}")
    if len(args) != r:
        raise UsageError(f"U_withD({s}, {r}) takes {r} arguments, got {len(args)}")
    if s == 0:
        return U(r, args, instance)
    host = instance.m
    for _ in range(s):
        host = instance.module_derivation(host)
    if r == 0:
        return host
    if instance.m_arity is not None and r > instance.m_arity:
        return instance.module_zero()
    return symmetric_brace(instance.action, host, args)


# ---------------------------------------------------------------- bundles
@dataclass(frozen=True)
class LinftyStructure:
    name: str
    operation: Callable
    zero: Callable
    shift: int = 0
    max_arity: Optional[int] = None

    def __call__(self, r, args):
        if r < 1:
            raise UsageError(f"{self.name} has no arity {r} operation")
        if self.max_arity is not None and r > self.max_arity:
            return self.zero()
        return self.operation(r, list(args))


@dataclass(frozen=True)
class MorphismBundle:
    """Components ``F_r`` of an L∞[1] morphism, indexed by their argument lists."""

    name: str
    component: Callable
    source: LinftyStructure
    target: Optional[LinftyStructure]
    zero: Callable
    derivation_slots: bool = False
    max_arity: Optional[int] = None

    def __call__(self, args):
        args = list(args)
        if not args:
            raise UsageError(f"{self.name} has no arity 0 component")
        if not self.derivation_slots and any(a is DERIVATION for a in args):
            raise UsageError(f"{self.name} has no derivation slots")
        plain = sum(1 for a in args if a is not DERIVATION)
        if self.max_arity is not None and plain > self.max_arity:
            return self.zero()
        return self.component(args)


def nu_structure(instance):
    def operation(r, args):
        if any(a is DERIVATION for a in args):
            return instance.algebra_zero()
        return nu(r, args, instance)

    return LinftyStructure("nu", operation, instance.algebra_zero)


def abelian_structure(instance):
    """``(g, ν_1)`` with vanishing higher operations."""

    def operation(r, args):
        if any(a is DERIVATION for a in args):
            return instance.algebra_zero()
        return nu(1, args, instance)

    return LinftyStructure("abelian", operation, instance.algebra_zero, max_arity=1)


def module_structure(instance):
    """``μ_1`` the twisted differential, ``μ_2`` the shifted bracket."""
    if not instance.has_module_structure:
        raise UsageError(f"instance {instance.name} carries no L∞ structure on its module")

    def operation(r, args):
        if r == 1:
            return instance.module_differential(args[0])
        return shifted_bracket(instance.module_bracket, args[0], args[1])

    return LinftyStructure("mu", operation, instance.module_zero, shift=1, max_arity=2)


def _split_slots(args):
    s = sum(1 for a in args if a is DERIVATION)
    return s, [a for a in args if a is not DERIVATION]


def W_bundle(instance):
    return MorphismBundle(
        "W",
        lambda args: W(len(args), args, instance),
        abelian_structure(instance),
        nu_structure(instance),
        instance.algebra_zero,
    )


def U_bundle(instance, with_derivation=False):
    if with_derivation and not instance.has_derivation:
        raise UsageError(f"instance {instance.name} has no derivation D")

    def component(args):
        s, rest = _split_slots(args)
        if s:
            return U_withD(s, len(rest), rest, instance)
        return U(len(rest), rest, instance)

    target = module_structure(instance) if instance.has_module_structure else None
    return MorphismBundle(
        "UD" if with_derivation else "U",
        component,
        nu_structure(instance),
        target,
        instance.module_zero,
        derivation_slots=with_derivation,
        max_arity=instance.m_arity,
    )


def compose_with_W(instance, with_derivation=None):
    """``V = U∘W``; needs ``U`` linear in its non-derivation slots."""
    if not instance.u_linear:
        raise UsageError(
            f"U of {instance.name} has components above arity 1; "
            "general L∞ composition is not supported"
        )
    if with_derivation is None:
        with_derivation = instance.has_derivation

    def component(args):
        s, rest = _split_slots(args)
        if not rest:
            return U_withD(s, 0, [], instance)
        inner = W(len(rest), rest, instance)
        if s:
            return U_withD(s, 1, [inner], instance)
        return U(1, [inner], instance)

    return MorphismBundle(
        "V",
        component,
        abelian_structure(instance),
        module_structure(instance),
        instance.module_zero,
        derivation_slots=with_derivation,
    )


# ---------------------------------------------------------------- residuals
def structure_residual(structure, inputs):
    inputs = list(inputs)
    n = len(inputs)
    total = None
    for chosen in expand(inputs, structure.shift):
        degrees = [d for d, _ in chosen]
        values = [x for _, x in chosen]
        for i in range(1, n + 1):
            for inner, outer in unshuffles(n, i):
                inner_value = structure(i, [values[k] for k in inner])
                if inner_value.is_zero():
                    continue
                term = structure(n - i + 1, [inner_value] + [values[k] for k in outer])
                total = _add(total, term, koszul_sign(degrees, inner + outer))
    return structure.zero() if total is None else total


def morphism_residual(bundle, inputs):
    if bundle.target is None:
        raise UsageError(f"{bundle.name} has no target structure to check against")
    inputs = list(inputs)
    n = len(inputs)
    total = None
    for chosen in expand(inputs, bundle.source.shift):
        degrees = [d for d, _ in chosen]
        values = [x for _, x in chosen]
        for i in range(1, n + 1):
            for inner, outer in unshuffles(n, i):
                inner_value = bundle.source(i, [values[k] for k in inner])
                if inner_value.is_zero():
                    continue
                term = bundle([inner_value] + [values[k] for k in outer])
                total = _add(total, term, koszul_sign(degrees, inner + outer))
        for blocks in set_partitions(n):
            images = [bundle([values[k] for k in block]) for block in blocks]
            if any(image.is_zero() for image in images):
                continue
            order = tuple(k for block in blocks for k in block)
            term = bundle.target(len(blocks), images)
            total = _add(total, term, -koszul_sign(degrees, order))
    return bundle.zero() if total is None else total


def linfty_residual(subject, inputs):
    """Defining relation of a structure or morphism evaluated on ``inputs``."""
    started = time.time()
    if isinstance(subject, LinftyStructure):
        result = structure_residual(subject, inputs)
    elif isinstance(subject, MorphismBundle):
        result = morphism_residual(subject, inputs)
    else:
        raise UsageError(f"cannot check {subject!r}")
    logger.debug(
        "Residual of %s on %d inputs has %d atoms (elapsed: %.3fs)",
        subject.name,
        len(inputs),
        len(result),
        time.time() - started,
    )
    return result
