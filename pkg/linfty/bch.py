"""Baker-Campbell-Hausdorff series.

``log(exp X exp Y)`` is expanded in the free associative algebra on ``x, y``
truncated at word length ``depth``; each homogeneous part is turned into a
Lie polynomial with the Dynkin map ``p = (1/k) Σ_w c_w [w_1, [w_2, .., w_k]]``
and then evaluated on actual elements through a bracket.
"""

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from math import factorial

from graphcx.exceptions import UsageError
from treeop.hall import format_lie_word


def _multiply(a, b, depth):
    product = defaultdict(Fraction)
    for u, cu in a.items():
        for v, cv in b.items():
            if len(u) + len(v) <= depth:
                product[u + v] += cu * cv
    return {w: c for w, c in product.items() if c}


def _exponential(letter, depth):
    return {(letter,) * k: Fraction(1, factorial(k)) for k in range(depth + 1)}


def log_of_product(depth):
    """Words of ``log(exp x exp y)`` with their coefficients."""
    z = _multiply(_exponential("x", depth), _exponential("y", depth), depth)
    z.pop((), None)
    result = defaultdict(Fraction)
    power = {(): Fraction(1)}
    for k in range(1, depth + 1):
        power = _multiply(power, z, depth)
        for word, coef in power.items():
            result[word] += coef * Fraction((-1) ** (k + 1), k)
    return {w: c for w, c in result.items() if c}


def right_nested(word):
    """``(sign, nested pair)`` of ``[w_1, [w_2, .., [w_{k-1}, w_k]]]``, or ``None``."""
    if len(word) == 1:
        return 1, word[0]
    a, b = word[-2], word[-1]
    if a == b:
        return None
    sign = 1
    if a > b:
        a, b, sign = b, a, -1
    nested = (a, b)
    for letter in reversed(word[:-2]):
        nested = (letter, nested)
    return sign, nested


@lru_cache(maxsize=16)
def bch_series(depth):
    """``[(coef, nested bracket)]`` of BCH(x, y) up to word length ``depth``."""
    if depth < 1:
        raise UsageError(f"BCH depth must be at least 1, got {depth}")
    lie = defaultdict(Fraction)
    for word, coef in log_of_product(depth).items():
        bracketed = right_nested(word)
        if bracketed is None:
            continue
        sign, nested = bracketed
        lie[nested] += coef * sign / len(word)
    return tuple(
        sorted(
            ((c, w) for w, c in lie.items() if c),
            key=lambda item: (len(format_lie_word(item[1])), format_lie_word(item[1])),
        )
    )


def bch(x, y, depth, bracket):
    """``BCH(x, y)`` truncated at ``depth`` letters, brackets supplied by ``bracket``."""
    values = {"x": x, "y": y}
    cache = {}

    def evaluate(word):
        if isinstance(word, str):
            return values[word]
        if word not in cache:
            cache[word] = bracket(evaluate(word[0]), evaluate(word[1]))
        return cache[word]

    total = None
    for coef, word in bch_series(depth):
        term = evaluate(word).scale(coef)
        total = term if total is None else total + term
    return total
