"""Rooted trees with white, black and star vertices.

Trees are stored flat: parallel tuples of labels, parent indices (``-1`` for
the root) and black ordering keys. White labels are numbers (operadic inputs)
or generator names; ``b`` is a black vertex (odd, degree -1) and ``M`` is the
module star, allowed only at the root.

The canonical form sorts children by their shape string and numbers the black
vertices in preorder; the sign is the parity of that renumbering.
"""

import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from graphcore.canon import ZERO, perm_sign
from graphcx.exceptions import InvalidInput, ParseError, UsageError

BLACK = "b"
STAR = "M"


def is_numeric(label):
    return label.isdigit()


@dataclass(frozen=True)
class RootedTree:
    labels: Tuple[str, ...]
    parents: Tuple[int, ...]
    keys: Tuple[Optional[Union[int, Fraction]], ...]

    # ---------------------------------------------------------------- builders
    @classmethod
    def vertex(cls, label):
        return cls((label,), (-1,), (0 if label == BLACK else None,))

    @classmethod
    def black(cls):
        return cls.vertex(BLACK)

    # ---------------------------------------------------------------- structure
    @property
    def size(self):
        return len(self.labels)

    @property
    def root(self):
        return self.parents.index(-1)

    def children(self):
        kids = [[] for _ in self.labels]
        for i, p in enumerate(self.parents):
            if p >= 0:
                kids[p].append(i)
        return kids

    @property
    def blacks(self):
        return sum(1 for label in self.labels if label == BLACK)

    @property
    def degree(self):
        return -self.blacks

    def numeric_labels(self):
        return sorted(int(label) for label in self.labels if is_numeric(label))

    @property
    def arity(self):
        return len(self.numeric_labels())

    def white_positions(self):
        return [i for i, label in enumerate(self.labels) if label not in (BLACK, STAR)]

    def find(self, label):
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise UsageError(f"label {label!r} does not occur in {format_tree(self)}")

    def validate(self):
        if self.parents.count(-1) != 1:
            raise InvalidInput("a tree has exactly one root")
        numbers = [label for label in self.labels if is_numeric(label)]
        if len(set(numbers)) != len(numbers):
            raise InvalidInput("numbered inputs must be distinct")
        if STAR in self.labels and self.labels[self.root] != STAR:
            raise InvalidInput("the module star must be the root")
        if self.labels.count(STAR) > 1:
            raise InvalidInput("at most one module star")
        for i in range(self.size):
            j, steps = i, 0
            while j >= 0:
                j = self.parents[j]
                steps += 1
                if steps > self.size:
                    raise InvalidInput("parent relation has a cycle")
        return self

    def max_key(self):
        keys = [k for k in self.keys if k is not None]
        return max(keys) if keys else -1

    def min_key(self):
        keys = [k for k in self.keys if k is not None]
        return min(keys) if keys else 0

    def __str__(self):
        return format_tree(self)


def join(t, s, attach_to, after=True):
    """``t`` and ``s`` side by side with the root of ``s`` made a child of ``attach_to``.

    Black vertices of ``s`` are ordered after (or before) those of ``t``.
    """
    offset = t.size
    shift = (t.max_key() + 1 - s.min_key()) if after else (t.min_key() - 1 - s.max_key())
    parents = list(t.parents) + [
        (p + offset if p >= 0 else attach_to) for p in s.parents
    ]
    keys = list(t.keys) + [None if k is None else k + shift for k in s.keys]
    return RootedTree(t.labels + s.labels, tuple(parents), tuple(keys))


# ---------------------------------------------------------------- canonical form
class _Vanishes(Exception):
    pass


def _shape(tree):
    kids = tree.children()

    def walk(i):
        subtrees = sorted((walk(c) for c in kids[i]), key=lambda item: item[0])
        odd = (1 if tree.keys[i] is not None else 0) + sum(s[2] for s in subtrees)
        for a, b in zip(subtrees, subtrees[1:]):
            if a[0] == b[0] and a[2] % 2:
                raise _Vanishes
        text = tree.labels[i]
        if subtrees:
            text += "(" + ",".join(s[0] for s in subtrees) + ")"
        return text, i, odd, subtrees

    return walk(tree.root)


def canonical_tree(tree):
    """Return ``(canonical tree, sign)`` or :data:`ZERO`."""
    try:
        top = _shape(tree)
    except _Vanishes:
        return ZERO
    labels, parents, order = [], [], []

    def emit(node, parent):
        _, i, _, subtrees = node
        position = len(labels)
        labels.append(tree.labels[i])
        parents.append(parent)
        order.append(i)
        for sub in subtrees:
            emit(sub, position)

    emit(top, -1)
    raw_keys = [tree.keys[i] for i in order if tree.keys[i] is not None]
    rank = {k: r for r, k in enumerate(sorted(raw_keys))}
    sign = perm_sign([rank[k] for k in raw_keys])
    keys, counter = [], 0
    for i in order:
        if tree.keys[i] is None:
            keys.append(None)
        else:
            keys.append(counter)
            counter += 1
    return RootedTree(tuple(labels), tuple(parents), tuple(keys)), sign


def tree_key(tree):
    return (tree.size, format_tree(tree))


# ---------------------------------------------------------------- grammar
_TOKEN = re.compile(r"\s*(?:([0-9]+|[A-Za-z_][A-Za-z0-9_]*)|([(),]))")


def parse_tree(text):
    """Parse ``1(3,4(2,5))``; ``b`` is black (ordered by position), ``M`` the star."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match or match.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", 1, pos + 1)
        tokens.append((match.group(1) or match.group(2), match.start(1 if match.group(1) else 2) + 1))
        pos = match.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    labels, parents, keys = [], [], []
    index = [0]

    def peek():
        return tokens[index[0]] if index[0] < len(tokens) else (None, len(text) + 1)

    def vertex(parent):
        token, column = peek()
        if token is None or token in "(),":
            raise ParseError(f"expected a label, got {token!r}", 1, column)
        index[0] += 1
        position = len(labels)
        labels.append(token)
        parents.append(parent)
        keys.append(sum(1 for k in keys if k is not None) if token == BLACK else None)
        if peek()[0] == "(":
            index[0] += 1
            vertex(position)
            while peek()[0] == ",":
                index[0] += 1
                vertex(position)
            token, column = peek()
            if token != ")":
                raise ParseError(f"expected ')', got {token!r}", 1, column)
            index[0] += 1

    vertex(-1)
    if index[0] != len(tokens):
        token, column = peek()
        raise ParseError(f"trailing input {token!r}", 1, column)
    tree = RootedTree(tuple(labels), tuple(parents), tuple(keys))
    try:
        return tree.validate()
    except InvalidInput as exc:
        raise ParseError(str(exc), 1, 1)


def format_tree(tree):
    kids = tree.children()

    def walk(i):
        text = tree.labels[i]
        if kids[i]:
            text += "(" + ",".join(walk(c) for c in kids[i]) + ")"
        return text

    return walk(tree.root)


# ---------------------------------------------------------------- combinations
class TreeCombination:
    """Rational combination of canonical trees."""

    __slots__ = ("_terms", "max_size")

    def __init__(self, terms=None, max_size=None):
        self.max_size = max_size
        self._terms = {
            t: Fraction(c)
            for t, c in (terms or {}).items()
            if c and (max_size is None or t.size <= max_size)
        }

    @classmethod
    def zero(cls, max_size=None):
        return cls(max_size=max_size)

    @classmethod
    def atom(cls, tree, coef=1, max_size=None):
        if isinstance(tree, str):
            tree = parse_tree(tree)
        canonical = canonical_tree(tree)
        if canonical is ZERO:
            return cls(max_size=max_size)
        t, sign = canonical
        return cls({t: Fraction(coef) * sign}, max_size=max_size)

    @classmethod
    def from_raw(cls, raw_terms, max_size=None):
        total = defaultdict(Fraction)
        for coef, tree in raw_terms:
            if not coef or (max_size is not None and tree.size > max_size):
                continue
            canonical = canonical_tree(tree)
            if canonical is ZERO:
                continue
            t, sign = canonical
            total[t] += coef * sign
        return cls(total, max_size=max_size)

    # ---------------------------------------------------------------- access
    def terms(self):
        return sorted(self._terms.items(), key=lambda item: tree_key(item[0]))

    def coefficient(self, tree):
        if isinstance(tree, str):
            tree = parse_tree(tree)
        canonical = canonical_tree(tree)
        if canonical is ZERO:
            return Fraction(0)
        t, sign = canonical
        return self._terms.get(t, Fraction(0)) * sign

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degrees(self):
        return sorted({t.degree for t in self._terms})

    def homogeneous_parts(self):
        return {d: self.filter(lambda t, d=d: t.degree == d) for d in self.degrees()}

    # ---------------------------------------------------------------- algebra
    def _window(self, other):
        if self.max_size is None:
            return other.max_size
        if other.max_size is None:
            return self.max_size
        return min(self.max_size, other.max_size)

    def __add__(self, other):
        total = dict(self._terms)
        for t, c in other._terms.items():
            total[t] = total.get(t, 0) + c
        return TreeCombination(total, max_size=self._window(other))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        factor = Fraction(factor)
        return TreeCombination(
            {t: c * factor for t, c in self._terms.items()}, max_size=self.max_size
        )

    def __mul__(self, factor):
        return self.scale(factor)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TreeCombination):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def filter(self, predicate):
        return TreeCombination(
            {t: c for t, c in self._terms.items() if predicate(t)},
            max_size=self.max_size,
        )

    def truncate(self, max_size):
        return TreeCombination(self._terms, max_size=max_size)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for tree, coef in self.terms():
            parts.append(f"{coef} {format_tree(tree)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TreeCombination(terms={len(self._terms)})"


def parse_tree_combination(text, max_size=None):
    """Parse ``1/2 a(b) + -1 c``, the form written by ``str(TreeCombination)``.

    A term without a coefficient has coefficient 1; ``0`` is the zero combination.
    """
    text = text.strip()
    total = TreeCombination.zero(max_size=max_size)
    if text == "0":
        return total
    column = 1
    for part in text.split(" + "):
        words = part.split(None, 1)
        if not words:
            raise ParseError("empty term", 1, column)
        coef = Fraction(1)
        body = part
        if len(words) == 2:
            try:
                coef = Fraction(words[0])
                body = words[1]
            except (ValueError, ZeroDivisionError):
                body = part
        try:
            total = total + TreeCombination.atom(body, coef, max_size=max_size)
        except ParseError as exc:
            raise ParseError(f"in term {part.strip()!r}: {exc}", 1, column)
        column += len(part) + 3
    return total
