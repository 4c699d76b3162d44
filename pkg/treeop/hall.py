"""Lyndon words, Hall bases and the tree expansion of Lie monomials."""

import re

from graphcx.exceptions import ParseError
from treeop.operad import graft
from treeop.trees import RootedTree, TreeCombination


def lyndon_words(k, n):
    """Lyndon words of length exactly ``n`` over ``0..k-1`` (Duval's generation)."""
    word = [-1]
    while word:
        word[-1] += 1
        m = len(word)
        if m == n:
            yield tuple(word)
        while len(word) < n:
            word.append(word[len(word) - m])
        while word and word[-1] == k - 1:
            word.pop()


def is_lyndon(word):
    return all(word < word[i:] + word[:i] for i in range(1, len(word)))


def standard_bracketing(word):
    """Bracket a Lyndon word by its longest proper Lyndon suffix."""
    if len(word) == 1:
        return word[0]
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return (standard_bracketing(word[:i]), standard_bracketing(word[i:]))
    raise ValueError(f"{word} is not a Lyndon word")


def multilinear_lyndon_words(r):
    return [
        tuple(x + 1 for x in word)
        for word in lyndon_words(r, r)
        if len(set(word)) == r
    ]


def hall_basis(r):
    """Bracketed basis of the multilinear part of the free Lie algebra on 1..r."""
    return [standard_bracketing(word) for word in multilinear_lyndon_words(r)]


def format_lie_word(word):
    if isinstance(word, tuple):
        return f"[{format_lie_word(word[0])},{format_lie_word(word[1])}]"
    return str(word)


_LIE_TOKEN = re.compile(r"\s*([\[\],]|[0-9]+|[A-Za-z_][A-Za-z0-9_]*)")


def parse_lie_word(text):
    """Parse ``[[1,2],3]`` into nested pairs."""
    tokens, pos = [], 0
    while pos < len(text.rstrip()):
        match = _LIE_TOKEN.match(text, pos)
        if not match:
            raise ParseError(f"unexpected character {text[pos]!r}", 1, pos + 1)
        tokens.append((match.group(1), match.start(1) + 1))
        pos = match.end()
    index = [0]

    def take(expected=None):
        if index[0] >= len(tokens):
            raise ParseError("unexpected end of Lie word", 1, len(text) + 1)
        token, column = tokens[index[0]]
        if expected is not None and token != expected:
            raise ParseError(f"expected {expected!r}, got {token!r}", 1, column)
        index[0] += 1
        return token, column

    def word():
        token, column = take()
        if token == "[":
            left = word()
            take(",")
            right = word()
            take("]")
            return (left, right)
        if token in ",]":
            raise ParseError(f"unexpected {token!r}", 1, column)
        return int(token) if token.isdigit() else token

    result = word()
    if index[0] != len(tokens):
        raise ParseError(f"trailing {tokens[index[0]][0]!r}", 1, tokens[index[0]][1])
    return result


def lie_image(word):
    """Tree expansion of a Lie monomial: ``[A, B] -> A•B - B•A``."""
    if isinstance(word, str):
        word = parse_lie_word(word)
    if isinstance(word, tuple):
        left, right = lie_image(word[0]), lie_image(word[1])
        return graft(left, right) - graft(right, left)
    return TreeCombination.atom(RootedTree.vertex(str(word)))
