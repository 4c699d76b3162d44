"""Text format for graphs and combinations.

A graph record is a header followed by one line per edge::

    hgraph m=1 n=2 v=2 h=1
    E v1 v2
    E h1 v1

``m=-`` marks a graph of GC_n. Vertices and hairs are numbered from 1 in the
file. A combination file is a sequence of ``coef p/q`` lines, each followed by
a graph record; a record without a ``coef`` line has coefficient 1. The empty
combination is written ``zero m=<m> n=<n>``. Blank lines and ``#`` comments
are ignored.
"""

import re
from fractions import Fraction

from graphcore.canon import canonical_form
from graphcore.combination import Combination
from graphcore.graph import OrientedGraph
from graphcx.exceptions import InvalidInput, ParseError

_ENDPOINT = re.compile(r"^([vh])([1-9][0-9]*)$")


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = []
        for match in re.finditer(r"\S+", line):
            tokens.append((match.group(), match.start() + 1))
        if tokens:
            yield lineno, tokens


def _field(token, column, lineno, name, allow_dash=False):
    key, sep, value = token.partition("=")
    if key != name or not sep:
        raise ParseError(f"expected '{name}=<int>', got {token!r}", lineno, column)
    if allow_dash and value == "-":
        return None
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{name} must be an integer, got {value!r}", lineno, column)


def _header(lineno, tokens):
    if len(tokens) != 5:
        raise ParseError(
            "expected 'hgraph m=<int|-> n=<int> v=<int> h=<int>'", lineno, tokens[0][1]
        )
    (_, _), (m_tok, m_col), (n_tok, n_col), (v_tok, v_col), (h_tok, h_col) = tokens
    return (
        _field(m_tok, m_col, lineno, "m", allow_dash=True),
        _field(n_tok, n_col, lineno, "n"),
        _field(v_tok, v_col, lineno, "v"),
        _field(h_tok, h_col, lineno, "h"),
    )


def _endpoint(token, column, lineno, v, h):
    match = _ENDPOINT.match(token)
    if not match:
        raise ParseError(f"bad endpoint {token!r}", lineno, column)
    kind, index = match.group(1), int(match.group(2)) - 1
    if kind == "v":
        if index >= v:
            raise ParseError(f"vertex {token} out of range (v={v})", lineno, column)
        return index
    if index >= h:
        raise ParseError(f"hair {token} out of range (h={h})", lineno, column)
    return ~index


class _Reader:
    def __init__(self, text):
        self.lines = list(_lines(text))
        self.pos = 0

    def peek(self):
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def next(self):
        line = self.peek()
        self.pos += 1
        return line

    def graph(self):
        line = self.next()
        if line is None:
            raise ParseError("expected a graph record, found end of input", 0, 0)
        lineno, tokens = line
        if tokens[0][0] != "hgraph":
            raise ParseError(
                f"expected 'hgraph', got {tokens[0][0]!r}", lineno, tokens[0][1]
            )
        m, n, v, h = _header(lineno, tokens)
        edges = []
        while self.peek() is not None and self.peek()[1][0][0] == "E":
            lineno, tokens = self.next()
            if len(tokens) != 3:
                raise ParseError("expected 'E <a> <b>'", lineno, tokens[0][1])
            edges.append(
                (
                    _endpoint(tokens[1][0], tokens[1][1], lineno, v, h),
                    _endpoint(tokens[2][0], tokens[2][1], lineno, v, h),
                )
            )
        graph = OrientedGraph(n, m, v, h, tuple(edges))
        try:
            return graph.validate()
        except InvalidInput as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), lineno, 1)


def parse_graph(text):
    reader = _Reader(text)
    graph = reader.graph()
    extra = reader.peek()
    if extra is not None:
        raise ParseError(f"unexpected {extra[1][0][0]!r}", extra[0], extra[1][0][1])
    return graph


def parse_combination(text, window=None):
    """Parse a combination file; each record names ``sign * X`` of its canonical class."""
    reader = _Reader(text)
    terms = []
    parity = None
    while reader.peek() is not None:
        lineno, tokens = reader.peek()
        word, column = tokens[0]
        coef = Fraction(1)
        if word == "zero":
            reader.next()
            if len(tokens) != 3:
                raise ParseError("expected 'zero m=<int|-> n=<int>'", lineno, column)
            m = _field(tokens[1][0], tokens[1][1], lineno, "m", allow_dash=True)
            n = _field(tokens[2][0], tokens[2][1], lineno, "n")
            parity = parity or (n, m)
            continue
        if word == "coef":
            reader.next()
            if len(tokens) != 2:
                raise ParseError("expected 'coef <num>/<den>'", lineno, column)
            try:
                coef = Fraction(tokens[1][0])
            except (ValueError, ZeroDivisionError):
                raise ParseError(
                    f"bad coefficient {tokens[1][0]!r}", lineno, tokens[1][1]
                )
        graph = reader.graph()
        if parity is None:
            parity = (graph.n, graph.m)
        elif parity != (graph.n, graph.m):
            raise ParseError("records of different parities in one file", lineno, 1)
        terms.append((coef, graph))
    if parity is None:
        raise ParseError("empty combination file (use 'zero m=.. n=..')", 1, 1)
    n, m = parity
    total = Combination.zero(n, m, window=window)
    for coef, graph in terms:
        total = total + Combination.atom(graph, coef, window=window)
    return total


# ---------------------------------------------------------------- output
def _name(endpoint):
    return f"h{~endpoint + 1}" if endpoint < 0 else f"v{endpoint + 1}"


def format_graph(graph):
    m = "-" if graph.m is None else graph.m
    lines = [f"hgraph m={m} n={graph.n} v={graph.v} h={graph.h}"]
    lines += [f"E {_name(a)} {_name(b)}" for a, b in graph.edges]
    return "\n".join(lines)


def format_fraction(value):
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def format_combination(combination):
    if combination.is_zero():
        m = "-" if combination.m is None else combination.m
        return f"zero m={m} n={combination.n}\n"
    blocks = []
    for graph, coef in combination.terms():
        blocks.append(f"coef {format_fraction(coef)}\n{format_graph(graph)}")
    return "\n".join(blocks) + "\n"


def serialize(graph):
    """Canonical text of ``graph``; re-parsing it gives sign +1."""
    form = canonical_form(graph)
    return format_graph(form.graph) + "\n"


parse = parse_graph
