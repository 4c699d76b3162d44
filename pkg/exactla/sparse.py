"""Exact sparse matrices over the rationals.

Storage is a plain ``{(row, col): Fraction}`` map; elimination is delegated to
sympy's sparse domain matrices (``SDM`` over ``QQ``), whose reduced row echelon
form scans columns left to right, so ranks, kernels and particular solutions
are reproducible run to run.
"""

import logging
from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices.sdm import SDM

from graphcx.exceptions import InvalidInput, ParseError, UsageError

logger = logging.getLogger(__name__)


def to_fraction(q):
    return Fraction(int(q.numerator), int(q.denominator))


def to_qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


class SparseMatrix:
    """Immutable ``rows x cols`` matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows, cols, entries=()):
        if rows < 0 or cols < 0:
            raise InvalidInput(f"negative matrix shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        store = {}
        items = entries.items() if isinstance(entries, dict) else entries
        for item in items:
            if isinstance(entries, dict):
                (r, c), value = item
            else:
                r, c, value = item
            if not (0 <= r < rows and 0 <= c < cols):
                raise InvalidInput(f"entry ({r}, {c}) outside {rows}x{cols} matrix")
            if (r, c) in store and not isinstance(entries, dict):
                raise InvalidInput(f"duplicate entry ({r}, {c})")
            value = Fraction(value)
            if value:
                store[(r, c)] = value
        self._entries = store

    # ---------------------------------------------------------------- builders
    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, size):
        return cls(size, size, ((i, i, 1) for i in range(size)))

    @classmethod
    def from_columns(cls, rows, columns):
        """Build from a list of sparse columns ``{row: value}``."""
        entries = {}
        for c, column in enumerate(columns):
            for r, value in column.items():
                entries[(r, c)] = value
        return cls(rows, len(columns), entries)

    @classmethod
    def from_dense(cls, rows):
        height = len(rows)
        width = len(rows[0]) if rows else 0
        return cls(
            height,
            width,
            (
                (r, c, value)
                for r, row in enumerate(rows)
                for c, value in enumerate(row)
                if value
            ),
        )

    # ---------------------------------------------------------------- access
    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def nnz(self):
        return len(self._entries)

    def entries(self):
        """Nonzero entries as sorted ``(row, col, value)`` triples."""
        return [(r, c, v) for (r, c), v in sorted(self._entries.items())]

    def get(self, r, c):
        return self._entries.get((r, c), Fraction(0))

    def column(self, c):
        return {r: v for (r, cc), v in self._entries.items() if cc == c}

    def is_zero(self):
        return not self._entries

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.shape, frozenset(self._entries.items())))

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    # ---------------------------------------------------------------- algebra
    def to_sdm(self):
        rows = {}
        for (r, c), value in self._entries.items():
            rows.setdefault(r, {})[c] = to_qq(value)
        return SDM(rows, (self.rows, self.cols), QQ)

    @classmethod
    def from_sdm(cls, sdm):
        rows, cols = sdm.shape
        return cls(
            rows,
            cols,
            {(r, c): to_fraction(v) for r, row in sdm.items() for c, v in row.items()},
        )

    def transpose(self):
        return SparseMatrix(
            self.cols, self.rows, {(c, r): v for (r, c), v in self._entries.items()}
        )

    def permuted(self, row_order, col_order):
        """Matrix with rows and columns re-indexed: new[i][j] = old[row_order[i]][col_order[j]]."""
        row_pos = {old: new for new, old in enumerate(row_order)}
        col_pos = {old: new for new, old in enumerate(col_order)}
        return SparseMatrix(
            self.rows,
            self.cols,
            {(row_pos[r], col_pos[c]): v for (r, c), v in self._entries.items()},
        )

    def scaled(self, factor):
        factor = Fraction(factor)
        return SparseMatrix(
            self.rows, self.cols, {k: v * factor for k, v in self._entries.items()}
        )

    def __add__(self, other):
        if self.shape != other.shape:
            raise UsageError(f"cannot add {self.shape} and {other.shape} matrices")
        total = dict(self._entries)
        for key, value in other._entries.items():
            total[key] = total.get(key, 0) + value
        return SparseMatrix(self.rows, self.cols, total)

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise UsageError(
                f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}"
            )
        if not self._entries or not other._entries:
            return SparseMatrix(self.rows, other.cols)
        return SparseMatrix.from_sdm(self.to_sdm().matmul(other.to_sdm()))

    def hstack(self, *others):
        entries = dict(self._entries)
        offset = self.cols
        for other in others:
            if other.rows != self.rows:
                raise UsageError("hstack needs equal row counts")
            for (r, c), v in other._entries.items():
                entries[(r, c + offset)] = v
            offset += other.cols
        return SparseMatrix(self.rows, offset, entries)

    def apply(self, vector):
        """Return ``M v`` for a dense vector ``v`` of length ``cols``."""
        if len(vector) != self.cols:
            raise UsageError(
                f"vector of length {len(vector)} does not match {self.cols} columns"
            )
        out = [Fraction(0)] * self.rows
        for (r, c), value in self._entries.items():
            if vector[c]:
                out[r] += value * vector[c]
        return out

    def _rref(self):
        if not self._entries:
            return {}, []
        reduced, pivots = self.to_sdm().rref()
        return reduced, list(pivots)

    # ---------------------------------------------------------------- dump
    def dump(self):
        lines = [f"matrix {self.rows} {self.cols}"]
        for r, c, v in self.entries():
            lines.append(f"{r} {c} {v.numerator}/{v.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text):
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ParseError("empty matrix dump", 1, 1)
        header = lines[0].split()
        if len(header) != 3 or header[0] != "matrix":
            raise ParseError("expected 'matrix <rows> <cols>'", 1, 1)
        try:
            rows, cols = int(header[1]), int(header[2])
        except ValueError:
            raise ParseError("matrix shape must be integers", 1, 8)
        entries = []
        for lineno, line in enumerate(lines[1:], start=2):
            parts = line.split()
            if len(parts) != 3:
                raise ParseError("expected '<row> <col> <num>/<den>'", lineno, 1)
            try:
                entries.append((int(parts[0]), int(parts[1]), Fraction(parts[2])))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad entry {line!r}", lineno, 1)
        return cls(rows, cols, entries)


# -----------------------------------------


def rank(matrix):
    """Exact rank over the rationals."""
    _, pivots = matrix._rref()
    logger.debug(
        "Rank of %dx%d matrix (%d nonzeros) is %d",
        matrix.rows,
        matrix.cols,
        matrix.nnz,
        len(pivots),
    )
    return len(pivots)


# -----------------------------------------


def kernel_basis(matrix):
    """Basis of the right kernel as dense lists of Fractions.

    One vector per non-pivot column ``j``: 1 in position ``j`` and minus the
    reduced column entries in the pivot positions.
    """
    reduced, pivots = matrix._rref()
    pivot_set = set(pivots)
    basis = []
    for j in range(matrix.cols):
        if j in pivot_set:
            continue
        vector = [Fraction(0)] * matrix.cols
        vector[j] = Fraction(1)
        for i, p in enumerate(pivots):
            entry = reduced[i].get(j) if i in reduced else None
            if entry:
                vector[p] = -to_fraction(entry)
        basis.append(vector)
    return basis


# -----------------------------------------


def solve_in_image(matrix, b):
    """Return some ``x`` with ``M x = b``, or ``None`` when ``b`` is not in the image."""
    if len(b) != matrix.rows:
        raise UsageError(
            f"right-hand side of length {len(b)} does not match {matrix.rows} rows"
        )
    augmented = matrix.hstack(
        SparseMatrix(matrix.rows, 1, ((r, 0, v) for r, v in enumerate(b) if v))
    )
    reduced, pivots = augmented._rref()
    if pivots and pivots[-1] == matrix.cols:
        return None
    x = [Fraction(0)] * matrix.cols
    for i, p in enumerate(pivots):
        entry = reduced[i].get(matrix.cols) if i in reduced else None
        if entry:
            x[p] = to_fraction(entry)
    return x
