"""Dense exact matrices over Q or Q(sqrt D).

Indices at the public surface are 1-based, matching the ``A(r|c)``
submatrix notation used throughout this package.  Matrices are immutable;
every operation returns a new one.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .field import (
    RATIONALS,
    FieldDescriptor,
    FieldError,
    QuadraticNumber,
    format_scalar,
    parse_scalar,
    sign,
    to_field,
)

__all__ = [
    "ExactMatrix",
    "MatrixError",
    "IndexSet",
    "index_set",
    "infer_field",
    "outer",
    "embed",
    "rank",
    "det",
    "submatrix",
    "is_nonnegative",
    "zeros",
    "identity",
]


class MatrixError(ValueError):
    pass


IndexSet = tuple


def index_set(indices: Iterable[int]) -> tuple[int, ...]:
    """Validate a 1-based index set: strictly increasing positive ints."""
    out = tuple(int(i) for i in indices)
    if not out:
        raise MatrixError("index set must be non-empty")
    if out[0] < 1 or any(x >= y for x, y in zip(out, out[1:])):
        raise MatrixError(f"index set must be strictly increasing and 1-based: {out}")
    return out


def infer_field(values: Iterable) -> FieldDescriptor:
    """Smallest field holding all ``values`` (Q unless some entry is quadratic)."""
    d = None
    for x in values:
        if isinstance(x, QuadraticNumber):
            if d is not None and d != x.d:
                raise FieldError(f"entries from Q(sqrt {d}) and Q(sqrt {x.d})")
            d = x.d
    return RATIONALS if d is None else FieldDescriptor(d)


class ExactMatrix:
    """A rows x cols matrix with exact entries in a single field."""

    __slots__ = ("_rows", "_cols", "_field", "_entries")

    def __init__(self, rows: Sequence[Sequence], field: FieldDescriptor | None = None):
        data = [list(r) for r in rows]
        if not data or not data[0]:
            raise MatrixError("degenerate matrix: need at least one row and one column")
        n = len(data[0])
        if any(len(r) != n for r in data):
            raise MatrixError("ragged rows")
        flat = [x for r in data for x in r]
        if field is None:
            field = infer_field(flat)
        object.__setattr__(self, "_rows", len(data))
        object.__setattr__(self, "_cols", n)
        object.__setattr__(self, "_field", field)
        object.__setattr__(self, "_entries", tuple(to_field(x, field) for x in flat))

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def _raw(cls, m: int, n: int, field: FieldDescriptor, entries: tuple) -> ExactMatrix:
        self = object.__new__(cls)
        object.__setattr__(self, "_rows", m)
        object.__setattr__(self, "_cols", n)
        object.__setattr__(self, "_field", field)
        object.__setattr__(self, "_entries", entries)
        return self

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return self._rows, self._cols

    @property
    def field(self) -> FieldDescriptor:
        return self._field

    @property
    def entries(self) -> tuple:
        return self._entries

    def __getitem__(self, ij):
        """1-based ``M[i, j]``."""
        i, j = ij
        if not (1 <= i <= self._rows and 1 <= j <= self._cols):
            raise IndexError(f"({i}, {j}) outside {self._rows}x{self._cols}")
        return self._entries[(i - 1) * self._cols + (j - 1)]

    def row(self, i: int) -> tuple:
        if not 1 <= i <= self._rows:
            raise IndexError(i)
        k = (i - 1) * self._cols
        return self._entries[k:k + self._cols]

    def col(self, j: int) -> tuple:
        if not 1 <= j <= self._cols:
            raise IndexError(j)
        return self._entries[j - 1::self._cols]

    def tolist(self) -> list[list]:
        return [list(self.row(i)) for i in range(1, self._rows + 1)]

    def with_field(self, field: FieldDescriptor) -> ExactMatrix:
        """Re-express the entries in ``field`` (Q embeds into Q(sqrt D))."""
        if field == self._field:
            return self
        return ExactMatrix._raw(self._rows, self._cols, field,
                                tuple(to_field(x, field) for x in self._entries))

    def replace(self, i: int, j: int, value) -> ExactMatrix:
        self[i, j]
        entries = list(self._entries)
        entries[(i - 1) * self._cols + (j - 1)] = value
        return ExactMatrix([entries[k:k + self._cols] for k in range(0, len(entries), self._cols)])

    @property
    def T(self) -> ExactMatrix:
        return ExactMatrix._raw(self._cols, self._rows, self._field,
                                tuple(x for j in range(1, self._cols + 1) for x in self.col(j)))

    def _common(self, other: ExactMatrix) -> tuple[FieldDescriptor, tuple, tuple]:
        if not isinstance(other, ExactMatrix):
            raise TypeError(f"expected ExactMatrix, got {type(other).__name__}")
        if self.shape != other.shape:
            raise MatrixError(f"shape mismatch {self.shape} vs {other.shape}")
        field = infer_field([*_probe(self._field), *_probe(other._field)])
        return field, self.with_field(field)._entries, other.with_field(field)._entries

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        field, x, y = self._common(other)
        return ExactMatrix._raw(self._rows, self._cols, field, tuple(a + b for a, b in zip(x, y)))

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        field, x, y = self._common(other)
        return ExactMatrix._raw(self._rows, self._cols, field, tuple(a - b for a, b in zip(x, y)))

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix._raw(self._rows, self._cols, self._field, tuple(-a for a in self._entries))

    def scale(self, t) -> ExactMatrix:
        field = infer_field([*_probe(self._field), t])
        t = to_field(t, field)
        return ExactMatrix._raw(self._rows, self._cols, field,
                                tuple(t * a for a in self.with_field(field)._entries))

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self._cols != other._rows:
            raise MatrixError(f"cannot multiply {self.shape} by {other.shape}")
        field = infer_field([*_probe(self._field), *_probe(other._field)])
        a, b = self.with_field(field), other.with_field(field)
        zero = to_field(0, field)
        out = []
        for i in range(1, a._rows + 1):
            r = a.row(i)
            for j in range(1, b._cols + 1):
                s = zero
                for x, y in zip(r, b.col(j)):
                    if x and y:
                        s = s + x * y
                out.append(s)
        return ExactMatrix._raw(a._rows, b._cols, field, tuple(out))

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(x == y for x, y in zip(self._entries, other._entries))

    def __hash__(self):
        return hash((self.shape, self._entries))

    def is_zero(self) -> bool:
        return not any(self._entries)

    def __repr__(self):
        body = "; ".join(", ".join(format_scalar(x) for x in self.row(i))
                         for i in range(1, self._rows + 1))
        return f"ExactMatrix<{self._rows}x{self._cols} over {self._field}>[{body}]"

    # -- serialization -------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "rows": self._rows,
            "cols": self._cols,
            "field": self._field.tag,
            "entries": [[format_scalar(x) for x in self.row(i)] for i in range(1, self._rows + 1)],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_json_obj(), indent=indent)

    @classmethod
    def from_json_obj(cls, obj: dict) -> ExactMatrix:
        for key in ("rows", "cols", "field", "entries"):
            if key not in obj:
                raise MatrixError(f"matrix document is missing field {key!r}")
        field = FieldDescriptor.from_tag(obj["field"])
        entries = obj["entries"]
        if len(entries) != obj["rows"]:
            raise MatrixError(f"'entries' has {len(entries)} rows, expected {obj['rows']}")
        rows = []
        for i, r in enumerate(entries, 1):
            if len(r) != obj["cols"]:
                raise MatrixError(f"entries row {i} has {len(r)} columns, expected {obj['cols']}")
            try:
                rows.append([parse_scalar(s, field) for s in r])
            except FieldError as exc:
                raise MatrixError(f"entries row {i}: {exc}") from exc
        return cls(rows, field)

    @classmethod
    def from_json(cls, text: str) -> ExactMatrix:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MatrixError(f"malformed matrix JSON: {exc}") from exc
        return cls.from_json_obj(obj)

    def to_csv(self) -> str:
        if not self._field.is_rational:
            raise MatrixError("CSV export is only defined for rational matrices")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for i in range(1, self._rows + 1):
            w.writerow(format_scalar(x) for x in self.row(i))
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> ExactMatrix:
        rows = [r for r in csv.reader(io.StringIO(text)) if r]
        try:
            return cls([[parse_scalar(s, RATIONALS) for s in r] for r in rows], RATIONALS)
        except FieldError as exc:
            raise MatrixError(f"bad CSV entry: {exc}") from exc


def _probe(field: FieldDescriptor) -> list:
    # a representative element, used to combine fields through infer_field
    return [] if field.is_rational else [QuadraticNumber(0, 0, field.d)]


def zeros(m: int, n: int, field: FieldDescriptor = RATIONALS) -> ExactMatrix:
    z = to_field(0, field)
    return ExactMatrix._raw(m, n, field, (z,) * (m * n))


def identity(n: int, field: FieldDescriptor = RATIONALS) -> ExactMatrix:
    return ExactMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)], field)


def outer(u: Sequence, v: Sequence) -> ExactMatrix:
    """The rank-one matrix ``u v^T``."""
    if not len(u) or not len(v):
        raise MatrixError("outer product of empty vectors")
    return ExactMatrix([[x * y for y in v] for x in u], infer_field([*u, *v]))


def submatrix(M: ExactMatrix, r: Iterable[int], c: Iterable[int]) -> ExactMatrix:
    """``M(r|c)``: rows ``r`` and columns ``c`` (1-based), copied in index order."""
    r, c = index_set(r), index_set(c)
    if r[-1] > M.rows or c[-1] > M.cols:
        raise MatrixError(f"index set out of range for {M.rows}x{M.cols} matrix")
    return ExactMatrix._raw(len(r), len(c), M.field, tuple(M[i, j] for i in r for j in c))


def embed(M: ExactMatrix, r: Iterable[int], c: Iterable[int], shape: tuple[int, int]) -> ExactMatrix:
    """Place ``M`` at positions ``r x c`` of an otherwise zero matrix of ``shape``."""
    r, c = index_set(r), index_set(c)
    m, n = shape
    if (len(r), len(c)) != M.shape:
        raise MatrixError(f"index sets of size {len(r)}x{len(c)} do not fit a {M.rows}x{M.cols} block")
    if r[-1] > m or c[-1] > n:
        raise MatrixError(f"index set out of range for {m}x{n} target")
    out = list(zeros(m, n, M.field).entries)
    for a, i in enumerate(r, 1):
        for b, j in enumerate(c, 1):
            out[(i - 1) * n + (j - 1)] = M[a, b]
    return ExactMatrix._raw(m, n, M.field, tuple(out))


def is_nonnegative(M: ExactMatrix) -> bool:
    return all(sign(x) >= 0 for x in M.entries)


# -- elimination -------------------------------------------------------------

def _working_rows(M: ExactMatrix) -> list[list]:
    """Row lists suitable for fraction-free elimination.

    Rational rows are scaled by the lcm of their denominators so the
    elimination runs on Python ints; quadratic entries are used as is.
    """
    rows = [list(M.row(i)) for i in range(1, M.rows + 1)]
    if M.field.is_rational:
        out = []
        for r in rows:
            L = lcm(*(x.denominator for x in r))
            out.append([int(x * L) for x in r])
        return out
    return rows


def _exact_div(x, y):
    if isinstance(x, int) and isinstance(y, int):
        q, rem = divmod(x, y)
        assert rem == 0, "Bareiss division must be exact"
        return q
    return x / y


def _bareiss(a: list[list], square: bool) -> tuple[int, int, object]:
    """In-place fraction-free elimination.

    Returns ``(rank, swap_parity, last_pivot)``.  For a square nonsingular
    input the last pivot is the determinant (up to swap parity, and up to
    the row scaling done in :func:`_working_rows`).
    """
    m, n = len(a), len(a[0])
    prev = 1
    r = 0
    parity = 1
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if sign(a[i][c]) != 0), None)
        if p is None:
            if square:
                return r, parity, 0
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            parity = -parity
        piv = a[r][c]
        for i in range(r + 1, m):
            f = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c + 1, n):
                row_i[j] = _exact_div(piv * row_i[j] - f * row_r[j], prev)
            row_i[c] = 0 * f
        prev = piv
        r += 1
    return r, parity, prev


def rank(M: ExactMatrix) -> int:
    """Exact rank by fraction-free Bareiss elimination."""
    if M.is_zero():
        return 0
    a = _working_rows(M)
    r, _, _ = _bareiss(a, square=False)
    return r


def det(M: ExactMatrix):
    """Exact determinant, in the matrix's field."""
    if M.rows != M.cols:
        raise MatrixError(f"determinant of non-square {M.rows}x{M.cols} matrix")
    a = _working_rows(M)
    if M.field.is_rational:
        scale = Fraction(1)
        for i in range(1, M.rows + 1):
            scale *= lcm(*(x.denominator for x in M.row(i)))
    else:
        scale = 1
    r, parity, last = _bareiss(a, square=True)
    if r < M.rows:
        return to_field(0, M.field)
    return to_field(Fraction(parity * last) / scale if M.field.is_rational else parity * last, M.field)
