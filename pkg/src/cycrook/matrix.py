"""Matrices over an exact ring, with 1-based index-sequence selection.

Column order in a selection is meaningful: the cyclic rook polynomial
identifies row ``p`` with column *position* ``p``, so ``submatrix`` keeps
the columns exactly in the order they are listed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .algebra import MultiRing, StructuralError, render

__all__ = [
    "RMatrix",
    "CirculantSpec",
    "submatrix",
    "complement_submatrix",
    "column_sum_select",
    "kronecker",
    "build_basic",
    "identity",
    "ones",
    "cyclic_shift",
    "matrix_power",
    "circulant_matrix",
    "enumerate_increasing",
    "repeat_seq",
    "generic_matrix",
    "load_matrix",
    "dump_matrix",
    "load_spec",
]


@dataclass(frozen=True)
class RMatrix:
    """Dense ``rows x cols`` matrix of ring elements (ints or MultiPoly).

    ``entries`` is a tuple of row tuples.  The explicit ``rows``/``cols``
    fields keep the shape meaningful for empty matrices (``0 x n``).
    """

    rows: int
    cols: int
    entries: tuple = field(repr=False)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise StructuralError("negative dimension")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise StructuralError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "RMatrix":
        data = tuple(tuple(r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, m: int, n: int) -> "RMatrix":
        return cls(m, n, tuple((0,) * n for _ in range(m)))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        """1-based entry access ``A[i, j]``."""
        i, j = ij
        return self.entries[i - 1][j - 1]

    def row(self, i: int) -> tuple:
        return self.entries[i - 1]

    def column(self, j: int) -> tuple:
        return tuple(r[j - 1] for r in self.entries)

    def map(self, fn) -> "RMatrix":
        return RMatrix(self.rows, self.cols, tuple(tuple(fn(v) for v in r) for r in self.entries))

    def _check_same_shape(self, other):
        if not isinstance(other, RMatrix) or other.shape != self.shape:
            raise StructuralError(f"shape mismatch: {self.shape} vs {getattr(other, 'shape', None)}")

    def __add__(self, other):
        self._check_same_shape(other)
        return RMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def __sub__(self, other):
        self._check_same_shape(other)
        return RMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def __neg__(self):
        return self.map(lambda v: -v)

    def scale(self, c) -> "RMatrix":
        return self.map(lambda v: c * v)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise StructuralError("inner dimensions differ")
        out = []
        for r in self.entries:
            row = []
            for j in range(other.cols):
                acc = 0
                for p in range(self.cols):
                    acc = acc + r[p] * other.entries[p][j]
                row.append(acc)
            out.append(tuple(row))
        return RMatrix(self.rows, other.cols, tuple(out))

    def transpose(self) -> "RMatrix":
        return RMatrix(
            self.cols, self.rows, tuple(tuple(r[j] for r in self.entries) for j in range(self.cols))
        )

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.entries for v in r)

    def tolist(self):
        return [list(r) for r in self.entries]

    def __str__(self):
        if not self.rows:
            return f"[] ({self.rows}x{self.cols})"
        cells = [[render(v) for v in r] for r in self.entries]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in r) + "]" for r in cells)


def _check_indices(seq, bound: int, what: str, allow_repeats=False):
    seq = tuple(seq)
    for v in seq:
        if not isinstance(v, int) or not 1 <= v <= bound:
            raise StructuralError(f"{what} index {v!r} out of range 1..{bound}")
    if not allow_repeats and len(set(seq)) != len(seq):
        raise StructuralError(f"repeated {what} index in {seq}")
    return seq


def submatrix(A: RMatrix, rows, cols) -> RMatrix:
    """``A[rows | cols]`` with the given (1-based) order kept on both axes."""
    rows = _check_indices(rows, A.rows, "row")
    cols = _check_indices(cols, A.cols, "column")
    data = tuple(tuple(A.entries[i - 1][j - 1] for j in cols) for i in rows)
    return RMatrix(len(rows), len(cols), data)


def _strictly_increasing(seq, what):
    seq = tuple(seq)
    if any(a >= b for a, b in zip(seq, seq[1:])):
        raise StructuralError(f"{what} must be strictly increasing, got {seq}")
    return seq


def complement_submatrix(A: RMatrix, rows_out, cols_out) -> RMatrix:
    """``A(rows_out | cols_out)``: delete the listed rows and columns."""
    rows_out = _check_indices(_strictly_increasing(rows_out, "rows"), A.rows, "row")
    cols_out = _check_indices(_strictly_increasing(cols_out, "columns"), A.cols, "column")
    keep_r = [i for i in range(1, A.rows + 1) if i not in rows_out]
    keep_c = [j for j in range(1, A.cols + 1) if j not in cols_out]
    return submatrix(A, keep_r, keep_c)


def column_sum_select(A: RMatrix, groups) -> RMatrix:
    """Columns built as sums: group ``(lead, extras)`` gives column
    ``A[:, lead] + sum(A[:, e] for e in extras)``.
    """
    cols = []
    for lead, extras in groups:
        idx = _check_indices((lead, *extras), A.cols, "column", allow_repeats=True)
        col = list(A.column(idx[0]))
        for e in idx[1:]:
            col = [a + b for a, b in zip(col, A.column(e))]
        cols.append(col)
    data = tuple(tuple(c[i] for c in cols) for i in range(A.rows))
    return RMatrix(A.rows, len(cols), data)


def kronecker(A: RMatrix, B: RMatrix) -> RMatrix:
    rows = []
    for ra in A.entries:
        for rb in B.entries:
            rows.append(tuple(a * b for a in ra for b in rb))
    return RMatrix(A.rows * B.rows, A.cols * B.cols, tuple(rows))


def identity(n: int) -> RMatrix:
    return RMatrix.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)


def ones(m: int, n: int | None = None) -> RMatrix:
    n = m if n is None else n
    return RMatrix.from_rows([[1] * n for _ in range(m)], n)


def cyclic_shift(n: int) -> RMatrix:
    """``P_n``: row ``i`` has its single 1 in column ``i mod n + 1``."""
    return RMatrix.from_rows([[1 if j == i % n + 1 else 0 for j in range(1, n + 1)] for i in range(1, n + 1)], n)


def build_basic(kind: str, *dims: int) -> RMatrix:
    """``build_basic("P", n)``, ``build_basic("I", n)`` or ``build_basic("J", m, n)``."""
    if any(d < 1 for d in dims):
        raise StructuralError("dimensions must be positive")
    if kind == "P":
        return cyclic_shift(*dims)
    if kind == "I":
        return identity(*dims)
    if kind == "J":
        return ones(*dims)
    raise StructuralError(f"unknown matrix kind {kind!r}")


def matrix_power(A: RMatrix, e: int) -> RMatrix:
    if A.rows != A.cols:
        raise StructuralError("matrix power needs a square matrix")
    result = identity(A.rows)
    for _ in range(e):
        result = result @ A
    return result


@dataclass(frozen=True)
class CirculantSpec:
    """Parameters of ``(sum_i coeffs[i] * P_n^(i - r)) (x) J_k``."""

    n: int
    k: int
    r: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if self.n < 1 or self.k < 1:
            raise StructuralError("n and k must be at least 1")
        if self.r < 0:
            raise StructuralError("offset r must be nonnegative")
        if not self.coeffs:
            raise StructuralError("need at least one coefficient")

    @property
    def t(self) -> int:
        return len(self.coeffs) - 1

    @property
    def size(self) -> int:
        return self.n * self.k

    def shift_exponent(self, i: int) -> int:
        """Nonnegative exponent ``e`` with ``P_n^(i - r) == P_n^e``."""
        return (i - self.r) % self.n

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "r": self.r, "coeffs": [_entry_out(c) for c in self.coeffs]}


def circulant_matrix(spec: CirculantSpec) -> RMatrix:
    n = spec.n
    base = [[0] * n for _ in range(n)]
    for i, a in enumerate(spec.coeffs):
        e = spec.shift_exponent(i)
        for b in range(n):
            c = (b + e) % n
            base[b][c] = base[b][c] + a
    return kronecker(RMatrix.from_rows(base, n), ones(spec.k))


def enumerate_increasing(s: int, m: int):
    """Strictly increasing length-``s`` sequences from ``1..m``, lexicographic."""
    if s < 0 or s > m:
        return iter(())
    return combinations(range(1, m + 1), s)


def repeat_seq(items, k: int) -> tuple:
    """Repeat each item ``k`` times in place: ``(a, b) -> (a, a, b, b)`` for k=2."""
    if k < 0:
        raise StructuralError("multiplicity must be nonnegative")
    return tuple(v for v in items for _ in range(k))


def generic_matrix(m: int, n: int, prefix: str = "a", extra=()):
    """Matrix with a distinct indeterminate ``{prefix}{i}_{j}`` in every cell.

    Returns ``(matrix, ring)``; ``extra`` adds more names to the same ring.
    """
    names = [f"{prefix}{i}_{j}" for i in range(1, m + 1) for j in range(1, n + 1)]
    ring = MultiRing(list(names) + list(extra))
    data = [[ring(f"{prefix}{i}_{j}") for j in range(1, n + 1)] for i in range(1, m + 1)]
    return RMatrix.from_rows(data, n), ring


# ---------------------------------------------------------------------------
# JSON files


def _entry_in(v):
    if isinstance(v, bool):
        raise StructuralError("boolean entries are not allowed")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v.strip())
        except ValueError:
            raise StructuralError(f"entry {v!r} is not a decimal integer") from None
    raise StructuralError(f"entry {v!r} is not an integer")


def _entry_out(v):
    if not isinstance(v, int):
        raise StructuralError("only integer entries can be written")
    return v if abs(v) < 2**53 else str(v)


def matrix_from_json(doc) -> RMatrix:
    try:
        m, n, entries = int(doc["rows"]), int(doc["cols"]), doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise StructuralError(f"malformed matrix document: {exc}") from None
    if len(entries) != m or any(len(r) != n for r in entries):
        raise StructuralError("entries do not match rows/cols")
    return RMatrix.from_rows([[_entry_in(v) for v in r] for r in entries], n)


def matrix_to_json(A: RMatrix) -> dict:
    return {"rows": A.rows, "cols": A.cols, "entries": [[_entry_out(v) for v in r] for r in A.entries]}


def load_matrix(path) -> RMatrix:
    with open(path) as f:
        return matrix_from_json(json.load(f))


def dump_matrix(A: RMatrix, path) -> None:
    with open(path, "w") as f:
        json.dump(matrix_to_json(A), f)


def spec_from_json(doc) -> CirculantSpec:
    try:
        return CirculantSpec(
            int(doc["n"]), int(doc["k"]), int(doc.get("r", 0)), tuple(_entry_in(c) for c in doc["coeffs"])
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, StructuralError):
            raise
        raise StructuralError(f"malformed circulant spec: {exc}") from None


def load_spec(path) -> CirculantSpec:
    with open(path) as f:
        return spec_from_json(json.load(f))
