"""Cyclic rook polynomials ``R(x; z; A)`` and z-permanents ``per(z; A)``.

For an ``m x n`` matrix ``A`` with ``m <= n``::

    R(x; z; A) = sum over partial injections phi of rows into columns of
                 z^cycles(phi) * prod_i A[i, phi(i)] * x^|phi|

with row ``p`` identified with column position ``p``.  ``per(z; A)`` is the
coefficient of ``x^m``.

Every evaluator here is independent of the others: the oracle enumerates
placements directly, while ``expand_last_k``, ``expand_row`` and
``expand_per_rows`` recurse on reduced boards and never call the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .algebra import Poly, ZPoly, evaluate, is_zero
from .injections import ContractViolation, cycle_count, enumerate_injections, rewire
from .matrix import RMatrix, submatrix

__all__ = [
    "RookResult",
    "MAX_ORACLE_ROWS",
    "MAX_ORACLE_COLS",
    "rook_poly_oracle",
    "per_z_oracle",
    "expand_last_k",
    "expand_row",
    "expand_per_rows",
    "last_k_terms",
    "row_terms",
    "classic_specialize",
    "classic_rook_oracle",
    "ryser_permanent",
    "rook_coefficient",
]

MAX_ORACLE_ROWS = 7
MAX_ORACLE_COLS = 9

ONE_XZ = Poly((ZPoly((1,)),), "x")
ONE_Z = ZPoly((1,))


@dataclass
class RookResult:
    poly: Poly
    method: str
    stats: dict = field(default_factory=dict)

    @property
    def per_z(self) -> Poly:
        return rook_coefficient(self.poly, self.stats.get("rows", self.poly.degree))


def rook_coefficient(p: Poly, l: int):
    """``r_l(z)``: the coefficient of ``x^l`` as a polynomial in ``z``."""
    c = p.coefficient(l)
    return c if isinstance(c, Poly) else ZPoly((c,))


def _require_wide(A: RMatrix):
    if A.rows > A.cols:
        raise ContractViolation(f"need rows <= cols, got {A.rows}x{A.cols}")


def _oracle_guard(A: RMatrix, force: bool):
    if not force and (A.rows > MAX_ORACLE_ROWS or A.cols > MAX_ORACLE_COLS):
        raise ContractViolation(
            f"{A.rows}x{A.cols} exceeds the oracle limit "
            f"{MAX_ORACLE_ROWS}x{MAX_ORACLE_COLS}; pass force=True to run anyway"
        )


# ---------------------------------------------------------------------------
# brute force


def _placement_table(A: RMatrix, full: bool):
    """Sum of entry products keyed by (rooks placed, closed cycles)."""
    m, n = A.shape
    rows = A.entries
    table = {}
    used = [False] * (n + 1)
    start_of = {}  # path end -> path start, for paths with >= 1 arc
    end_of = {}  # path start -> path end
    leaves = [0]

    def rec(i, s, cyc, prod):
        if i > m:
            leaves[0] += 1
            key = (s, cyc)
            table[key] = table[key] + prod if key in table else prod
            return
        if not full:
            rec(i + 1, s, cyc, prod)
        row = rows[i - 1]
        for j in range(1, n + 1):
            a = row[j - 1]
            if used[j] or is_zero(a):
                continue
            head = start_of.get(i, i)
            tail = end_of.get(j, j)
            saved = (start_of.get(i), end_of.get(j), end_of.get(head), start_of.get(tail))
            start_of.pop(i, None)
            end_of.pop(j, None)
            used[j] = True
            if head == j:
                rec(i + 1, s + 1, cyc + 1, prod * a)
            else:
                end_of[head] = tail
                start_of[tail] = head
                rec(i + 1, s + 1, cyc, prod * a)
                end_of.pop(head, None)
                start_of.pop(tail, None)
            used[j] = False
            for d, key, val in (
                (end_of, head, saved[2]),
                (start_of, tail, saved[3]),
                (start_of, i, saved[0]),
                (end_of, j, saved[1]),
            ):
                if val is not None:
                    d[key] = val

    rec(1, 0, 0, 1)
    return table, leaves[0]


def _table_to_xz(table) -> Poly:
    by_s = {}
    for (s, c), v in table.items():
        by_s.setdefault(s, {})[c] = v
    top = max(by_s, default=0)
    xs = []
    for s in range(top + 1):
        cs = by_s.get(s, {})
        deg = max(cs, default=-1)
        xs.append(ZPoly([cs.get(c, 0) for c in range(deg + 1)]))
    return Poly(xs, "x")


def rook_poly_oracle(A: RMatrix, force: bool = False) -> RookResult:
    """``R(x; z; A)`` by enumerating every partial injection."""
    _require_wide(A)
    _oracle_guard(A, force)
    table, leaves = _placement_table(A, full=False)
    return RookResult(_table_to_xz(table), "oracle", {"rows": A.rows, "placements": leaves})


def per_z_oracle(A: RMatrix, force: bool = False) -> Poly:
    """``per(z; A)`` by enumerating injections of all rows."""
    _require_wide(A)
    _oracle_guard(A, force)
    table, _ = _placement_table(A, full=True)
    deg = max((c for _, c in table), default=-1)
    return ZPoly([table.get((A.rows, c), 0) for c in range(deg + 1)])


# ---------------------------------------------------------------------------
# expansion evaluators


def _term(w, cycles: int, rooks: int, R: Poly) -> Poly:
    """``w * z^cycles * x^rooks * R``."""
    coeffs = [0] * rooks
    for c in R.coeffs:
        c = c if isinstance(c, Poly) else ZPoly((c,))
        coeffs.append(c.shift(cycles) * w)
    return Poly(coeffs, "x")


def _branch_product(A: RMatrix, phi):
    w = 1
    for i, j in phi.pairs:
        a = A[i, j]
        if is_zero(a):
            return 0
        w = w * a
    return w


def last_k_terms(A: RMatrix, k: int):
    """Branches of the last-``k``-rows expansion.

    Yields ``(weight, cycles, rooks, columns)``: the reduced board is
    ``A[1..m-k | columns]``.  The empty placement comes first.
    """
    m, n = A.shape
    full = tuple(range(1, n + 1))
    yield 1, 0, 0, full
    tail = range(m - k + 1, m + 1)
    for size in range(1, k + 1):
        for S in combinations(tail, size):
            for phi in enumerate_injections(S, n):
                w = _branch_product(A, phi)
                if is_zero(w):
                    continue
                yield w, cycle_count(phi), size, rewire(phi, full)


def row_terms(A: RMatrix, i: int):
    """Branches of the single-row expansion along row ``i``.

    Same shape as :func:`last_k_terms`; the reduced board is
    ``A[rows other than i | columns]``.  Column lists are built explicitly:
    ``N_n \\ i`` for the diagonal placement, column ``i`` moved into
    position ``j`` for ``i -> j``, and ``(N_m \\ i, i, m+1, ..., n)`` when row
    ``i`` holds no rook.  The unused-row branch comes first.
    """
    m, n = A.shape
    yield 1, 0, 0, tuple(r for r in range(1, m + 1) if r != i) + (i,) + tuple(range(m + 1, n + 1))
    for j in range(1, n + 1):
        a = A[i, j]
        if is_zero(a):
            continue
        if j == i:
            yield a, 1, 1, tuple(c for c in range(1, n + 1) if c != i)
        elif j > i:
            cols = tuple(range(1, i)) + tuple(range(i + 1, j)) + (i,) + tuple(range(j + 1, n + 1))
            yield a, 0, 1, cols
        else:
            cols = tuple(range(1, j)) + (i,) + tuple(range(j + 1, i)) + tuple(range(i + 1, n + 1))
            yield a, 0, 1, cols


class _Expander:
    """Memoised recursion shared by one top-level expansion call."""

    def __init__(self, method: str, param):
        self.method = method
        self.param = param
        self.memo = {}
        self.nodes = 0
        self.branches = 0

    def rook(self, A: RMatrix) -> Poly:
        m = A.rows
        if m == 0:
            return ONE_XZ
        key = A
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.nodes += 1
        if self.method == "expand_last_k":
            k = min(self.param, m - 1) if m > 1 else 1
            rest = tuple(range(1, m - k + 1))
            branches = last_k_terms(A, k)
        else:
            i = min(self.param, m)
            rest = tuple(r for r in range(1, m + 1) if r != i)
            branches = row_terms(A, i)
        total = Poly((), "x")
        for w, cyc, size, cols in branches:
            self.branches += 1
            total = total + _term(w, cyc, size, self.rook(submatrix(A, rest, cols)))
        self.memo[key] = total
        return total

    def per(self, A: RMatrix) -> Poly:
        m, n = A.shape
        if m == 0:
            return ONE_Z
        beta = tuple(b for b in self.param if b <= m)[: max(m - 1, 1)] or (1,)
        key = (A, beta)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.nodes += 1
        rest = tuple(r for r in range(1, m + 1) if r not in beta)
        full = tuple(range(1, n + 1))
        total = ZPoly(())
        for phi in enumerate_injections(beta, n):
            w = _branch_product(A, phi)
            if is_zero(w):
                continue
            self.branches += 1
            sub = self.per(submatrix(A, rest, rewire(phi, full)))
            total = total + sub.shift(cycle_count(phi)) * w
        self.memo[key] = total
        return total


def expand_last_k(A: RMatrix, k: int) -> RookResult:
    """``R(x; z; A)`` by expanding along the last ``k`` rows, recursively."""
    _require_wide(A)
    if not 1 <= k <= A.rows - 1:
        raise ContractViolation(f"k must satisfy 1 <= k <= m-1 = {A.rows - 1}, got {k}")
    ex = _Expander("expand_last_k", k)
    poly = ex.rook(A)
    return RookResult(poly, "expand_last_k", {"rows": A.rows, "nodes": ex.nodes, "branches": ex.branches})


def expand_row(A: RMatrix, i: int) -> RookResult:
    """``R(x; z; A)`` by expanding along row ``i``, recursively."""
    _require_wide(A)
    if not 1 <= i <= A.rows:
        raise ContractViolation(f"row {i} out of range 1..{A.rows}")
    ex = _Expander("expand_row", i)
    poly = ex.rook(A)
    return RookResult(poly, "expand_row", {"rows": A.rows, "nodes": ex.nodes, "branches": ex.branches})


def expand_per_rows(A: RMatrix, beta) -> Poly:
    """``per(z; A)`` by summing over full placements of the rows ``beta``."""
    _require_wide(A)
    beta = tuple(beta)
    if any(a >= b for a, b in zip(beta, beta[1:])):
        raise ContractViolation(f"row set {beta} is not strictly increasing")
    if not 1 <= len(beta) <= A.rows - 1:
        raise ContractViolation(f"need 1 <= k <= m-1 rows, got {len(beta)}")
    if beta[0] < 1 or beta[-1] > A.rows:
        raise ContractViolation(f"row set {beta} out of range 1..{A.rows}")
    return _Expander("expand_per_rows", beta).per(A)


# ---------------------------------------------------------------------------
# classical specialisations and independent cross-checks


def classic_specialize(p):
    """Drop the cycle weight: substitute ``z = 1``."""
    return evaluate(p, {"z": 1})


def classic_rook_oracle(A: RMatrix) -> Poly:
    """Classical rook polynomial ``sum_l r_l(A) x^l``, no cycle tracking."""
    m, n = A.shape
    coeffs = [0] * (m + 1)
    used = [False] * n

    def rec(i, s, prod):
        if i == m:
            coeffs[s] = coeffs[s] + prod
            return
        rec(i + 1, s, prod)
        for j, a in enumerate(A.entries[i]):
            if not used[j] and not is_zero(a):
                used[j] = True
                rec(i + 1, s + 1, prod * a)
                used[j] = False

    rec(0, 0, 1)
    return Poly(coeffs, "x")


def ryser_permanent(A: RMatrix):
    """Permanent of a square matrix by Ryser's formula with a Gray-code walk."""
    n = A.rows
    if A.cols != n:
        raise ContractViolation("Ryser's formula needs a square matrix")
    if n == 0:
        return 1
    row_sums = [0] * n
    total = 0
    in_set = [False] * n
    gray = 0
    for step in range(1, 2**n):
        g = step ^ (step >> 1)
        j = (g ^ gray).bit_length() - 1
        gray = g
        sign = 1 if not in_set[j] else -1
        in_set[j] = not in_set[j]
        for i in range(n):
            row_sums[i] = row_sums[i] + sign * A.entries[i][j]
        prod = 1
        for v in row_sums:
            prod = prod * v
        if (n - bin(g).count("1")) % 2:
            total = total - prod
        else:
            total = total + prod
    return total
