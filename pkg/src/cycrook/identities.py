"""Right-hand sides of the addition and complement identities, and drivers
that check every identity against the brute-force oracle.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from itertools import combinations

from .algebra import Poly, ZPoly, binomial, is_zero, rising_factorial, render
from .injections import ContractViolation, cycle_count, enumerate_injections, rewire
from .matrix import (
    CirculantSpec,
    RMatrix,
    circulant_matrix,
    complement_submatrix,
    enumerate_increasing,
    generic_matrix,
    ones,
    submatrix,
)
from .rook import (
    classic_specialize,
    expand_last_k,
    expand_per_rows,
    expand_row,
    per_z_oracle,
    rook_coefficient,
    rook_poly_oracle,
)

__all__ = [
    "ADDITION_VARIANTS",
    "addition_rhs",
    "addition_lhs",
    "complement_rhs",
    "complement_lhs",
    "naive_rows_expansion",
    "Witness",
    "find_arbitrary_k_counterexample",
    "Bounds",
    "VerifyReport",
    "verify_theorem",
    "random_matrix",
]

ADDITION_VARIANTS = ("R_z", "r_l", "per_z", "R_classic", "r_l_classic", "per_classic")


def _rook(A: RMatrix) -> Poly:
    return rook_poly_oracle(A, force=True).poly


def _classic_per(A: RMatrix):
    """Classical permanent of a (possibly rectangular, possibly empty) board."""
    if A.rows == 0:
        return 1
    return classic_specialize(per_z_oracle(A, force=True))


def _classic_rook(A: RMatrix) -> Poly:
    p = classic_specialize(_rook(A))
    return p if isinstance(p, Poly) else Poly((p,), "x")


# ---------------------------------------------------------------------------
# addition formulas


def _shift_x(p: Poly, s: int) -> Poly:
    return Poly((0,) * s + p.coeffs, "x") if p.coeffs else p


def _cycle_terms(A: RMatrix, B: RMatrix, max_s: int):
    """``(s, z^|phi| prod A, reduced B board)`` over all rows sets of size <= max_s."""
    m, n = A.shape
    full = tuple(range(1, n + 1))
    for s in range(max_s + 1):
        for alpha in enumerate_increasing(s, m):
            rest = tuple(r for r in range(1, m + 1) if r not in alpha)
            for phi in enumerate_injections(alpha, n):
                w = 1
                for i, j in phi.pairs:
                    w = w * A[i, j]
                if is_zero(w):
                    continue
                yield s, ZPoly((w,)).shift(cycle_count(phi)), submatrix(B, rest, rewire(phi, full))


def _classic_terms(A: RMatrix, B: RMatrix, max_s: int):
    """``(s, per(A[alpha|beta]), B(alpha|beta))`` for increasing alpha, beta."""
    m, n = A.shape
    for s in range(max_s + 1):
        for alpha in enumerate_increasing(s, m):
            for beta in enumerate_increasing(s, n):
                p = _classic_per(submatrix(A, alpha, beta))
                if is_zero(p):
                    continue
                yield s, p, complement_submatrix(B, alpha, beta)


def addition_rhs(A: RMatrix, B: RMatrix, variant: str, l: int | None = None):
    """Evaluate the right-hand side of the ``A + B`` expansion.

    ``variant`` is one of :data:`ADDITION_VARIANTS`.  The ``*_z`` variants
    split placements by the rows that take their entry from ``A``; the
    classical ones split by square submatrices of ``A``.  ``l`` selects the
    coefficient for the ``r_l`` variants.
    """
    if A.shape != B.shape:
        raise ContractViolation(f"shape mismatch {A.shape} vs {B.shape}")
    m, n = A.shape
    if m > n:
        raise ContractViolation("need rows <= cols")
    if variant not in ADDITION_VARIANTS:
        raise ContractViolation(f"unknown variant {variant!r}")
    if variant.startswith("r_l"):
        if l is None or not 0 <= l <= m:
            raise ContractViolation(f"r_l variants need 0 <= l <= {m}, got {l}")

    if variant == "R_z":
        total = Poly((), "x")
        for s, w, sub in _cycle_terms(A, B, m):
            total = total + _shift_x(_rook(sub), s) * w
        return total
    if variant == "r_l":
        total = ZPoly(())
        for s, w, sub in _cycle_terms(A, B, l):
            total = total + rook_coefficient(_rook(sub), l - s) * w
        return total
    if variant == "per_z":
        total = ZPoly(())
        for s, w, sub in _cycle_terms(A, B, m):
            total = total + per_z_oracle(sub, force=True) * w
        return total
    if variant == "R_classic":
        total = Poly((), "x")
        for s, p, sub in _classic_terms(A, B, m):
            total = total + _shift_x(_classic_rook(sub), s) * p
        return total
    if variant == "r_l_classic":
        total = 0
        for s, p, sub in _classic_terms(A, B, l):
            total = total + _classic_rook(sub).coefficient(l - s) * p
        return total
    total = 0
    for s, p, sub in _classic_terms(A, B, m):
        total = total + _classic_per(sub) * p
    return total


def addition_lhs(A: RMatrix, B: RMatrix, variant: str, l: int | None = None):
    """The same quantity computed by the oracle on ``A + B``."""
    C = A + B
    if variant == "R_z":
        return _rook(C)
    if variant == "r_l":
        return rook_coefficient(_rook(C), l)
    if variant == "per_z":
        return per_z_oracle(C, force=True)
    if variant == "R_classic":
        return _classic_rook(C)
    if variant == "r_l_classic":
        return _classic_rook(C).coefficient(l)
    return _classic_per(C)


# ---------------------------------------------------------------------------
# complement formula


def complement_rhs(A: RMatrix, y, l: int | None = None, variant: str = "r_l"):
    """``r_l(z; y J - A)`` (or ``per(z; y J - A)``) from the ``r_s(z; A)``.

    Uses ``sum_s (-1)^s C(m-s, l-s) r_s(z; A) (z + n - l)^(l-s) y^(l-s)``
    with the rising factorial ``(z + c)^(k) = (z + c)(z + c + 1)...``.
    """
    m, n = A.shape
    if m > n:
        raise ContractViolation("need rows <= cols")
    if variant == "per_z":
        l = m
    elif variant != "r_l":
        raise ContractViolation(f"unknown variant {variant!r}")
    if l is None or not 0 <= l <= m:
        raise ContractViolation(f"need 0 <= l <= {m}, got {l}")
    R = _rook(A)
    total = ZPoly(())
    for s in range(l + 1):
        c = binomial(m - s, l - s)
        if not c:
            continue
        term = rook_coefficient(R, s) * rising_factorial(n - l, l - s) * (c * (-1) ** s)
        total = total + term * (y ** (l - s))
    return total


def complement_lhs(A: RMatrix, y, l: int | None = None, variant: str = "r_l"):
    m, n = A.shape
    C = ones(m, n).scale(y) - A
    if variant == "per_z":
        return per_z_oracle(C, force=True)
    return rook_coefficient(_rook(C), l)


# ---------------------------------------------------------------------------
# expansion along arbitrary rows does not generalise


def naive_rows_expansion(A: RMatrix, rows) -> Poly:
    """Last-rows expansion formula applied verbatim to an arbitrary row set.

    Rooks are placed on a nonempty subset of ``rows``, columns are rewired,
    and the remaining rows keep their relative order.  The no-rook term uses
    the untouched column sequence.  Agrees with ``R(x; z; A)`` when ``rows``
    are the last rows of ``A``.
    """
    m, n = A.shape
    rows = tuple(sorted(rows))
    rest = tuple(r for r in range(1, m + 1) if r not in rows)
    full = tuple(range(1, n + 1))
    total = _rook(submatrix(A, rest, full))
    for size in range(1, len(rows) + 1):
        for S in combinations(rows, size):
            for phi in enumerate_injections(S, n):
                w = 1
                for i, j in phi.pairs:
                    w = w * A[i, j]
                if is_zero(w):
                    continue
                sub = _rook(submatrix(A, rest, rewire(phi, full)))
                total = total + _shift_x(sub, size) * ZPoly((w,)).shift(cycle_count(phi))
    return total


@dataclass
class Witness:
    matrix: RMatrix
    rows: tuple
    expected: Poly
    naive: Poly

    def verified(self) -> bool:
        return self.expected != self.naive

    def to_json(self) -> dict:
        return {
            "matrix": [[render(v) for v in r] for r in self.matrix.entries],
            "rows": list(self.rows),
            "oracle": render(self.expected),
            "naive": render(self.naive),
        }


def find_arbitrary_k_counterexample(
    k: int, max_m: int = 3, max_n: int = 4, symbolic: bool = True, terminal: bool = False,
    trials: int = 0, seed: int = 0,
):
    """Search small boards for a row set where the naive expansion fails.

    With ``terminal=False`` only row sets other than the last ``k`` rows are
    tried; ``terminal=True`` tries exactly the last ``k`` rows (where the
    expansion is valid, so no witness should turn up).  Symbolic boards are
    tried first, then ``trials`` random integer boards.  Returns a
    :class:`Witness` or ``None``.
    """
    if k < 1:
        raise ContractViolation("k must be positive")

    def row_sets(m):
        last = tuple(range(m - k + 1, m + 1))
        if terminal:
            return [last]
        return [R for R in combinations(range(1, m + 1), k) if R != last]

    def check(A):
        expected = _rook(A)
        for R in row_sets(A.rows):
            naive = naive_rows_expansion(A, R)
            if naive != expected:
                return Witness(A, R, expected, naive)
        return None

    shapes = [(m, n) for m in range(k + 1, max_m + 1) for n in range(m, max_n + 1)]
    if symbolic:
        for m, n in shapes:
            w = check(generic_matrix(m, n)[0])
            if w:
                return w
    rng = random.Random(seed)
    for _ in range(trials if shapes else 0):
        m, n = rng.choice(shapes)
        w = check(random_matrix(rng, m, n))
        if w:
            return w
    return None


# ---------------------------------------------------------------------------
# verification drivers


@dataclass
class Bounds:
    max_m: int = 4
    max_n: int = 5
    max_nk: int = 8
    entry: int = 3


@dataclass
class VerifyReport:
    theorem: str
    seed: int
    bounds: dict
    trials: int = 0
    checks: int = 0
    failures: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "theorem": self.theorem,
            "seed": self.seed,
            "bounds": self.bounds,
            "trials": self.trials,
            "checks": self.checks,
            "pass": self.passed,
            "failures": self.failures,
        }
        if timing:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)


def random_matrix(rng: random.Random, m: int, n: int, entry: int = 3) -> RMatrix:
    return RMatrix.from_rows([[rng.randint(-entry, entry) for _ in range(n)] for _ in range(m)], n)


def _shapes(b: Bounds, square=False):
    return [
        (m, n)
        for m in range(1, b.max_m + 1)
        for n in range(m, b.max_n + 1)
        if not square or m == n
    ]


def _fail(name, A, lhs, rhs, **extra):
    d = {"check": name, "matrix": [[render(v) for v in r] for r in A.entries], "lhs": render(lhs), "rhs": render(rhs)}
    d.update({k: (list(v) if isinstance(v, tuple) else v) for k, v in extra.items()})
    return d


def _check_expansions(theorem: str, A: RMatrix):
    """Returns ``(checks, failures)`` for one board."""
    m = A.rows
    checks, failures = 0, []
    if theorem == "2":
        expected = rook_poly_oracle(A, force=True).poly
        for k in range(1, m):
            got = expand_last_k(A, k).poly
            checks += 1
            if got != expected:
                failures.append(_fail("expand_last_k", A, expected, got, k=k))
    elif theorem == "3":
        expected = rook_poly_oracle(A, force=True).poly
        for i in range(1, m + 1):
            got = expand_row(A, i).poly
            checks += 1
            if got != expected:
                failures.append(_fail("expand_row", A, expected, got, row=i))
    elif theorem == "4":
        expected = per_z_oracle(A, force=True)
        for k in range(1, m):
            for beta in enumerate_increasing(k, m):
                got = expand_per_rows(A, beta)
                checks += 1
                if got != expected:
                    failures.append(_fail("expand_per_rows", A, expected, got, rows=beta))
    return checks, failures


def _check_addition(A: RMatrix, B: RMatrix):
    checks, failures = 0, []
    m = A.rows
    for variant in ADDITION_VARIANTS:
        ls = range(m + 1) if variant.startswith("r_l") else [None]
        for l in ls:
            lhs = addition_lhs(A, B, variant, l)
            rhs = addition_rhs(A, B, variant, l)
            checks += 1
            if lhs != rhs:
                failures.append(_fail(variant, A, lhs, rhs, B=[[render(v) for v in r] for r in B.entries], l=l))
    return checks, failures


def _check_complement(A: RMatrix, y):
    checks, failures = 0, []
    for l in range(A.rows + 1):
        lhs = complement_lhs(A, y, l)
        rhs = complement_rhs(A, y, l)
        checks += 1
        if lhs != rhs:
            failures.append(_fail("r_l", A, lhs, rhs, y=render(y), l=l))
    lhs = complement_lhs(A, y, variant="per_z")
    rhs = complement_rhs(A, y, variant="per_z")
    checks += 1
    if lhs != rhs:
        failures.append(_fail("per_z", A, lhs, rhs, y=render(y)))
    return checks, failures


def _check_closed_form(n, k, a0, a1):
    from .structured import theorem7_value

    A = circulant_matrix(CirculantSpec(n, k, 0, (a0, a1)))
    lhs = per_z_oracle(A, force=True)
    rhs = theorem7_value(n, k, a0, a1)
    if lhs != rhs:
        return 1, [_fail("closed_form", A, lhs, rhs, n=n, k=k)]
    return 1, []


def _symbolic_cases(theorem: str, b: Bounds):
    from .algebra import MultiRing

    if theorem in ("2", "3", "4"):
        for m, n in _shapes(b):
            yield ("board", generic_matrix(m, n)[0])
    elif theorem == "5":
        for m, n in _shapes(b):
            names = [f"{p}{i}_{j}" for p in "ab" for i in range(1, m + 1) for j in range(1, n + 1)]
            ring = MultiRing(names)
            A = RMatrix.from_rows([[ring(f"a{i}_{j}") for j in range(1, n + 1)] for i in range(1, m + 1)], n)
            B = RMatrix.from_rows([[ring(f"b{i}_{j}") for j in range(1, n + 1)] for i in range(1, m + 1)], n)
            yield ("pair", A, B)
            yield ("pair", A, RMatrix.zeros(m, n))
            yield ("pair", RMatrix.zeros(m, n), B)
    elif theorem == "6":
        for m, n in _shapes(b):
            A, ring = generic_matrix(m, n, extra=("y",))
            yield ("complement", A, ring("y"))
            yield ("complement", RMatrix.zeros(m, n), ring("y"))
    elif theorem == "7":
        ring = MultiRing(("a0", "a1"))
        for n in range(1, b.max_nk + 1):
            for k in range(1, b.max_nk // n + 1):
                yield ("circulant", n, k, ring("a0"), ring("a1"))


def _random_cases(theorem: str, b: Bounds, trials: int, rng: random.Random):
    if theorem == "7":
        sizes = [(n, k) for n in range(1, b.max_nk + 1) for k in range(1, b.max_nk // n + 1)]
    else:
        shapes = _shapes(b)
    for _ in range(trials):
        if theorem == "7":
            n, k = rng.choice(sizes)
            yield ("circulant", n, k, rng.randint(-b.entry, b.entry), rng.randint(-b.entry, b.entry))
            continue
        m, n = rng.choice(shapes)
        A = random_matrix(rng, m, n, b.entry)
        if theorem == "5":
            yield ("pair", A, random_matrix(rng, m, n, b.entry))
        elif theorem == "6":
            yield ("complement", A, rng.randint(-b.entry, b.entry))
        else:
            yield ("board", A)


def run_case(theorem: str, case):
    kind = case[0]
    if kind == "board":
        return _check_expansions(theorem, case[1])
    if kind == "pair":
        return _check_addition(case[1], case[2])
    if kind == "complement":
        return _check_complement(case[1], case[2])
    return _check_closed_form(*case[1:])


THEOREMS = ("2", "3", "4", "5", "6", "7")


def verify_theorem(
    theorem, trials: int = 50, seed: int = 0, bounds: Bounds | None = None, symbolic: bool = False,
    workers: int = 1,
) -> VerifyReport:
    """Check one identity against the oracle on seeded random or symbolic input.

    ``symbolic=True`` runs every shape within ``bounds`` once with generic
    entries (``trials`` is then ignored).  The report depends only on
    ``(theorem, trials, seed, bounds, symbolic)``; the elapsed time is kept
    separately and left out of the JSON unless asked for.
    """
    theorem = str(theorem)
    if theorem not in THEOREMS:
        raise ContractViolation(f"unknown theorem {theorem!r}")
    b = bounds or Bounds()
    rng = random.Random(seed)
    start = time.perf_counter()
    if symbolic:
        cases = list(_symbolic_cases(theorem, b))
    else:
        cases = list(_random_cases(theorem, b, trials, rng))
    if workers > 1 and len(cases) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_case, [theorem] * len(cases), cases))
    else:
        results = [run_case(theorem, c) for c in cases]
    report = VerifyReport(
        theorem=theorem,
        seed=seed,
        bounds={**asdict(b), "symbolic": symbolic},
        trials=len(cases),
    )
    for checks, failures in results:
        report.checks += checks
        report.failures.extend(failures)
    report.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return report
