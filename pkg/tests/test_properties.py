"""Randomised algebraic laws, checked with hypothesis."""

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cycrook.algebra import MultiRing, ZPoly, evaluate, rising_factorial
from cycrook.injections import PartialInjection, cycle_count, rewire
from cycrook.matrix import (
    RMatrix,
    cyclic_shift,
    identity,
    matrix_power,
    submatrix,
)
from cycrook.rook import expand_row, per_z_oracle, rook_poly_oracle

NAMES = ("a", "b", "c")
RING = MultiRing(NAMES)
SYMS = sympy.symbols(NAMES)

small = st.integers(-4, 4)
terms = st.dictionaries(st.tuples(*[st.integers(0, 2)] * 3), small, max_size=5)


def to_multi(d):
    out = RING.constant(0)
    for (i, j, k), c in d.items():
        out = out + c * RING("a") ** i * RING("b") ** j * RING("c") ** k
    return out


def to_sympy(d):
    a, b, c = SYMS
    return sympy.expand(sum((co * a**i * b**j * c**k for (i, j, k), co in d.items()), sympy.Integer(0)))


def same(p, expr):
    pt = sympy.Poly(expr, *SYMS) if expr != 0 else None
    got = {tuple(e): c for e, c in p.terms.items() if c}
    want = {} if pt is None else {tuple(m): int(c) for m, c in pt.terms() if c}
    return got == want


@given(terms, terms, terms)
def test_ring_axioms(x, y, z):
    p, q, r = to_multi(x), to_multi(y), to_multi(z)
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == 0


@given(terms, terms, st.integers(0, 3))
def test_arithmetic_matches_sympy(x, y, e):
    p, q = to_multi(x), to_multi(y)
    sx, sy = to_sympy(x), to_sympy(y)
    assert same(p * q, sympy.expand(sx * sy))
    assert same(p - q, sympy.expand(sx - sy))
    assert same(p**e, sympy.expand(sx**e))


@given(st.integers(-5, 5), st.integers(0, 6), st.integers(0, 6))
def test_rising_factorial_splits(c, k1, k2):
    assert rising_factorial(c, k1 + k2) == rising_factorial(c, k1) * rising_factorial(c + k1, k2)


@given(st.integers(1, 7))
def test_cyclic_shift_order(n):
    assert matrix_power(cyclic_shift(n), n) == identity(n)


def matrices(max_m=4, max_n=5):
    return st.integers(1, max_m).flatmap(
        lambda m: st.integers(m, max_n).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    ).map(RMatrix.from_rows)


@given(matrices(), st.data())
def test_submatrix_composes(A, data):
    rows = data.draw(st.lists(st.integers(1, A.rows), min_size=1, unique=True))
    cols = data.draw(st.lists(st.integers(1, A.cols), min_size=1, unique=True))
    inner_r = data.draw(st.lists(st.integers(1, len(rows)), min_size=1, unique=True))
    inner_c = data.draw(st.lists(st.integers(1, len(cols)), min_size=1, unique=True))
    once = submatrix(A, [rows[i - 1] for i in inner_r], [cols[j - 1] for j in inner_c])
    assert submatrix(submatrix(A, rows, cols), inner_r, inner_c) == once


@settings(max_examples=40, deadline=None)
@given(matrices(4, 4).filter(lambda A: A.rows == A.cols), st.data())
def test_invariant_under_simultaneous_permutation(A, data):
    n = A.rows
    perm = data.draw(st.permutations(range(1, n + 1)))
    B = submatrix(A, perm, perm)
    assert per_z_oracle(A) == per_z_oracle(B)
    assert rook_poly_oracle(A).poly == rook_poly_oracle(B).poly


@given(matrices(4, 5))
def test_rook_coefficient_degree_bounds(A):
    R = rook_poly_oracle(A).poly
    assert R.coefficient(0) == 1
    for l in range(A.rows + 1):
        r = R.coefficient(l)
        assert (r.degree if isinstance(r, type(R)) else 0) <= l


@settings(max_examples=40, deadline=None)
@given(matrices(4, 5), st.data())
def test_row_expansion_matches_oracle(A, data):
    i = data.draw(st.integers(1, A.rows))
    assert expand_row(A, i).poly == rook_poly_oracle(A).poly


@settings(max_examples=60)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.permutations(range(1, n + 1)))))
def test_permutation_cycles_and_rewire_length(arg):
    n, img = arg
    phi = PartialInjection(tuple(zip(range(1, n + 1), img)))
    cycles = sympy.combinatorics.Permutation([j - 1 for j in img]).cycles
    assert cycle_count(phi) == cycles
    assert rewire(phi, tuple(range(1, n + 1))) == ()


@given(matrices(3, 4), st.integers(-3, 3))
def test_scaling_matrix_scales_rook_coefficients(A, c):
    R = rook_poly_oracle(A).poly
    Rc = rook_poly_oracle(A.scale(c)).poly
    for l in range(A.rows + 1):
        assert Rc.coefficient(l) == R.coefficient(l) * c**l


def test_evaluate_is_horner():
    p = ZPoly((3, -1, 2))
    assert evaluate(p, {"z": 5}) == 3 - 5 + 50
