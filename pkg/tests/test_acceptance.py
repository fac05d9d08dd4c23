"""Acceptance criteria, one test each.  Run with ``pytest tests/test_acceptance.py``;
a pass/fail line per criterion is printed in the terminal summary."""

import os
import random
import subprocess
import sys
import time

import pytest

from cycrook import (
    Bounds,
    CirculantSpec,
    RMatrix,
    addition_lhs,
    addition_rhs,
    banded_per_z,
    complement_lhs,
    complement_rhs,
    evaluate,
    expand_last_k,
    find_arbitrary_k_counterexample,
    last_k_terms,
    ones,
    per_z_oracle,
    random_matrix,
    rising_factorial,
    row_terms,
    ryser_permanent,
    theorem7_value,
    verify_theorem,
)
from cycrook.algebra import render
from cycrook.identities import ADDITION_VARIANTS


def _assert_report(report):
    assert report.passed, report.failures[:3]
    assert report.checks > 0


def _random_population(seed, count, max_m, max_n, square=False):
    rng = random.Random(seed)
    shapes = [(m, n) for m in range(1, max_m + 1) for n in range(m, max_n + 1) if not square or m == n]
    return [random_matrix(rng, *rng.choice(shapes)) for _ in range(count)]


@pytest.mark.acceptance(1, "last-k-rows expansion equals the oracle (symbolic m<=4,n<=5; 200 random m<=n<=6)")
def test_last_k_expansion_matches_oracle():
    start = time.perf_counter()
    _assert_report(verify_theorem("2", symbolic=True, bounds=Bounds(max_m=4, max_n=5)))
    report = verify_theorem("2", trials=200, seed=2024, bounds=Bounds(max_m=6, max_n=6))
    _assert_report(report)
    assert report.trials == 200
    assert time.perf_counter() - start < 120


@pytest.mark.acceptance(2, "single-row expansion equals the oracle; row m mirrors last-1-row branches")
def test_single_row_expansion_matches_oracle():
    start = time.perf_counter()
    _assert_report(verify_theorem("3", symbolic=True, bounds=Bounds(max_m=4, max_n=5)))
    report = verify_theorem("3", trials=200, seed=2024, bounds=Bounds(max_m=6, max_n=6))
    _assert_report(report)
    assert report.trials == 200

    def branches(terms):
        return sorted((render(w), c, r, cols) for w, c, r, cols in terms)

    from cycrook import generic_matrix

    boards = [generic_matrix(m, n)[0] for m in range(1, 5) for n in range(m, 6)]
    boards += _random_population(2024, 200, 6, 6)
    for A in boards:
        m = A.rows
        if m < 2:
            continue
        assert branches(row_terms(A, m)) == branches(last_k_terms(A, 1))
    assert time.perf_counter() - start < 60


@pytest.mark.acceptance(3, "per(z) row-set expansion equals the oracle for every row set")
def test_per_row_set_expansion_matches_oracle():
    start = time.perf_counter()
    _assert_report(verify_theorem("4", symbolic=True, bounds=Bounds(max_m=4, max_n=5)))
    report = verify_theorem("4", trials=200, seed=2024, bounds=Bounds(max_m=6, max_n=6))
    _assert_report(report)
    assert time.perf_counter() - start < 60


@pytest.mark.acceptance(4, "all six addition formulas (symbolic up to 3x4; 100 random pairs up to 5x5; zero cases)")
def test_addition_formulas():
    start = time.perf_counter()
    _assert_report(verify_theorem("5", symbolic=True, bounds=Bounds(max_m=3, max_n=4)))
    report = verify_theorem("5", trials=100, seed=2024, bounds=Bounds(max_m=5, max_n=5))
    _assert_report(report)
    assert report.trials == 100
    rng = random.Random(7)
    for m, n in [(1, 1), (2, 3), (3, 3), (4, 5)]:
        A = random_matrix(rng, m, n)
        Z = RMatrix.zeros(m, n)
        for X, Y in [(A, Z), (Z, A)]:
            for variant in ADDITION_VARIANTS:
                ls = range(m + 1) if variant.startswith("r_l") else [None]
                for l in ls:
                    assert addition_lhs(X, Y, variant, l) == addition_rhs(X, Y, variant, l)
    assert time.perf_counter() - start < 120


@pytest.mark.acceptance(5, "complement formulas with symbolic y, z; per(z;J_mn) is a rising factorial")
def test_complement_formulas():
    start = time.perf_counter()
    _assert_report(verify_theorem("6", symbolic=True, bounds=Bounds(max_m=3, max_n=4)))
    report = verify_theorem("6", trials=100, seed=2024, bounds=Bounds(max_m=5, max_n=6))
    _assert_report(report)
    assert report.trials == 100
    for m in range(1, 6):
        for n in range(m, 6):
            J = ones(m, n)
            assert per_z_oracle(J) == rising_factorial(n - m, m)
            assert complement_rhs(RMatrix.zeros(m, n), 1, variant="per_z") == rising_factorial(n - m, m)
            assert complement_lhs(RMatrix.zeros(m, n), 1, variant="per_z") == rising_factorial(n - m, m)
    assert time.perf_counter() - start < 60


@pytest.mark.acceptance(6, "closed form equals the oracle (nk<=8, symbolic) and the DP (n<=50, k<=3)")
def test_closed_form_matches_oracle_and_dp():
    start = time.perf_counter()
    _assert_report(verify_theorem("7", symbolic=True, bounds=Bounds(max_nk=8)))
    for a0, a1, z in [(2, 3, 5), (-1, 2, 3), (1, 1, -2)]:
        for k in range(1, 4):
            for n in range(2, 51):
                spec = CirculantSpec(n, k, 0, (a0, a1))
                assert banded_per_z(spec, z=z) == theorem7_value(n, k, a0, a1, z=z), (n, k, a0, a1, z)
    assert time.perf_counter() - start < 120


@pytest.mark.acceptance(7, "closed form at n=1000,k=10 under 5 s; DP at n=50,k=2,t=1 under 10 s")
def test_structured_speed():
    env = dict(os.environ)
    start = time.perf_counter()
    out = subprocess.run(
        [sys.executable, "-m", "cycrook", "circulant", "--n", "1000", "--k", "10", "--coeffs", "2,3",
         "--method", "closed-form", "--z", "3"],
        capture_output=True, text=True, env=env, check=True,
    )
    closed_form_s = time.perf_counter() - start
    assert out.stdout.strip().isdigit()
    assert closed_form_s < 5, closed_form_s

    start = time.perf_counter()
    value = banded_per_z(CirculantSpec(50, 2, 0, (2, 3)))
    dp_s = time.perf_counter() - start
    assert dp_s < 10, dp_s
    assert value == theorem7_value(50, 2, 2, 3)


@pytest.mark.acceptance(8, "k=2 arbitrary-rows counterexample search (symbolic up to 3x4) reports a verified witness")
def test_arbitrary_rows_counterexample_search():
    start = time.perf_counter()
    witness = find_arbitrary_k_counterexample(2, max_m=3, max_n=4, symbolic=True)
    elapsed = time.perf_counter() - start
    assert elapsed < 60
    print("witness found" if witness else "no witness within bounds")
    assert witness is not None
    assert witness.verified()
    assert witness.expected == expand_last_k(witness.matrix, 1).poly
    assert witness.expected != witness.naive


@pytest.mark.acceptance(9, "per(z) at z=1 equals Ryser up to 7x7; per(z;J_n) is the rising factorial")
def test_cross_oracle_anchors():
    start = time.perf_counter()
    for A in _random_population(99, 120, 7, 7, square=True):
        assert evaluate(per_z_oracle(A), {"z": 1}) == ryser_permanent(A)
    for n in range(1, 7):
        assert per_z_oracle(ones(n)) == rising_factorial(0, n)
    assert time.perf_counter() - start < 30


@pytest.mark.acceptance(10, "two verify runs with the same seed give byte-identical JSON")
def test_verify_reports_are_deterministic(tmp_path):
    outputs = []
    for run in range(2):
        path = tmp_path / f"report{run}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "cycrook", "verify", "--theorem", "5", "--trials", "20", "--seed", "42",
             "--format", "json", "--output", str(path)],
            capture_output=True, check=True,
        )
        outputs.append((proc.stdout, path.read_bytes()))
    assert outputs[0] == outputs[1]
    assert outputs[0][0].strip() == outputs[0][1].strip()
