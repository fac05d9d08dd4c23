"""
Expanding along rows
====================

``R(x;z;A)`` can be built from smaller boards by placing the rooks of a few
rows first.  The placed rooks may leave open paths, so the remaining columns
are rewired before recursing.  This only works for the last ``k`` rows or a
single row; for an arbitrary set of rows the naive version goes wrong.
"""

import random

from cycrook import (
    expand_last_k,
    expand_per_rows,
    expand_row,
    find_arbitrary_k_counterexample,
    per_z_oracle,
    random_matrix,
    rook_poly_oracle,
)
from cycrook.algebra import render

rng = random.Random(1)
A = random_matrix(rng, 4, 5)
print(A)
print()

oracle = rook_poly_oracle(A).poly
for k in (1, 2, 3):
    print(f"last {k} rows agree with brute force:", expand_last_k(A, k).poly == oracle)
for i in range(1, 5):
    print(f"row {i} agrees with brute force:", expand_row(A, i).poly == oracle)
print("per(z) over rows (1, 3):", render(expand_per_rows(A, (1, 3))))
print("per(z) by brute force:  ", render(per_z_oracle(A)))

# The first two rows of a generic 3x3 board are enough to break the naive
# formula.
w = find_arbitrary_k_counterexample(2)
print()
print("rows", w.rows, "of a generic 3x3 board:")
print("  true x^2 coefficient :", render(w.expected.coefficient(2)))
print("  naive x^2 coefficient:", render(w.naive.coefficient(2)))
