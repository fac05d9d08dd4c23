"""
Cycle-weighted rook polynomials on small boards
===============================================

Every partial injection from rows to columns is a placement of rooks.  Reading
row ``i`` and column ``i`` as the same point turns the placement into a graph
of paths and cycles, and each closed cycle picks up a factor ``z``.
"""

from cycrook import (
    X,
    Z,
    classic_specialize,
    generic_matrix,
    ones,
    per_z_oracle,
    rook_poly_oracle,
)
from cycrook.algebra import render

# The all-ones 2x2 board: four single rooks, two full placements.
J2 = ones(2)
print("R(x;z;J2) =", render(rook_poly_oracle(J2).poly))
print("per(z;J2) =", render(per_z_oracle(J2)))

# Setting z = 1 forgets the cycles and gives the classical rook polynomial.
print("classical  =", render(classic_specialize(rook_poly_oracle(J2).poly)))

# A symbolic board shows which placements close cycles.
A, ring = generic_matrix(2, 3)
print()
print("generic 2x3 board:")
print(A)
print("R(x;z;A) =", render(rook_poly_oracle(A).poly))

# Polynomials are ordinary Python values.
p = (Z + 1) * X + 1
print()
print("(z + 1) x + 1 squared:", render(p * p))
