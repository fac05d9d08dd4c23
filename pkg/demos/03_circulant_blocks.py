"""
Block circulants
================

``(a0 I_n + a1 P_n) (x) J_k`` has a closed form for ``per(z; .)``, and any
narrow band of shifts can be swept block by block.  Both stay fast long
after brute force has given up.
"""

import time

from cycrook import CirculantSpec, banded_per_z, circulant_matrix, per_z_oracle, theorem7_value
from cycrook.algebra import render

spec = CirculantSpec(n=3, k=2, r=0, coeffs=(1, 2))
print(circulant_matrix(spec))
print("closed form:", render(theorem7_value(3, 2, 1, 2)))
print("sweep      :", render(banded_per_z(spec)))
print("brute force:", render(per_z_oracle(circulant_matrix(spec))))

# A band of three shifts has no closed form, but the sweep still applies.
wide = CirculantSpec(n=4, k=2, r=1, coeffs=(1, -1, 2))
print()
print("three shifts, sweep      :", render(banded_per_z(wide)))
print("three shifts, brute force:", render(per_z_oracle(circulant_matrix(wide), force=True)))

print()
for n in (10, 100, 1000):
    t = time.perf_counter()
    v = theorem7_value(n, 10, 2, 3, z=3)
    print(f"n={n:<5} k=10: {v.bit_length()} bits in {time.perf_counter() - t:.3f} s")
