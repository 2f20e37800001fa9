"""
A Reed-Muller probe state
=========================

Build the [8,4,4] first-order Reed-Muller code, look at its weight
enumerator and check the sensitivity of the uniform superposition over
its codewords.
"""

import numpy as np

from codemetro import codes
from codemetro.bounds import thm1_lower, thm2_upper
from codemetro.oracle import build_rho, exact_qfi, gen2norm_lower
from codemetro.shorten import ErasurePattern, partition

# %%
# The generator rows are evaluations of 1, x1, x2, x3 on all points of F_2^3.
G = codes.reed_muller(1, 3)
for row in G.strings():
    print(row)

C = codes.from_generator(G)
print("size", len(C), "distance", codes.min_distance(C))
print("weights", codes.weight_enumerator(C))

# %%
# With nothing erased there is a single class, and the bounds reduce to
# twice and four times the weight variance.
F = partition(C, ErasurePattern(C.n))
print("lower", thm1_lower(F), "upper", thm2_upper(F))

# %%
# The density-operator route agrees.  For a pure state the QFI is the
# upper value, so the lower bound is off by a factor of two here.
rho = build_rho(F)
print("2-norm of [rho, H]^2:", round(gen2norm_lower(rho), 12))
print("exact QFI:", round(exact_qfi(rho), 12))

# %%
# Compare with the GHZ state on the same 8 qubits.
ghz = partition(codes.repetition(8), ErasurePattern(8))
print("GHZ exact QFI:", round(exact_qfi(build_rho(ghz)), 12), "= 4 n^2 =", 4 * 64)
print("standard quantum limit 4 n =", 4 * 8, np.isclose(exact_qfi(rho), 32))
