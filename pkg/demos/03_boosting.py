"""
Boosting with repetition codes
==============================

Replace every bit of RM(1,3) by r copies.  Weight variances grow by r^2
and the lower bound grows quadratically in the qubit count.
"""

import math

from codemetro import codes
from codemetro.bounds import boost_table, concatenated_lower, sweep
from codemetro.reproduce import advantage_curve
from codemetro.shorten import ErasurePattern

outer = codes.from_generator(codes.reed_muller(1, 3))

# %%
for row in boost_table(outer, [1, 2, 3, 5, 8]):
    print(f"r={row['r']}  n={row['n']:3d}  lower={row['lower']}  per qubit={float(row['normalized']):.3f}")

# %%
# Only the outer blocks that the erasures touch matter.  Three erasures
# inside one block cost as much as one.
C24 = codes.concatenate_repetition(outer, 3)
for idx in [(1,), (1, 2, 3), (2, 3, 4), (3, 4, 7)]:
    E = ErasurePattern.one_based(24, idx)
    print(idx, concatenated_lower(outer, 3, E))

# %%
# Bursts of three consecutive erasures hit one or two blocks.
burst = sweep(C24, 3, "burst")
print("burst values:", sorted({r.thm1_lower for r in burst.reports}))

# %%
# The exponent of n in the bound climbs above 1 as soon as r >= 2.
print("r, n, log_n(bound)")
for r, n, value, lg in advantage_curve(outer, range(2, 9)):
    print(r, n, f"{lg:.4f}", math.isclose(value, 7 * r * r))
