"""
Coset probes
============

A CSS logical basis state is a uniform superposition over a coset
x + C2 of the smaller code C2 inside C1.  Here C2 = RM(1,4) and the
shifts are quadratic words of RM(2,4).  The cosets have different
weight enumerators, yet the bounds come out identical.
"""

from codemetro import codes
from codemetro.bounds import thm1_lower
from codemetro.oracle import build_rho, exact_qfi
from codemetro.shorten import ErasurePattern, partition

C2 = codes.from_generator(codes.reed_muller(1, 4))
rows = codes.reed_muller(2, 4).strings()
# rows 5..10 are x1x2, x1x3, x1x4, x2x3, x2x4, x3x4


def xor(a, b):
    return "".join("1" if u != v else "0" for u, v in zip(a, b))


shifts = {
    "0": "0" * 16,
    "x1x2": rows[5],
    "x1x2 + x3x4": xor(rows[5], rows[10]),
}

# %%
for name, s in shifts.items():
    coset = codes.coset_code(C2, s)
    print(f"{name:12s} weights {codes.weight_enumerator(coset)}")
    for erased in [(), (1,), (1, 2)]:
        F = partition(coset, ErasurePattern.one_based(16, erased))
        if not F.disjoint:
            print("   ", erased, "overlapping shortened codes")
            continue
        q = exact_qfi(build_rho(F))
        print(f"    E={erased!s:7s} lower {thm1_lower(F)!s:>5s}  exact QFI {q:8.4f}")

# %%
# All three weight distributions have variance 4, and the shortened
# classes inherit the same variances, so every coset probe is as good as
# the linear one.  Disjointness depends on differences of codewords only,
# which is why it never changes under a shift.
