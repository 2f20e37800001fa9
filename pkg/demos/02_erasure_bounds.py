"""
Losing qubits
=============

Erase qubits from the RM(1,3) probe and from the GHZ state.  The code
state keeps a useful QFI because its shortened codes stay disjoint.
"""

from codemetro import codes
from codemetro.bounds import sweep
from codemetro.oracle import build_rho, exact_qfi
from codemetro.shorten import ErasurePattern, partition

C = codes.from_generator(codes.reed_muller(1, 3))
C.origin = "RM(1,3)"

# %%
# Erasing qubit 1 splits the code by the value of that bit.  Each half is
# a copy of the [7,3,4] simplex code, possibly complemented.
F = partition(C, ErasurePattern.one_based(8, [1]))
for cls in F:
    print(cls.z, cls.p, sorted(cls.code.weights().tolist()))

# %%
# Sweep every pattern of size t.  The lower bound is the same for all of
# them, which reflects the symmetry of the code.
for t in range(4):
    sw = sweep(C, t, exact=True)
    s = sw.summary
    qfi = sorted({round(r.exact_qfi, 9) for r in sw.reports})
    print(f"t={t}: {s['count']:2d} patterns, lower bound {s['min']}, exact QFI {qfi}")

# %%
# A weight-4 codeword has support {1,2,3,4}.  Erasing exactly those
# positions makes two shortened codes collide, and no bound is reported.
bad = sweep(C, 4, pats=[ErasurePattern.one_based(8, [1, 2, 3, 4])])
print("disjoint after erasing a codeword support:", bad.reports[0].disjoint)

# %%
# The GHZ state loses everything after a single erasure.
for n in (4, 8):
    rho = build_rho(partition(codes.repetition(n), ErasurePattern(n, (0,))))
    print(f"GHZ n={n}, one erasure: QFI = {abs(exact_qfi(rho)):.1e}")
