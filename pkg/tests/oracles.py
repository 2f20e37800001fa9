"""Independent brute-force references used by the tests.

Nothing here imports the package: codes are lists of bit strings, moments
are Fractions, and the QFI comes from solving the SLD equation directly.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

RM13_ROWS = ["11111111", "01010101", "00110011", "00001111"]


def span(rows: list[str]) -> list[str]:
    n = len(rows[0])
    out = set()
    for coeffs in itertools.product([0, 1], repeat=len(rows)):
        bits = [0] * n
        for c, row in zip(coeffs, rows):
            if c:
                bits = [b ^ int(x) for b, x in zip(bits, row)]
        out.add("".join(map(str, bits)))
    return sorted(out)


def shorten(words: list[str], erased: list[int]) -> dict[str, list[str]]:
    """erased are 0-based; classes keyed by the erased bits in order."""
    classes: dict[str, list[str]] = {}
    for w in words:
        z = "".join(w[i] for i in erased)
        rest = "".join(ch for i, ch in enumerate(w) if i not in erased)
        classes.setdefault(z, []).append(rest)
    return classes


def variance(weights: list[int]) -> Fraction:
    k = len(weights)
    m = Fraction(sum(weights), k)
    return Fraction(sum(w * w for w in weights), k) - m * m


def weight(w: str) -> int:
    return w.count("1")


def dense_probe(words: list[str]) -> np.ndarray:
    n = len(words[0])
    psi = np.zeros(2 ** n)
    for w in words:
        psi[int(w, 2)] = 1.0
    return psi / np.linalg.norm(psi)


def partial_trace_dense(words: list[str], erased: list[int]) -> np.ndarray:
    """Reduced state by summing |x_kept><y_kept| over pairs agreeing on the erased bits."""
    n = len(words[0])
    kept = [i for i in range(n) if i not in erased]
    dim = 2 ** len(kept)
    rho = np.zeros((dim, dim))
    amp = 1.0 / len(words)
    for x in words:
        for y in words:
            if all(x[i] == y[i] for i in erased):
                a = int("".join(x[i] for i in kept), 2)
                b = int("".join(y[i] for i in kept), 2)
                rho[a, b] += amp
    return rho


def z_sum(n_qubits: int) -> np.ndarray:
    """Diagonal of Z_1 + ... + Z_n built from Kronecker products."""
    z = np.array([1.0, -1.0])
    one = np.ones(2)
    total = np.zeros(2 ** n_qubits)
    for q in range(n_qubits):
        factors = [z if i == q else one for i in range(n_qubits)]
        d = factors[0]
        for f in factors[1:]:
            d = np.kron(d, f)
        total += d
    return total


def qfi_by_sld_equation(rho: np.ndarray, h: np.ndarray) -> float:
    """Solve (L rho + rho L)/2 = -i[H, rho] by least squares and return tr(rho L^2)."""
    # H is diagonal, so the span of the occupied basis states is invariant
    keep = np.flatnonzero(np.abs(np.diag(rho)) > 1e-15)
    rho, h = rho[np.ix_(keep, keep)], h[keep]
    d = rho.shape[0]
    H = np.diag(h)
    drho = -1j * (H @ rho - rho @ H)
    eye = np.eye(d)
    # vec(A X B) = (B^T kron A) vec(X), column-major
    A = 0.5 * (np.kron(rho.T, eye) + np.kron(eye, rho))
    vec_l, *_ = np.linalg.lstsq(A, drho.reshape(-1, order="F"), rcond=1e-12)
    L = vec_l.reshape(d, d, order="F")
    L = 0.5 * (L + L.conj().T)
    return float(np.trace(rho @ L @ L).real)
