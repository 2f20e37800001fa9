"""Exact QFI of erased code probes from their density operators.

Two independent routes build the erased state:

* a restricted basis holding only the distinct punctured codewords, filled
  class by class from the shortened family;
* the full ``2**(n-t)``-dimensional operator obtained by an explicit partial
  trace of ``|psi_C><psi_C|``.

Both feed the same spectral QFI evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codes import BinaryCode, popcount
from .errors import MalformedStateError, NormalizationError, SizeError
from .shorten import ErasurePattern, ShortenedFamily, partition

EIG_EPS = 1e-12
ORACLE_BASIS_CAP = 4096
FULL_SPACE_QUBIT_CAP = 12
FULL_SPACE_SOURCE_CAP = 22


@dataclass(frozen=True)
class DensityOperator:
    """A state on the span of ``basis`` (punctured words, ``n_qubits`` bits each)."""

    basis: np.ndarray
    matrix: np.ndarray
    n_qubits: int

    @property
    def dim(self) -> int:
        return int(self.basis.size)

    def validate(self) -> None:
        m = self.matrix
        if m.shape != (self.dim, self.dim):
            raise MalformedStateError(f"matrix shape {m.shape} does not match basis size {self.dim}")
        if np.max(np.abs(m - m.conj().T), initial=0.0) > 1e-12:
            raise MalformedStateError("density operator is not Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-12:
            raise MalformedStateError(f"trace is {np.trace(m).real!r}, not 1")
        if np.linalg.eigvalsh(m)[0] < -1e-10:
            raise MalformedStateError("density operator is not positive semidefinite")


@dataclass(frozen=True)
class HamiltonianDiag:
    """Diagonal of ``Z_1 + ... + Z_{n-t}``: ``(n-t) - 2 wt(x)`` per basis word."""

    values: np.ndarray

    @classmethod
    def for_basis(cls, basis: np.ndarray, n_qubits: int) -> HamiltonianDiag:
        return cls(n_qubits - 2 * popcount(basis))


def build_rho(F: ShortenedFamily) -> DensityOperator:
    """Erased probe on the restricted basis: ``(1/|C|) sum_z sum_{x,y in C_z} |x><y|``."""
    basis = np.unique(np.concatenate([c.code.words for c in F]))
    rho = np.zeros((basis.size, basis.size))
    size = len(F.source)
    for c in F:
        idx = np.searchsorted(basis, c.code.words)
        rho[np.ix_(idx, idx)] += 1.0 / size
    return DensityOperator(basis, rho, F.length)


def hamiltonian(rho: DensityOperator) -> HamiltonianDiag:
    return HamiltonianDiag.for_basis(rho.basis, rho.n_qubits)


def _commutator(h: np.ndarray, m: np.ndarray) -> np.ndarray:
    """``[H, m]`` for diagonal ``H``."""
    return h[:, None] * m - m * h[None, :]


def qfi_matrix(m: np.ndarray, h: np.ndarray, eps: float = EIG_EPS) -> float:
    """SLD spectral sum ``2 sum |<e_i|d rho|e_j>|^2 / (l_i + l_j)`` with ``d rho = -i[H, rho]``."""
    lam, vecs = np.linalg.eigh(m)
    drho = vecs.conj().T @ _commutator(h.astype(float), m) @ vecs
    denom = lam[:, None] + lam[None, :]
    keep = denom > eps
    return float(2.0 * np.sum(np.abs(drho[keep]) ** 2 / denom[keep]))


def exact_qfi(rho: DensityOperator, H: HamiltonianDiag | None = None, eps: float = EIG_EPS) -> float:
    rho.validate()
    H = H or hamiltonian(rho)
    return qfi_matrix(rho.matrix, H.values, eps)


def gen2norm_lower(rho: DensityOperator, H: HamiltonianDiag | None = None) -> float:
    """``2 tr(rho^2 H^2) - 2 tr(rho H rho H)``, the squared 2-norm of ``[rho, H]``."""
    rho.validate()
    h = (H or hamiltonian(rho)).values.astype(float)
    m = rho.matrix
    rho_h = m * h[None, :]
    return float(2.0 * np.trace(m @ m * (h * h)[None, :]).real - 2.0 * np.trace(rho_h @ rho_h).real)


def variance_upper(rho: DensityOperator, H: HamiltonianDiag | None = None) -> float:
    """``4 tr(rho H^2) - 4 tr(rho H)^2``."""
    rho.validate()
    h = (H or hamiltonian(rho)).values.astype(float)
    d = np.diag(rho.matrix).real
    return float(4.0 * d @ (h * h) - 4.0 * (d @ h) ** 2)


def sld_pure(psi: np.ndarray, H: HamiltonianDiag) -> np.ndarray:
    """``2i(rho H - H rho)`` for ``rho = |psi><psi|``."""
    psi = np.asarray(psi)
    if abs(np.linalg.norm(psi) - 1.0) > 1e-9:
        raise NormalizationError(f"state has norm {np.linalg.norm(psi)!r}")
    rho = np.outer(psi, psi.conj())
    return -2j * _commutator(H.values.astype(float), rho)


def sld_second_moment(rho: np.ndarray, L: np.ndarray) -> float:
    return float(np.trace(rho @ L @ L).real)


def evolve(rho: DensityOperator, theta: float) -> np.ndarray:
    """``U rho U^dagger`` with ``U = exp(-i theta H)``, as a complex matrix."""
    phase = np.exp(-1j * theta * hamiltonian(rho).values)
    return phase[:, None] * rho.matrix * phase.conj()[None, :]


def full_space_rho(C: BinaryCode, E: ErasurePattern) -> np.ndarray:
    """Dense ``Tr_E |psi_C><psi_C|`` on all ``2**(n-t)`` computational states."""
    if E.remaining > FULL_SPACE_QUBIT_CAP:
        raise SizeError(f"n-t={E.remaining} exceeds the full-space cap {FULL_SPACE_QUBIT_CAP}")
    if C.n > FULL_SPACE_SOURCE_CAP:
        raise SizeError(f"n={C.n} is too long to hold the pure probe densely")
    n = C.n
    psi = np.zeros(2 ** n)
    psi[C.words.astype(np.int64)] = 1.0 / np.sqrt(len(C))
    kept = [i for i in range(n) if i not in set(E.indices)]
    # axis i of the reshaped tensor is qubit i+1 (most significant first)
    tensor = psi.reshape((2,) * n).transpose(kept + list(E.indices))
    M = tensor.reshape(2 ** len(kept), 2 ** E.t)
    return M @ M.T


def full_space_crosscheck(C: BinaryCode, E: ErasurePattern) -> tuple[float, float, float]:
    """(exact QFI, 2-norm lower bound, variance upper bound) on the full space."""
    m = full_space_rho(C, E)
    dim = m.shape[0]
    basis = np.arange(dim, dtype=np.uint64)
    rho = DensityOperator(basis, m, E.remaining)
    H = hamiltonian(rho)
    return exact_qfi(rho, H), gen2norm_lower(rho, H), variance_upper(rho, H)


def restricted_triple(F: ShortenedFamily) -> tuple[float, float, float]:
    rho = build_rho(F)
    H = hamiltonian(rho)
    return exact_qfi(rho, H), gen2norm_lower(rho, H), variance_upper(rho, H)


def attach_oracle(report, F: ShortenedFamily, cap: int = ORACLE_BASIS_CAP):
    """Fill the float fields of a :class:`~codemetro.bounds.QfiReport` in place.

    Skipped (fields left ``None``) when the restricted basis exceeds ``cap``.
    """
    if sum(len(c.code) for c in F) > cap:
        return report
    report.exact_qfi, report.gen2norm_lower, report.var_upper = restricted_triple(F)
    return report


def oracle_for(C: BinaryCode, E: ErasurePattern) -> tuple[float, float, float]:
    return restricted_triple(partition(C, E))
