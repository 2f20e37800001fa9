"""Pure-state-SLD-style observable for erased code probes and its error-propagation MSE.

The observable is ``L = c i sum_z p_z (|psi_z><psi_z| H - H |psi_z><psi_z|)``
with ``c = 2`` by default (the pure-state SLD normalization).  Its moments
on ``rho_theta = U rho U^dagger`` are evaluated from per-class weight sums;
a matrix route on the restricted basis is kept for cross-checking.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .bounds import _require_disjoint, format_float
from .errors import DegenerateFamilyError
from .oracle import _commutator, build_rho, evolve, hamiltonian
from .shorten import ShortenedFamily

DEFAULT_COEFF = 2.0
SLOPE_EPS = 1e-12


def default_grid() -> np.ndarray:
    return np.linspace(-0.05, 0.05, 101)


@dataclass(frozen=True)
class ClassMoments:
    z: str
    p: Fraction
    weights: np.ndarray  # distinct punctured weights
    counts: np.ndarray
    mean: Fraction
    variance: Fraction


def class_moments(F: ShortenedFamily) -> list[ClassMoments]:
    out = []
    for c in F:
        ws, counts = np.unique(c.code.weights(), return_counts=True)
        out.append(ClassMoments(c.z, c.p, ws, counts, c.stats.mean, c.stats.variance))
    return out


def observable_L(F: ShortenedFamily, coeff: float = DEFAULT_COEFF) -> np.ndarray:
    """Matrix of ``L`` on the restricted basis used by :func:`codemetro.oracle.build_rho`."""
    _require_disjoint(F)
    rho = build_rho(F)
    h = hamiltonian(rho).values.astype(float)
    L = np.zeros((rho.dim, rho.dim), dtype=complex)
    for c in F:
        idx = np.searchsorted(rho.basis, c.code.words)
        psi = np.zeros(rho.dim)
        psi[idx] = 1.0 / np.sqrt(idx.size)
        P = np.outer(psi, psi)
        L += coeff * 1j * float(c.p) * (P * h[None, :] - h[:, None] * P)
    return L


def _phase_sums(cm: ClassMoments, n_rem: int, theta: float):
    """Normalized ``sum e^{-2i theta w}`` and ``sum (n-t-2w) e^{-2i theta w}`` plus theta-derivatives."""
    w = cm.weights.astype(float)
    a = cm.counts / cm.counts.sum()
    e = np.exp(-2j * theta * w)
    g = n_rem - 2.0 * w
    s0 = np.sum(a * e)
    s1 = np.sum(a * g * e)
    ds0 = np.sum(a * (-2j * w) * e)
    ds1 = np.sum(a * g * (-2j * w) * e)
    return s0, s1, ds0, ds1


def moments_at(F: ShortenedFamily, theta: float, coeff: float = DEFAULT_COEFF,
               classes: Sequence[ClassMoments] | None = None) -> tuple[float, float, float]:
    """(tr(rho_theta L), d/dtheta tr(rho_theta L), tr(rho_theta L^2)) from weight sums."""
    _require_disjoint(F)
    classes = classes if classes is not None else class_moments(F)
    n_rem = F.length
    bias = slope = second = 0.0
    for cm in classes:
        p = float(cm.p)
        s0, s1, ds0, ds1 = _phase_sums(cm, n_rem, theta)
        bias += -2.0 * coeff * p * p * np.imag(s0 * np.conj(s1))
        slope += -2.0 * coeff * p * p * np.imag(ds0 * np.conj(s1) + s0 * np.conj(ds1))
        h1 = n_rem - 2.0 * float(cm.mean)
        h2 = h1 * h1 + 4.0 * float(cm.variance)
        inner = 2.0 * h1 * np.real(s0 * np.conj(s1)) - abs(s0) ** 2 * h2 - abs(s1) ** 2
        second += -(coeff ** 2) * p ** 3 * inner
    return float(bias), float(slope), float(second)


def moments_matrix(F: ShortenedFamily, theta: float, coeff: float = DEFAULT_COEFF) -> tuple[float, float, float]:
    """Same three quantities by explicit matrices on the restricted basis."""
    L = observable_L(F, coeff)
    rho = build_rho(F)
    h = hamiltonian(rho).values.astype(float)
    rt = evolve(rho, theta)
    drt = -1j * _commutator(h, rt)
    return (float(np.trace(rt @ L).real), float(np.trace(drt @ L).real),
            float(np.trace(rt @ L @ L).real))


class Mse(NamedTuple):
    value: float
    defined: bool


def _mse_from(bias: float, slope: float, second: float) -> Mse:
    if abs(slope) < SLOPE_EPS:
        return Mse(float("nan"), False)
    return Mse((second - bias * bias) / (slope * slope), True)


def mse(F: ShortenedFamily, theta: float = 0.0, coeff: float = DEFAULT_COEFF) -> Mse:
    """Error-propagation variance ``[tr(rho L^2) - tr(rho L)^2] / (d tr(rho L)/d theta)^2``.

    Returns ``Mse(nan, False)`` when the slope vanishes (insensitive probe).
    """
    return _mse_from(*moments_at(F, theta, coeff))


def theorem3_bound(F: ShortenedFamily) -> Fraction:
    """Small-angle guarantee ``1 / (16 sum_z p_z^2 V_z)`` on the MSE of ``L``."""
    _require_disjoint(F)
    denom = 16 * sum((c.p ** 2 * c.stats.variance for c in F), Fraction(0))
    if denom == 0:
        raise DegenerateFamilyError("every class has zero weight variance")
    return 1 / denom


def mse_at_zero_exact(F: ShortenedFamily) -> Fraction | None:
    """Exact MSE of ``L`` at ``theta = 0``: ``sum p^3 V / (16 (sum p^2 V)^2)``."""
    _require_disjoint(F)
    s2 = sum((c.p ** 2 * c.stats.variance for c in F), Fraction(0))
    if s2 == 0:
        return None
    s3 = sum((c.p ** 3 * c.stats.variance for c in F), Fraction(0))
    return s3 / (16 * s2 * s2)


@dataclass(frozen=True)
class EstimatorCurve:
    theta: np.ndarray
    bias_raw: np.ndarray
    slope: np.ndarray
    second_moment: np.ndarray
    mse: np.ndarray
    defined: np.ndarray

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theta", "bias_raw", "slope", "second_moment", "mse", "defined"])
        for row in zip(self.theta, self.bias_raw, self.slope, self.second_moment, self.mse, self.defined):
            *vals, ok = row
            w.writerow([format_float(v) if (i < 4 or ok) else "" for i, v in enumerate(vals)]
                       + [str(bool(ok)).lower()])
        return buf.getvalue()


def moment_curves(F: ShortenedFamily, theta_grid: Sequence[float] | None = None,
                  coeff: float = DEFAULT_COEFF) -> EstimatorCurve:
    grid = np.asarray(default_grid() if theta_grid is None else theta_grid, dtype=float)
    classes = class_moments(F)
    rows = [moments_at(F, th, coeff, classes) for th in grid]
    bias, slope, second = (np.array(col) for col in zip(*rows)) if rows else (np.array([]),) * 3
    m = [_mse_from(b, s, q) for b, s, q in rows]
    return EstimatorCurve(grid, bias, slope, second,
                          np.array([x.value for x in m]), np.array([x.defined for x in m], dtype=bool))


def fit_theta_squared(F: ShortenedFamily, thetas: Sequence[float] | None = None,
                      coeff: float = DEFAULT_COEFF) -> tuple[float, float]:
    """Fit ``mse(theta) - mse(0) ~ K theta^2``.

    Returns ``(K, relative residual)`` where the residual is
    ``||y - K theta^2|| / ||y||`` (0 when ``y`` vanishes identically).
    """
    th = np.asarray(np.linspace(1e-3, 1e-2, 10) if thetas is None else thetas, dtype=float)
    base = mse(F, 0.0, coeff)
    if not base.defined:
        raise DegenerateFamilyError("MSE is undefined at theta = 0")
    y = np.array([mse(F, t, coeff).value for t in th]) - base.value
    x = th ** 2
    K = float(x @ y / (x @ x))
    norm = float(np.linalg.norm(y))
    if norm == 0.0:
        return K, 0.0
    return K, float(np.linalg.norm(y - K * x) / norm)
