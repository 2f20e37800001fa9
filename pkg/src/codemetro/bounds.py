"""Closed-form QFI bounds from shortened-code weight statistics.

All bounds are exact :class:`~fractions.Fraction` values.  The generator is
``H = Z_1 + ... + Z_{n-t}`` throughout.
"""

from __future__ import annotations

import csv
import io
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Literal, Sequence

from .codes import BinaryCode, concatenate_repetition
from .errors import DisjointnessError, DomainError, PreconditionError
from .shorten import ErasurePattern, ShortenedFamily, fraction_str, partition


def _require_disjoint(F: ShortenedFamily) -> None:
    if not F.disjoint:
        raise DisjointnessError(
            f"shortened codes of {F.source.origin or 'code'} overlap on E={F.pattern.label()}"
        )


def _mixture_moments(F: ShortenedFamily) -> tuple[Fraction, Fraction]:
    """(sum_z p_z E[X_z], sum_z p_z E[X_z^2]) over the punctured classes."""
    m1 = sum((c.p * c.stats.mean for c in F), Fraction(0))
    m2 = sum((c.p * c.stats.second_moment for c in F), Fraction(0))
    return m1, m2


def thm1_lower_unchecked(F: ShortenedFamily) -> Fraction:
    """``8 sum_z p_z^2 Var_z`` without checking disjointness.

    On an overlapping family this number is *not* a proven QFI bound.
    """
    return 8 * sum((c.p ** 2 * c.stats.variance for c in F), Fraction(0))


def thm1_lower(F: ShortenedFamily) -> Fraction:
    """Lower bound ``8 sum_z p_z^2 Var(X_z)`` on the QFI after erasing ``F.pattern``."""
    _require_disjoint(F)
    return thm1_lower_unchecked(F)


def thm2_upper_unchecked(F: ShortenedFamily) -> Fraction:
    m1, m2 = _mixture_moments(F)
    return 16 * (m2 - m1 ** 2)


def thm2_upper(F: ShortenedFamily) -> Fraction:
    """Upper bound ``16 [sum p E[X^2] - (sum p E[X])^2]``, i.e. 4 Var(H) of the mixture."""
    _require_disjoint(F)
    return thm2_upper_unchecked(F)


def default_s(F: ShortenedFamily) -> Fraction:
    return _mixture_moments(F)[0]


def simple_upper(F: ShortenedFamily, s: Fraction | int | None = None) -> Fraction:
    """Looser upper bound written with class variances.

    Requires ``1 <= s <= sum_z p_z E[X_z]``; ``s`` defaults to the mean itself,
    which is the tightest admissible choice.
    """
    _require_disjoint(F)
    m1, m2 = _mixture_moments(F)
    s = m1 if s is None else Fraction(s)
    if s < 1:
        raise PreconditionError(f"s={s} must be at least 1")
    if m1 < s:
        raise PreconditionError(f"mean punctured weight {m1} is below s={s}")
    n_rem = F.length
    var_mix = sum((c.p * c.stats.variance for c in F), Fraction(0))
    ratio = s / n_rem
    return 16 * ratio * var_mix + 16 * (1 - ratio) * m2


@dataclass(frozen=True)
class SymmetricSandwich:
    """Literal evaluation of the uniform-class, half-weight simplification.

    ``uniform`` says whether every class has ``p_z = 2**-t`` (all ``2**t``
    classes present); ``max_mean_deviation`` is ``max_z |E[X_z] - (n-t)/2|``.
    The pair is only a theorem when both flags say the regime holds.
    """

    lower: Fraction
    upper: Fraction
    uniform: bool
    max_mean_deviation: Fraction


def sandwich_symmetric(F: ShortenedFamily) -> SymmetricSandwich:
    t = F.t
    n_rem = F.length
    total_m2 = sum((c.stats.second_moment for c in F), Fraction(0))
    core = Fraction(4, 2 ** t) * total_m2 - n_rem ** 2
    uniform = len(F) == 2 ** t and all(c.p == Fraction(1, 2 ** t) for c in F)
    half = Fraction(n_rem, 2)
    deviation = max(abs(c.stats.mean - half) for c in F)
    return SymmetricSandwich(Fraction(4, 2 ** (t + 1)) * core, 4 * core, uniform, deviation)


def project_pattern(E: ErasurePattern, r: int) -> ErasurePattern:
    """Outer blocks hit by ``E`` on a code concatenated with length-``r`` repetition."""
    if E.n % r:
        raise DomainError(f"pattern length {E.n} is not a multiple of r={r}")
    return ErasurePattern(E.n // r, tuple(sorted({i // r for i in E.indices})))


def boosted_lower(C_outer: BinaryCode, r: int, E: ErasurePattern) -> Fraction:
    """Lower bound for the outer code concatenated with repetition(r).

    Only the projection of ``E`` onto outer blocks matters; the outer
    bound is multiplied by ``r**2``.
    """
    if r < 1:
        raise DomainError("inner repetition length must be at least 1")
    if E.n != C_outer.n * r:
        raise DomainError(f"pattern length {E.n} != {C_outer.n}*{r}")
    outer = partition(C_outer, project_pattern(E, r))
    return r * r * thm1_lower(outer)


# ---------------------------------------------------------------- reports


def format_float(x: float | None) -> str:
    return "" if x is None else format(float(x), ".17g")


@dataclass
class QfiReport:
    """Every bound for one (code, erasure pattern) instance.

    Bound fields are ``None`` when the family is not disjoint; the oracle
    fields stay ``None`` until :func:`codemetro.oracle.attach_oracle` fills them.
    """

    code_id: str
    pattern: ErasurePattern
    disjoint: bool
    thm1_lower: Fraction | None = None
    thm2_upper: Fraction | None = None
    simple_upper: Fraction | None = None
    simple_s: Fraction | None = None
    sandwich: SymmetricSandwich | None = None
    exact_qfi: float | None = None
    gen2norm_lower: float | None = None
    var_upper: float | None = None

    @property
    def t(self) -> int:
        return self.pattern.t

    def to_json(self) -> dict:
        def q(x):
            return None if x is None else fraction_str(x)

        out = {
            "code_id": self.code_id,
            "E": self.pattern.one_based_indices(),
            "t": self.t,
            "n": self.pattern.n,
            "disjoint": self.disjoint,
            "thm1_lower": q(self.thm1_lower),
            "thm1_lower_float": None if self.thm1_lower is None else float(self.thm1_lower),
            "thm2_upper": q(self.thm2_upper),
            "thm2_upper_float": None if self.thm2_upper is None else float(self.thm2_upper),
            "simple_upper": q(self.simple_upper),
            "simple_s": q(self.simple_s),
            "sandwich_symmetric": None,
            "exact_qfi": self.exact_qfi,
            "gen2norm_lower": self.gen2norm_lower,
            "var_upper": self.var_upper,
        }
        if self.sandwich is not None:
            sw = self.sandwich
            out["sandwich_symmetric"] = {
                "lower": q(sw.lower),
                "upper": q(sw.upper),
                "uniform": sw.uniform,
                "max_mean_deviation": q(sw.max_mean_deviation),
            }
        return out


def report(
    C: BinaryCode,
    E: ErasurePattern,
    *,
    exact: bool = False,
    family: ShortenedFamily | None = None,
) -> QfiReport:
    F = family if family is not None else partition(C, E)
    rep = QfiReport(C.origin or "code", E, F.disjoint)
    if F.disjoint:
        rep.thm1_lower = thm1_lower(F)
        rep.thm2_upper = thm2_upper(F)
        s = default_s(F)
        if s >= 1:
            rep.simple_s = s
            rep.simple_upper = simple_upper(F, s)
        rep.sandwich = sandwich_symmetric(F)
    if exact:
        from .oracle import attach_oracle

        attach_oracle(rep, F)
    return rep


# ---------------------------------------------------------------- sweeps

Mode = Literal["all", "burst"]


def patterns(n: int, t: int, mode: Mode = "all") -> Iterator[ErasurePattern]:
    """Erasure patterns of size ``t`` in lexicographic order."""
    if t < 0 or t >= n:
        raise DomainError(f"need 0 <= t < n, got t={t}, n={n}")
    if mode == "all":
        for idx in itertools.combinations(range(n), t):
            yield ErasurePattern(n, idx)
    elif mode == "burst":
        if t == 0:
            yield ErasurePattern(n, ())
            return
        for start in range(n - t + 1):
            yield ErasurePattern(n, tuple(range(start, start + t)))
    else:
        raise DomainError(f"unknown sweep mode {mode!r}")


def _sweep_one(args) -> QfiReport:
    C, E, exact = args
    return report(C, E, exact=exact)


@dataclass
class Sweep:
    code_id: str
    t: int
    mode: str
    reports: list[QfiReport] = field(default_factory=list)

    @property
    def summary(self) -> dict:
        vals = [r.thm1_lower for r in self.reports if r.thm1_lower is not None]
        if not vals:
            return {"count": len(self.reports), "disjoint": 0, "min": None, "max": None, "mean": None}
        return {
            "count": len(self.reports),
            "disjoint": len(vals),
            "min": min(vals),
            "max": max(vals),
            "mean": sum(vals, Fraction(0)) / len(vals),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["pattern", "t", "disjoint", "thm1_lower", "thm1_lower_float",
                    "thm2_upper", "thm2_upper_float", "exact_qfi"])
        for r in self.reports:
            w.writerow([
                r.pattern.label(), r.t, str(r.disjoint).lower(),
                "" if r.thm1_lower is None else fraction_str(r.thm1_lower),
                "" if r.thm1_lower is None else format_float(r.thm1_lower),
                "" if r.thm2_upper is None else fraction_str(r.thm2_upper),
                "" if r.thm2_upper is None else format_float(r.thm2_upper),
                format_float(r.exact_qfi),
            ])
        s = self.summary
        if s["min"] is not None:
            w.writerow([f"# summary thm1_lower over {s['disjoint']}/{s['count']} disjoint patterns",
                        self.t, "", f"min={fraction_str(s['min'])}", format_float(s["min"]),
                        f"max={fraction_str(s['max'])}", f"mean={fraction_str(s['mean'])}", ""])
        else:
            w.writerow([f"# summary no disjoint patterns out of {s['count']}", self.t,
                        "", "", "", "", "", ""])
        return buf.getvalue()


def sweep(
    C: BinaryCode,
    t: int,
    mode: Mode = "all",
    *,
    exact: bool = False,
    jobs: int = 1,
    pats: Sequence[ErasurePattern] | None = None,
) -> Sweep:
    """Bounds for every size-``t`` pattern (all subsets or contiguous windows)."""
    if jobs < 1:
        raise DomainError("jobs must be at least 1")
    pats = list(pats) if pats is not None else list(patterns(C.n, t, mode))
    tasks = [(C, E, exact) for E in pats]
    if jobs == 1 or len(tasks) < 2:
        reports = [_sweep_one(a) for a in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_sweep_one, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    return Sweep(C.origin or "code", t, mode, reports)


def boost_table(C_outer: BinaryCode, rs: Sequence[int], erased: Sequence[int] = (0,)) -> list[dict]:
    """``boosted_lower`` for several inner lengths with the same outer erasures.

    ``erased`` are 0-based outer block indices; the first qubit of each block
    is erased on the concatenated code.
    """
    rows = []
    for r in rs:
        n = C_outer.n * r
        E = ErasurePattern(n, tuple(b * r for b in erased))
        value = boosted_lower(C_outer, r, E)
        rows.append({"r": r, "n": n, "E": E.one_based_indices(), "lower": value,
                     "normalized": value / n})
    return rows


def concatenated_lower(C_outer: BinaryCode, r: int, E: ErasurePattern) -> Fraction:
    """Same quantity as :func:`boosted_lower`, computed on the explicit concatenation."""
    return thm1_lower(partition(concatenate_repetition(C_outer, r), E))
