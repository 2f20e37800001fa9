"""Expected-vs-computed table for the boosted RM(1,3) probe numbers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .bounds import boosted_lower, sweep, thm1_lower
from .codes import BinaryCode, concatenate_repetition, from_generator, reed_muller
from .errors import CodeMetroError
from .oracle import build_rho, gen2norm_lower
from .shorten import ErasurePattern, partition


@dataclass(frozen=True)
class Row:
    label: str
    expected: Any
    computed: Any
    tol: float = 0.0

    @property
    def ok(self) -> bool:
        if isinstance(self.computed, str):  # error message
            return False
        if self.tol:
            return abs(float(self.expected) - float(self.computed)) <= self.tol
        return self.expected == self.computed


def rm13() -> BinaryCode:
    code = from_generator(reed_muller(1, 3))
    code.origin = "RM(1,3)"
    return code


def _row(label: str, expected, compute: Callable[[], Any], tol: float = 0.0) -> Row:
    try:
        got = compute()
    except (CodeMetroError, ValueError) as exc:
        got = f"{type(exc).__name__}: {exc}"
    return Row(label, expected, got, tol)


def _values(C: BinaryCode, t: int, mode: str = "all") -> set:
    return {r.thm1_lower for r in sweep(C, t, mode).reports}


def reproduction_rows(code: BinaryCode | None = None) -> list[Row]:
    C = code if code is not None else rm13()
    n = C.n
    rows = [
        _row("noiseless 2-norm bound (weight statistics)", Fraction(16),
             lambda: thm1_lower(partition(C, ErasurePattern(n)))),
        _row("noiseless 2-norm bound (density operator)", 16.0,
             lambda: gen2norm_lower(build_rho(partition(C, ErasurePattern(n)))), tol=1e-9),
    ]
    for t, want in [(1, 7), (2, 3), (3, 1)]:
        rows.append(_row(f"lower bound, every {t}-qubit erasure", {Fraction(want)},
                         lambda t=t: _values(C, t)))
        rows.append(_row(f"normalized lower bound, {t} erasure(s)", {Fraction(want, 8)},
                         lambda t=t: {v / n for v in _values(C, t)}))
    for r, want in [(3, 63), (5, 175), (8, 448)]:
        rows.append(_row(f"boosted r={r} (n={n * r}) single erasure", Fraction(want),
                         lambda r=r: boosted_lower(C, r, ErasurePattern(n * r, (0,)))))
    C24 = concatenate_repetition(C, 3)
    for label, idx, want in [
        ("24-qubit, three erasures inside one block", (0, 1, 2), 63),
        ("24-qubit, erasures projecting to two blocks", (1, 2, 3), 27),
        ("24-qubit, erasures projecting to three blocks", (2, 3, 6), 9),
    ]:
        rows.append(_row(label, Fraction(want),
                         lambda idx=idx: thm1_lower(partition(C24, ErasurePattern(C24.n, idx)))))
    rows.append(_row("24-qubit burst of 3, values over all windows", {Fraction(63), Fraction(27)},
                     lambda: _values(C24, 3, "burst")))
    return rows


def advantage_curve(code: BinaryCode | None = None, rs=range(2, 17)) -> list[tuple[int, int, Fraction, float]]:
    """(r, n, single-erasure lower bound, log_n of it) for the boosted code."""
    C = code if code is not None else rm13()
    out = []
    for r in rs:
        n = C.n * r
        value = boosted_lower(C, r, ErasurePattern(n, (0,)))
        out.append((r, n, value, math.log(value) / math.log(n) if value > 0 else float("-inf")))
    return out
