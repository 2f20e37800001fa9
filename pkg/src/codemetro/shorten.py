"""Erasure patterns, shortened codes and exact weight statistics."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .codes import BinaryCode, popcount
from .errors import DomainError, EmptyClassError


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ErasurePattern:
    """Erased positions of a length-``n`` probe, stored 0-based and sorted.

    Use :meth:`one_based` for the qubit-1-first convention of files and the
    command line.
    """

    n: int
    indices: tuple[int, ...] = ()

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise DomainError(f"erasure indices must be strictly increasing: {idx}")
        if idx and (idx[0] < 0 or idx[-1] >= self.n):
            raise DomainError(f"erasure index out of range for n={self.n}")
        if len(idx) >= self.n:
            raise DomainError("cannot erase every qubit")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def one_based(cls, n: int, indices: Iterable[int]) -> ErasurePattern:
        return cls(n, tuple(sorted(int(i) - 1 for i in indices)))

    @property
    def t(self) -> int:
        return len(self.indices)

    @property
    def remaining(self) -> int:
        return self.n - self.t

    def one_based_indices(self) -> list[int]:
        return [i + 1 for i in self.indices]

    def label(self) -> str:
        return ",".join(str(i) for i in self.one_based_indices())


@dataclass(frozen=True)
class WeightStats:
    """Exact first and second weight moments of a code."""

    count: int
    sum_w: int
    sum_w2: int

    @property
    def mean(self) -> Fraction:
        return Fraction(self.sum_w, self.count)

    @property
    def second_moment(self) -> Fraction:
        return Fraction(self.sum_w2, self.count)

    @property
    def variance(self) -> Fraction:
        return self.second_moment - self.mean ** 2


def _stats_from_weights(w: np.ndarray) -> WeightStats:
    if w.size == 0:
        raise DomainError("weight statistics of an empty code")
    w = [int(x) for x in w]
    return WeightStats(len(w), sum(w), sum(x * x for x in w))


def weight_stats(code: BinaryCode) -> WeightStats:
    return _stats_from_weights(code.weights())


@dataclass(frozen=True)
class ShortenedClass:
    z: str
    code: BinaryCode
    p: Fraction

    @cached_property
    def stats(self) -> WeightStats:
        return weight_stats(self.code)


@dataclass(frozen=True)
class ShortenedFamily:
    """A code split by its values on an erasure pattern.

    ``classes`` maps the restriction ``z`` (a bit string in pattern order) to
    the punctured words of that class.  Empty classes are not stored.
    """

    source: BinaryCode
    pattern: ErasurePattern
    classes: dict[str, ShortenedClass]
    disjoint: bool

    @property
    def t(self) -> int:
        return self.pattern.t

    @property
    def length(self) -> int:
        """Length of the punctured words, ``n - t``."""
        return self.pattern.remaining

    def __iter__(self) -> Iterator[ShortenedClass]:
        return iter(self.classes.values())

    def __len__(self) -> int:
        return len(self.classes)

    def to_json(self) -> dict:
        return {
            "E": self.pattern.one_based_indices(),
            "classes": [
                {
                    "z": c.z,
                    "p": fraction_str(c.p),
                    "weights": {str(k): v for k, v in _enumerate_weights(c.code).items()},
                }
                for c in self
            ],
        }


def _enumerate_weights(code: BinaryCode) -> dict[int, int]:
    ws, counts = np.unique(code.weights(), return_counts=True)
    return {int(w): int(c) for w, c in zip(ws, counts)}


def restrict(words: np.ndarray, n: int, positions: Iterable[int]) -> np.ndarray:
    """Keep only ``positions`` (0-based, in order) of each ``n``-bit word."""
    positions = list(positions)
    m = len(positions)
    out = np.zeros_like(np.asarray(words, dtype=np.uint64))
    one = np.uint64(1)
    for k, pos in enumerate(positions):
        bit = (words >> np.uint64(n - 1 - pos)) & one
        out |= bit << np.uint64(m - 1 - k)
    return out


def partition(C: BinaryCode, E: ErasurePattern) -> ShortenedFamily:
    if E.n != C.n:
        raise DomainError(f"pattern is for length {E.n}, code has length {C.n}")
    erased = set(E.indices)
    kept = [i for i in range(C.n) if i not in erased]
    keys = restrict(C.words, C.n, E.indices)
    punctured = restrict(C.words, C.n, kept)
    size = len(C)
    classes: dict[str, ShortenedClass] = {}
    total = 0
    for key in np.unique(keys):
        members = punctured[keys == key]
        z = format(int(key), f"0{E.t}b") if E.t else ""
        code = BinaryCode(len(kept), members, origin=f"{C.origin or 'C'}[z={z}]")
        # members agree on E, so puncturing within a class is injective
        assert len(code) == members.size
        classes[z] = ShortenedClass(z, code, Fraction(members.size, size))
        total += members.size
    disjoint = np.unique(punctured).size == total
    return ShortenedFamily(C, E, classes, bool(disjoint))


def is_t_disjoint(C: BinaryCode, E: ErasurePattern) -> bool:
    return partition(C, E).disjoint


def class_members(C: BinaryCode, E: ErasurePattern, z: str) -> np.ndarray:
    """Un-punctured codewords of ``C`` whose restriction to ``E`` is ``z``."""
    if len(z) != E.t or any(ch not in "01" for ch in z):
        raise DomainError(f"class label {z!r} does not match t={E.t}")
    keys = restrict(C.words, C.n, E.indices)
    target = int(z, 2) if z else 0
    members = C.words[keys == np.uint64(target)]
    if members.size == 0:
        raise EmptyClassError(f"class z={z!r} is empty")
    return members


def unpunctured_variance(C: BinaryCode, E: ErasurePattern, z: str) -> Fraction:
    return _stats_from_weights(popcount(class_members(C, E, z))).variance
