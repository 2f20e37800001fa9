"""Binary block codes stored as packed machine words.

Codewords are unsigned 64-bit integers.  Bit position 1 (the leftmost
character of the string form, i.e. qubit 1) is the most significant of the
``n`` used bits, so sorting words as unsigned integers sorts their strings
lexicographically.
"""

from __future__ import annotations

import itertools
import json
from math import comb
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, RankError, SizeError

MAX_LENGTH = 64
DEFAULT_ENUMERATION_CAP = 24


def popcount(words: np.ndarray) -> np.ndarray:
    """Hamming weight of every entry of a uint64 array."""
    return np.bitwise_count(np.asarray(words, dtype=np.uint64)).astype(np.int64)


def parse_word(s: str) -> int:
    s = s.strip()
    if not s or any(ch not in "01" for ch in s):
        raise DomainError(f"not a binary string: {s!r}")
    if len(s) > MAX_LENGTH:
        raise SizeError(f"length {len(s)} exceeds the {MAX_LENGTH}-bit cap")
    return int(s, 2)


def format_word(w: int, n: int) -> str:
    return format(int(w), f"0{n}b") if n else ""


def _check_length(n: int) -> None:
    if n < 1:
        raise DomainError("code length must be at least 1")
    if n > MAX_LENGTH:
        raise SizeError(f"code length {n} exceeds the {MAX_LENGTH}-bit cap")


class BinaryCode:
    """An explicit, nonempty set of length-``n`` binary words.

    Words are kept sorted and deduplicated in a read-only uint64 array.
    ``origin`` is a free-form provenance tag (e.g. ``"RM(1,3)"``).
    """

    __slots__ = ("n", "words", "origin")

    def __init__(self, n: int, words: Iterable[int] | np.ndarray, origin: str | None = None):
        _check_length(n)
        arr = np.unique(np.asarray(list(words) if not isinstance(words, np.ndarray) else words,
                                   dtype=np.uint64))
        if arr.size == 0:
            raise DomainError("a code needs at least one codeword")
        if n < MAX_LENGTH and int(arr[-1]) >> n:
            raise DomainError(f"codeword wider than n={n}")
        arr.flags.writeable = False
        self.n = n
        self.words = arr
        self.origin = origin

    @classmethod
    def from_strings(cls, strings: Sequence[str], origin: str | None = None) -> BinaryCode:
        if not strings:
            raise DomainError("a code needs at least one codeword")
        n = len(strings[0].strip())
        if any(len(s.strip()) != n for s in strings):
            raise DomainError("codewords have different lengths")
        return cls(n, [parse_word(s) for s in strings], origin)

    def __len__(self) -> int:
        return int(self.words.size)

    def __iter__(self):
        return (int(w) for w in self.words)

    def __contains__(self, word: int | str) -> bool:
        if isinstance(word, str):
            word = parse_word(word)
        i = np.searchsorted(self.words, np.uint64(word))
        return bool(i < self.words.size and int(self.words[i]) == word)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryCode):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.words, other.words)

    def __hash__(self) -> int:
        return hash((self.n, self.words.tobytes()))

    def __repr__(self) -> str:
        tag = f", origin={self.origin!r}" if self.origin else ""
        return f"BinaryCode(n={self.n}, size={len(self)}{tag})"

    def strings(self) -> list[str]:
        return [format_word(w, self.n) for w in self]

    def weights(self) -> np.ndarray:
        return popcount(self.words)


class GeneratorMatrix:
    """A full-rank ``k x n`` generator matrix over GF(2), rows packed as ints."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Sequence[int]):
        _check_length(n)
        rows = tuple(int(r) for r in rows)
        if any(r >> n for r in rows):
            raise DomainError(f"generator row wider than n={n}")
        if len(rows) > n:
            raise RankError(f"{len(rows)} rows cannot be independent in length {n}")
        if gf2_rank(rows) != len(rows):
            raise RankError("generator rows are linearly dependent over GF(2)")
        self.n = n
        self.rows = rows

    @classmethod
    def from_strings(cls, strings: Sequence[str]) -> GeneratorMatrix:
        if not strings:
            raise DomainError("empty generator matrix")
        n = len(strings[0].strip())
        if any(len(s.strip()) != n for s in strings):
            raise DomainError("generator rows have different lengths")
        return cls(n, [parse_word(s) for s in strings])

    @property
    def k(self) -> int:
        return len(self.rows)

    def strings(self) -> list[str]:
        return [format_word(r, self.n) for r in self.rows]

    def to_array(self) -> np.ndarray:
        return np.array([[int(c) for c in s] for s in self.strings()], dtype=np.uint8).reshape(self.k, self.n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeneratorMatrix):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __repr__(self) -> str:
        return f"GeneratorMatrix(k={self.k}, n={self.n})"


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of packed integer rows (xor basis insertion)."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def from_generator(G: GeneratorMatrix, cap: int = DEFAULT_ENUMERATION_CAP) -> BinaryCode:
    """All ``2**k`` GF(2) combinations of the rows of ``G``."""
    if G.k > cap:
        raise SizeError(f"k={G.k} exceeds the enumeration cap {cap}")
    words = np.zeros(1, dtype=np.uint64)
    for r in G.rows:
        words = np.concatenate([words, words ^ np.uint64(r)])
    return BinaryCode(G.n, words, origin="generator")


def reed_muller(r: int, m: int) -> GeneratorMatrix:
    """Generator of RM(r, m) from evaluation vectors of monomials.

    Column ``j`` is the point whose variable ``x_i`` equals bit ``i-1`` of
    ``j``; rows are ordered by degree, then lexicographically by variable set.
    RM(1, 3) comes out as 11111111, 01010101, 00110011, 00001111.
    """
    if not (0 <= m <= 6) or not (0 <= r <= m):
        raise DomainError(f"RM({r},{m}) requires 0 <= r <= m <= 6")
    n = 1 << m
    rows = []
    for degree in range(r + 1):
        for variables in itertools.combinations(range(m), degree):
            row = 0
            for j in range(n):
                if all((j >> v) & 1 for v in variables):
                    row |= 1 << (n - 1 - j)
            rows.append(row)
    assert len(rows) == sum(comb(m, i) for i in range(r + 1))
    return GeneratorMatrix(n, rows)


def repetition(n: int) -> BinaryCode:
    if n < 1:
        raise DomainError("repetition length must be at least 1")
    _check_length(n)
    return BinaryCode(n, [0, (1 << n) - 1], origin=f"rep({n})")


def concatenate_repetition(C: BinaryCode, r: int) -> BinaryCode:
    """Replace each bit of every codeword by ``r`` copies of itself."""
    if r < 1:
        raise DomainError("inner repetition length must be at least 1")
    if r == 1:
        return C
    _check_length(C.n * r)
    block = np.uint64((1 << r) - 1)
    out = np.zeros_like(C.words)
    for pos in range(C.n):
        bit = (C.words >> np.uint64(pos)) & np.uint64(1)
        out |= (bit * block) << np.uint64(pos * r)
    origin = f"{C.origin or 'C'}*rep({r})"
    return BinaryCode(C.n * r, out, origin=origin)


def coset_code(C2: BinaryCode, shift: int | str) -> BinaryCode:
    """The translate ``{shift ^ c : c in C2}``."""
    if isinstance(shift, str):
        if len(shift.strip()) != C2.n:
            raise DomainError(f"shift has length {len(shift.strip())}, code has {C2.n}")
        shift = parse_word(shift)
    if C2.n < MAX_LENGTH and shift >> C2.n:
        raise DomainError("shift wider than the code")
    return BinaryCode(C2.n, C2.words ^ np.uint64(shift), origin=f"{C2.origin or 'C'}+shift")


def _rref(rows: Sequence[int], n: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form over GF(2); returns (rows, pivot columns)."""
    rows = list(rows)
    pivots: list[int] = []
    top = 0
    for col in range(n):
        mask = 1 << (n - 1 - col)
        sel = next((i for i in range(top, len(rows)) if rows[i] & mask), None)
        if sel is None:
            continue
        rows[top], rows[sel] = rows[sel], rows[top]
        for i in range(len(rows)):
            if i != top and rows[i] & mask:
                rows[i] ^= rows[top]
        pivots.append(col)
        top += 1
    return rows[:top], pivots


def dual(G: GeneratorMatrix) -> GeneratorMatrix:
    """Generator of the orthogonal complement of the row space of ``G``."""
    n = G.n
    rref, pivots = _rref(G.rows, n)
    free = [c for c in range(n) if c not in pivots]
    out = []
    for f in free:
        v = 1 << (n - 1 - f)
        for row, p in zip(rref, pivots):
            if row & (1 << (n - 1 - f)):
                v |= 1 << (n - 1 - p)
        out.append(v)
    if not out:
        raise DomainError("the dual of the full space is the zero code, which has no generator")
    return GeneratorMatrix(n, out)


def weight_enumerator(C: BinaryCode) -> dict[int, int]:
    ws, counts = np.unique(C.weights(), return_counts=True)
    return {int(w): int(c) for w, c in zip(ws, counts)}


def is_linear(C: BinaryCode) -> bool:
    if int(C.words[0]) != 0:
        return False
    size = len(C)
    if size & (size - 1):
        return False
    # C is inside its GF(2) span, so equal sizes mean C is the span
    return 1 << gf2_rank(C) == size


def min_distance(C: BinaryCode) -> int:
    """Minimum nonzero weight for linear codes, minimum pairwise distance otherwise."""
    if len(C) < 2:
        raise DomainError("minimum distance needs at least two codewords")
    if is_linear(C):
        w = C.weights()
        return int(w[w > 0].min())
    best = C.n
    words = C.words
    for i in range(len(words) - 1):
        d = popcount(words[i + 1:] ^ words[i]).min()
        best = min(best, int(d))
    return best


# ---------------------------------------------------------------- JSON I/O


def code_to_json(C: BinaryCode) -> dict:
    return {"n": C.n, "codewords": C.strings()}


def code_from_json(data: dict, cap: int = DEFAULT_ENUMERATION_CAP) -> BinaryCode:
    if "generator" in data:
        return from_generator(GeneratorMatrix.from_strings(data["generator"]), cap=cap)
    if "codewords" not in data:
        raise DomainError("code JSON needs either 'codewords' or 'generator'")
    code = BinaryCode.from_strings(data["codewords"])
    if "n" in data and int(data["n"]) != code.n:
        raise DomainError(f"declared n={data['n']} but codewords have length {code.n}")
    return code


def save_code(C: BinaryCode, path: str | Path) -> None:
    Path(path).write_text(json.dumps(code_to_json(C), indent=1) + "\n")


def load_code(path: str | Path, cap: int = DEFAULT_ENUMERATION_CAP) -> BinaryCode:
    code = code_from_json(json.loads(Path(path).read_text()), cap=cap)
    code.origin = Path(path).stem
    return code
