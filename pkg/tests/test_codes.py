import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codemetro.codes import (
    BinaryCode,
    GeneratorMatrix,
    code_from_json,
    code_to_json,
    concatenate_repetition,
    coset_code,
    dual,
    from_generator,
    gf2_rank,
    is_linear,
    load_code,
    min_distance,
    reed_muller,
    repetition,
    save_code,
    weight_enumerator,
)
from codemetro.errors import DomainError, RankError, SizeError

from oracles import RM13_ROWS, span


def test_rm13_matches_printed_generator():
    assert reed_muller(1, 3).strings() == RM13_ROWS


def test_rm03_is_all_ones():
    assert reed_muller(0, 3).strings() == ["11111111"]


def test_rm11_is_full_space():
    G = reed_muller(1, 1)
    assert G.strings() == ["11", "01"]
    assert from_generator(G).strings() == ["00", "01", "10", "11"]


@pytest.mark.parametrize("r,m", [(0, 2), (1, 2), (2, 3), (1, 4), (2, 4), (2, 5), (1, 6)])
def test_reed_muller_dimension_and_distance(r, m):
    from math import comb

    G = reed_muller(r, m)
    assert G.n == 2 ** m
    assert G.k == sum(comb(m, i) for i in range(r + 1))
    if r < m:
        assert min_distance(from_generator(G)) == 2 ** (m - r)


@pytest.mark.parametrize("r,m", [(4, 3), (-1, 3), (1, 7)])
def test_reed_muller_domain(r, m):
    with pytest.raises(DomainError):
        reed_muller(r, m)


def test_from_generator_examples(rm13):
    assert from_generator(GeneratorMatrix.from_strings(["11111111"])).strings() == ["00000000", "11111111"]
    assert len(rm13) == 16
    assert weight_enumerator(rm13) == {0: 1, 4: 14, 8: 1}
    assert rm13.strings() == span(RM13_ROWS)
    two = from_generator(GeneratorMatrix.from_strings(["110", "011"]))
    assert set(two.strings()) == {"000", "110", "011", "101"}


def test_rank_and_cap_errors():
    with pytest.raises(RankError):
        GeneratorMatrix.from_strings(["110", "011", "101"])
    with pytest.raises(RankError):
        GeneratorMatrix.from_strings(["11", "01", "10"])
    G = GeneratorMatrix(30, [1 << i for i in range(25)])
    with pytest.raises(SizeError):
        from_generator(G)
    assert len(from_generator(GeneratorMatrix(30, [1 << i for i in range(5)]), cap=5)) == 32


def test_repetition():
    assert repetition(1).strings() == ["0", "1"]
    assert repetition(8) == from_generator(reed_muller(0, 3))
    assert weight_enumerator(repetition(7)) == {0: 1, 7: 1}
    with pytest.raises(DomainError):
        repetition(0)


def test_concatenate_repetition(rm13):
    c = concatenate_repetition(rm13, 3)
    assert c.n == 24 and len(c) == 16
    assert weight_enumerator(c) == {0: 1, 12: 14, 24: 1}
    assert concatenate_repetition(rm13, 1) == rm13
    assert concatenate_repetition(repetition(1), 5).strings() == ["00000", "11111"]
    # bitwise layout: each source bit becomes a block of r equal bits
    for src, out in zip(rm13.strings(), c.strings()):
        assert out == "".join(ch * 3 for ch in src)
    with pytest.raises(DomainError):
        concatenate_repetition(rm13, 0)
    with pytest.raises(SizeError):
        concatenate_repetition(rm13, 9)


def test_coset_code():
    rep8 = repetition(8)
    assert coset_code(rep8, "00000000") == rep8
    assert coset_code(rep8, "01010101").strings() == ["01010101", "10101010"]
    c = BinaryCode.from_strings(["000", "110", "011", "101"])
    assert set(coset_code(c, "100").strings()) == {"100", "010", "111", "001"}
    with pytest.raises(DomainError):
        coset_code(rep8, "0101")


def test_logical_basis_states_of_832(rm13):
    """Each coset xG(C1/C2) + C2 lies in C1 and the eight cosets tile it."""
    quotient = reed_muller(1, 3).rows[1:]
    seen = set()
    for bits in itertools.product([0, 1], repeat=3):
        shift = 0
        for b, row in zip(bits, quotient):
            if b:
                shift ^= row
        coset = coset_code(repetition(8), shift)
        assert all(w in rm13 for w in coset)
        seen.update(coset)
    assert seen == set(rm13)


def test_dual(rm13):
    G = reed_muller(1, 3)
    assert from_generator(dual(G)) == rm13
    ones = GeneratorMatrix.from_strings(["11111"])
    d = from_generator(dual(ones))
    assert len(d) == 16 and all(bin(w).count("1") % 2 == 0 for w in d)
    assert from_generator(dual(GeneratorMatrix.from_strings(["100", "010"]))).strings() == ["000", "001"]


def test_dual_rows_orthogonal_and_involutive():
    rng = np.random.default_rng(7)
    for _ in range(30):
        n = int(rng.integers(3, 10))
        k = int(rng.integers(1, n))
        rows = []
        while gf2_rank(rows) < k:
            cand = int(rng.integers(1, 2 ** n))
            if gf2_rank(rows + [cand]) == len(rows) + 1:
                rows.append(cand)
        G = GeneratorMatrix(n, rows)
        D = dual(G)
        assert D.k == n - k
        assert all(bin(a & b).count("1") % 2 == 0 for a in G.rows for b in D.rows)
        assert from_generator(dual(D)) == from_generator(G)


def test_min_distance_and_linearity(rm13):
    assert min_distance(rm13) == 4
    assert min_distance(repetition(6)) == 6
    nonlinear = BinaryCode.from_strings(["000", "011", "101"])
    assert min_distance(nonlinear) == 2
    assert not is_linear(nonlinear)
    assert is_linear(rm13)
    assert is_linear(BinaryCode.from_strings(["0000"]))
    with pytest.raises(DomainError):
        min_distance(BinaryCode.from_strings(["0000"]))


def test_min_distance_brute_force_nonlinear():
    rng = np.random.default_rng(3)
    for _ in range(20):
        words = sorted({int(x) for x in rng.integers(0, 2 ** 7, size=6)})
        if len(words) < 2:
            continue
        C = BinaryCode(7, words)
        brute = min(bin(a ^ b).count("1") for a, b in itertools.combinations(words, 2))
        assert min_distance(C) == brute


def test_json_round_trip(tmp_path, rm13):
    path = tmp_path / "rm13.json"
    save_code(rm13, path)
    data = json.loads(path.read_text())
    assert data["n"] == 8 and data["codewords"][0] == "00000000"
    assert load_code(path) == rm13
    assert code_from_json({"generator": RM13_ROWS}) == rm13
    shuffled = {"n": 3, "codewords": ["101", "000", "011"]}
    assert code_to_json(code_from_json(shuffled))["codewords"] == ["000", "011", "101"]
    with pytest.raises(DomainError):
        code_from_json({"n": 4, "codewords": ["101"]})
    with pytest.raises(DomainError):
        code_from_json({"codewords": ["101", "10"]})


def test_length_cap():
    assert repetition(64).n == 64
    with pytest.raises(SizeError):
        repetition(65)


generators = st.integers(2, 9).flatmap(
    lambda n: st.lists(st.integers(1, 2 ** n - 1), min_size=1, max_size=n).map(lambda rows: (n, rows))
)


@settings(max_examples=60, deadline=None)
@given(generators, st.integers(1, 4))
def test_generator_properties(nrows, r):
    n, rows = nrows
    # keep an independent subset
    basis = []
    for row in rows:
        if gf2_rank(basis + [row]) > len(basis):
            basis.append(row)
    G = GeneratorMatrix(n, basis)
    C = from_generator(G)
    assert len(C) == 2 ** G.k
    assert sum(weight_enumerator(C).values()) == len(C)
    assert is_linear(C)
    big = concatenate_repetition(C, r)
    assert len(big) == len(C)
    assert sorted(big.weights()) == sorted(r * w for w in C.weights())
    if len(C) > 1:
        assert min_distance(big) == r * min_distance(C)
