import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import REPO_DATA
from khash.codes import (
    BudgetExceeded,
    CodeError,
    GeneratorMatrix,
    enumerate_codewords,
    format_code,
    format_witness,
    is_k_hash,
    is_k_hash_naive,
    max_linear_khash_dimension,
    min_distance,
    normalized_columns,
    parse_code,
    random_linear_code,
    rank,
    read_code,
    validate_witness,
)
from khash.gf import field_new, field_of_order

F3 = field_new(3)
F4 = field_new(2, 2)
TETRACODE = GeneratorMatrix(F3, [[1, 0, 1, 1], [0, 1, 1, 2]])


def brute_min_distance(G):
    words = list(enumerate_codewords(G))
    return min(sum(a != b for a, b in zip(u, v)) for u, v in itertools.combinations(words, 2))


def rref_bases(q, n, m):
    """Every reduced row echelon m x n matrix over a prime field, one per subspace."""
    for pivots in itertools.combinations(range(n), m):
        free = [(i, j) for i in range(m) for j in range(pivots[i] + 1, n) if j not in pivots]
        for vals in itertools.product(range(q), repeat=len(free)):
            M = np.zeros((m, n), dtype=int)
            for i, p in enumerate(pivots):
                M[i, p] = 1
            for (i, j), v in zip(free, vals):
                M[i, j] = v
            yield M


def test_rref_oracle_counts_subspaces():
    # Gaussian binomial [4, 2]_3 = 130
    assert sum(1 for _ in rref_bases(3, 4, 2)) == 130


def test_enumerate_small_code():
    G = GeneratorMatrix(F3, [[1, 2]])
    assert list(enumerate_codewords(G)) == [(0, 0), (1, 2), (2, 1)]


def test_generator_validation():
    with pytest.raises(CodeError):
        GeneratorMatrix(F3, [[1, 1], [2, 2]])  # rank 1
    with pytest.raises(CodeError):
        GeneratorMatrix(F3, [[1, 0], [0, 1], [1, 1]])  # m > n
    with pytest.raises(CodeError):
        GeneratorMatrix(F3, [[1, 3]])  # not a field element


def test_min_distance_examples():
    assert min_distance(TETRACODE) == brute_min_distance(TETRACODE) == 3
    assert min_distance(GeneratorMatrix(F4, [[1] * 5])) == 5
    assert min_distance(GeneratorMatrix(F3, np.eye(3, dtype=int))) == 1


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(1, 6), st.data())
def test_min_distance_matches_pairwise(q, n, data):
    m = data.draw(st.integers(1, min(n, 3)))
    G = random_linear_code(field_of_order(q), n, m, data.draw(st.integers(0, 10**6)))
    assert min_distance(G) == brute_min_distance(G)


def test_khash_examples():
    assert is_k_hash(TETRACODE, 3) is None
    assert is_k_hash_naive(TETRACODE, 3) is None
    I2 = GeneratorMatrix(F3, np.eye(2, dtype=int))
    w = is_k_hash(I2, 3)
    assert w is not None and validate_witness(w.codewords, 3)
    assert validate_witness([(0, 0), (1, 0), (1, 1)], 3)
    assert not validate_witness([(0, 0), (1, 2), (2, 1)], 3)


def test_pigeonhole():
    # more than q words cannot be separated in any coordinate
    G = GeneratorMatrix(F3, [[1, 1, 1, 1]])
    assert is_k_hash(G, 3) is None
    assert is_k_hash(GeneratorMatrix(F3, [[1, 0], [0, 1]]), 4) is not None
    assert is_k_hash(GeneratorMatrix(F3, [[1, 0], [0, 1]]), 4).k == 4


def test_witness_is_lexicographically_first():
    I2 = GeneratorMatrix(F3, np.eye(2, dtype=int))
    w = is_k_hash(I2, 3)
    assert w.messages[0] == (0, 0)
    assert w.codewords == ((0, 0), (0, 1), (0, 2)) or validate_witness(w.codewords, 3)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 4, 5, 7]), st.integers(2, 7), st.integers(3, 4), st.data())
def test_fast_check_agrees_with_oracle(q, n, k, data):
    F = field_of_order(q)
    max_m = max(m for m in range(1, n + 1) if q**m <= 200)
    m = data.draw(st.integers(1, max_m))
    G = random_linear_code(F, n, m, data.draw(st.integers(0, 10**6)))
    fast, slow = is_k_hash(G, k), is_k_hash_naive(G, k)
    assert (fast is None) == (slow is None)
    if fast is not None:
        assert validate_witness(fast.codewords, k)
        assert validate_witness(slow.codewords, k)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([3, 4, 5]), st.integers(3, 6), st.data())
def test_column_scaling_and_permutation_invariance(q, n, data):
    F = field_of_order(q)
    G = random_linear_code(F, n, 2, data.draw(st.integers(0, 10**6)))
    scale = [data.draw(st.integers(1, q - 1)) for _ in range(n)]
    perm = data.draw(st.permutations(range(n)))
    rows = np.array([[F.mul(int(G.rows[i, j]), scale[j]) for j in range(n)] for i in range(G.m)])
    H = GeneratorMatrix(F, rows[:, perm])
    assert (is_k_hash(G, 3) is None) == (is_k_hash(H, 3) is None)


def test_puncturing_keeps_hash_property_when_injective():
    # dropping a coordinate never creates new separations
    for trial in range(20):
        G = random_linear_code(F3, 6, 2, [5, trial])
        P = G.rows[:, 1:]
        if rank(F3, P) < 2:
            continue
        if is_k_hash(GeneratorMatrix(F3, P), 3) is None:
            assert is_k_hash(G, 3) is None


def test_random_code_is_deterministic_and_full_rank():
    F7 = field_new(7)
    a = random_linear_code(F7, 8, 3, 11)
    b = random_linear_code(F7, 8, 3, 11)
    assert a == b and rank(F7, a.rows) == 3
    assert random_linear_code(F7, 8, 3, 12) != a


def test_gf7_random_codes_are_often_3_hash():
    F7 = field_new(7)
    hits = sum(is_k_hash(random_linear_code(F7, 8, 2, [0, t]), 3) is None for t in range(50))
    assert hits > 0


def test_normalized_columns():
    cols = normalized_columns(F3, 2)
    assert len(cols) == 1 + (9 - 1) // 2
    assert cols[0].tolist() == [0, 0]


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 2)])
def test_exhaustive_gf3_k3_matches_oracle(n, expected):
    m, G = max_linear_khash_dimension(F3, n, 3)
    assert m == expected
    assert is_k_hash_naive(G, 3) is None
    # no code of dimension m+1 exists: check every subspace via its RREF basis (oracle)
    if n <= 4 and m < n:
        for M in rref_bases(3, n, m + 1):
            assert is_k_hash_naive(GeneratorMatrix(F3, M), 3) is not None


def test_exhaustive_gf4():
    dims = [max_linear_khash_dimension(F4, n, 3)[0] for n in range(1, 7)]
    assert dims == [1, 1, 1, 2, 2, 2]
    assert all(max_linear_khash_dimension(F4, n, 4)[0] == 1 for n in range(1, 6))


def test_search_limits():
    with pytest.raises(CodeError):
        max_linear_khash_dimension(field_new(5), 4, 3)
    with pytest.raises(CodeError):
        max_linear_khash_dimension(F3, 7, 3)
    with pytest.raises(CodeError):
        max_linear_khash_dimension(F3, 4, 3, mode="greedy")


def test_random_search_is_a_lower_bound():
    m, G = max_linear_khash_dimension(F3, 5, 3, mode="random", trials=50, seed=1)
    assert 1 <= m <= 2 and is_k_hash(G, 3) is None
    again = max_linear_khash_dimension(F3, 5, 3, mode="random", trials=50, seed=1)
    assert again[1] == G


def test_file_round_trip(tmp_path):
    for name in ("tetracode.code", "gf4_example.code", "gf3_line.code", "gf3_identity2.code"):
        G = read_code(REPO_DATA / name)
        assert parse_code(format_code(G)) == G
    path = tmp_path / "t.code"
    path.write_text("# comment\n3 4 2\n1 0 1 1\n0 1 1 2\n")
    assert read_code(path) == TETRACODE
    assert format_code(read_code(REPO_DATA / "gf4_example.code")).startswith("2^2 4 2 mod 1 1 1")


def test_bad_files():
    with pytest.raises(CodeError):
        parse_code("")
    with pytest.raises(CodeError):
        parse_code("3 4 2\n1 0 1 1\n")
    with pytest.raises(CodeError):
        parse_code("3 4 1\n1 0 1\n")
    with pytest.raises(ValueError):
        parse_code("6 2 1\n1 1\n")


def test_format_witness():
    assert format_witness(None, 3) == "verdict: 3-hash\n"
    w = is_k_hash(GeneratorMatrix(F3, np.eye(2, dtype=int)), 3)
    lines = format_witness(w, 3).splitlines()
    assert len(lines) == 4 and lines[-1] == "verdict: not 3-hash"


def test_budget_exceeded():
    # a one-dimensional code is k-hash for k <= q, so the scan must run to the end
    G = GeneratorMatrix(field_of_order(64), [[1, 2, 3]])
    with pytest.raises(BudgetExceeded) as err:
        is_k_hash(G, 5, budget=1000)
    assert err.value.work >= 1000
