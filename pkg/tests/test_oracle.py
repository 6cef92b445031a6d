import itertools
import math
import random

import pytest
from hypothesis import given, strategies as st
from scipy import stats

from mirrorgame.errors import IncompleteCoverage, InvalidConfig, OutOfRange
from mirrorgame.oracle import (
    MatchingList, RandomBitString, StreamingStringOracle, decode_random_string,
    fixed_matching, generate_list, locate, query_pair, query_partner, scan_partner,
)

L = MatchingList(((1, 2), (3, 4), (5, 6), (7, 8)))


def all_lists(N):
    """Every ordered list of unordered pairs over [1, 2N], by brute force."""
    out = set()
    for perm in itertools.permutations(range(1, 2 * N + 1)):
        out.add(tuple(tuple(sorted(perm[i:i + 2])) for i in range(0, 2 * N, 2)))
    return sorted(out)


def test_n1_unique_list():
    for seed in range(5):
        assert generate_list(1, random.Random(seed)).pairs == ((1, 2),)


def test_generate_deterministic():
    assert generate_list(50, random.Random(9)) == generate_list(50, random.Random(9))


def test_generate_invalid():
    with pytest.raises(InvalidConfig):
        generate_list(0, random.Random(0))


def test_uniform_over_lists_n2():
    lists = all_lists(2)
    assert len(lists) == math.factorial(4) // 2**2 == 6
    rng = random.Random(2024)
    counts = dict.fromkeys(lists, 0)
    for _ in range(6000):
        counts[generate_list(2, rng).pairs] += 1
    obs = list(counts.values())
    sigma = math.sqrt(6000 * (1 / 6) * (5 / 6))
    assert all(abs(o - 1000) <= 3 * sigma for o in obs)
    assert stats.chisquare(obs).pvalue > 0.001


def test_query_pair():
    assert query_pair(L, 1) == (1, 2)
    assert query_pair(L, 4) == (7, 8)
    with pytest.raises(OutOfRange):
        query_pair(L, 0)
    with pytest.raises(OutOfRange):
        query_pair(L, 5)


def test_query_partner():
    assert query_partner(L, 1) == 2
    assert all(query_partner(L, query_partner(L, x)) == x for x in range(1, 9))
    with pytest.raises(OutOfRange):
        query_partner(L, 9)


def test_locate():
    assert locate(L, 7) == 4
    assert locate(L, 2) == 1
    with pytest.raises(OutOfRange):
        locate(L, 0)


def test_canonical_order_and_validation():
    assert MatchingList(((2, 1), (4, 3))).pairs == ((1, 2), (3, 4))
    with pytest.raises(InvalidConfig):
        MatchingList(((1, 2), (2, 3)))
    with pytest.raises(InvalidConfig):
        MatchingList(((1, 5), (2, 3)))


@given(st.integers(1, 40), st.integers(0, 2**32))
def test_list_properties(N, seed):
    m = generate_list(N, random.Random(seed))
    assert sorted(x for pair in m for x in pair) == list(range(1, 2 * N + 1))
    for q in range(1, N + 1):
        a, b = query_pair(m, q)
        assert a < b
        assert query_partner(m, a) == b and query_partner(m, b) == a
    for x in range(1, 2 * N + 1):
        y = query_partner(m, x)
        assert y != x
        assert scan_partner(m, x) == y
        assert locate(m, x) == locate(m, y)
    for x, z in itertools.combinations(range(1, 2 * N + 1), 2):
        assert (locate(m, x) == locate(m, z)) == (query_partner(m, x) == z)


def test_list_file_format(tmp_path):
    assert L.dumps() == "1 2\n3 4\n5 6\n7 8\n"
    path = tmp_path / "list.txt"
    m = generate_list(16, random.Random(3))
    m.save(path)
    assert MatchingList.load(path) == m


def test_fixed_matching():
    assert fixed_matching(4).pairs == ((1, 8), (2, 7), (3, 6), (4, 5))


# --- random string --------------------------------------------------------

def test_decode_hand_example():
    # words 00 10 00 11 01 -> 1, 3, 1, 4, 2; first appearances 1, 3, 4, 2
    s = RandomBitString.from_bits("00 10 00 11 01")
    assert decode_random_string(s, 2).pairs == ((1, 3), (2, 4))


def test_decode_missing_value():
    # 2N = 4 (word 11) never appears
    s = RandomBitString.from_bits("00 01 10 00 01")
    with pytest.raises(IncompleteCoverage):
        decode_random_string(s, 2)


def test_decode_needs_power_of_two():
    with pytest.raises(InvalidConfig):
        decode_random_string(RandomBitString.from_bits("0" * 40), 3)


def test_decode_deterministic_and_file(tmp_path):
    rng = random.Random(5)
    N = 8
    s = RandomBitString.random(4 * N * 4 * 4, rng)
    path = tmp_path / "bits.bin"
    path.write_bytes(s.data)
    a = decode_random_string(s, N)
    assert a == decode_random_string(s, N)
    assert decode_random_string(RandomBitString.from_file(path), N) == a


def test_bytes_msb_first():
    s = RandomBitString(bytes([0b10110000]), 8)
    assert [s.bit(i) for i in range(4)] == [1, 0, 1, 1]


@given(st.sampled_from([1, 2, 4, 8]), st.integers(0, 2**32))
def test_streaming_accessor_matches_decode(N, seed):
    width = N.bit_length()
    s = RandomBitString.random(width * 12 * N, random.Random(seed))
    try:
        full = decode_random_string(s, N)
    except IncompleteCoverage:
        return
    streaming = StreamingStringOracle(s, N)
    assert all(streaming.pair(q) == full.pair(q) for q in range(1, N + 1))
