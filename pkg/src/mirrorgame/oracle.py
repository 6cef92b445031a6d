"""The auxiliary matching, held by an oracle in the random list model.

The oracle stores an ordered list of ``N`` unordered pairs covering
``[1, 2N]``. Its contents and every query answer are read-only input to
the players and never count against their memory. Lookup tables built
inside :class:`MatchingList` are part of that free storage.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

from .errors import IncompleteCoverage, InvalidConfig, OutOfRange


@dataclass(frozen=True)
class MatchingList:
    pairs: tuple[tuple[int, int], ...]
    _partner: list[int] = field(init=False, repr=False, compare=False)
    _index: list[int] = field(init=False, repr=False, compare=False)
    N: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pairs = tuple((min(a, b), max(a, b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        size = 2 * len(pairs)
        if not pairs:
            raise InvalidConfig("a matching needs at least one pair")
        partner = [0] * (size + 1)
        index = [0] * (size + 1)
        for q, (a, b) in enumerate(pairs, start=1):
            for x in (a, b):
                if not 1 <= x <= size or index[x]:
                    raise InvalidConfig(f"pairs do not partition [1, {size}]")
            if a == b:
                raise InvalidConfig(f"pair {q} matches {a} with itself")
            partner[a], partner[b] = b, a
            index[a] = index[b] = q
        object.__setattr__(self, "_partner", partner)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "N", len(pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def pair(self, q: int) -> tuple[int, int]:
        if not 1 <= q <= self.N:
            raise OutOfRange(f"pair index {q} not in [1, {self.N}]")
        return self.pairs[q - 1]

    def partner(self, x: int) -> int:
        if not 1 <= x <= 2 * self.N:
            raise OutOfRange(f"{x} not in [1, {2 * self.N}]")
        return self._partner[x]

    def locate(self, x: int) -> int:
        if not 1 <= x <= 2 * self.N:
            raise OutOfRange(f"{x} not in [1, {2 * self.N}]")
        return self._index[x]

    def dumps(self) -> str:
        return "".join(f"{a} {b}\n" for a, b in self.pairs)

    @classmethod
    def loads(cls, text: str) -> "MatchingList":
        pairs = []
        for line in text.splitlines():
            if line.strip():
                a, b = line.split()
                pairs.append((int(a), int(b)))
        return cls(tuple(pairs))

    def save(self, path) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def load(cls, path) -> "MatchingList":
        return cls.loads(Path(path).read_text())


def generate_list(N: int, rng: random.Random) -> MatchingList:
    """Uniformly random ordered list of unordered pairs over ``[1, 2N]``.

    A uniform permutation read off two at a time hits every ordered list
    of unordered pairs exactly ``2**N`` times, so the list is uniform.
    """
    if N < 1:
        raise InvalidConfig(f"N must be >= 1, got {N}")
    perm = list(range(1, 2 * N + 1))
    rng.shuffle(perm)
    return MatchingList(tuple(zip(perm[0::2], perm[1::2])))


def fixed_matching(N: int) -> MatchingList:
    """The matching ``M_i = (i, 2N + 1 - i)``."""
    if N < 1:
        raise InvalidConfig(f"N must be >= 1, got {N}")
    return MatchingList(tuple((i, 2 * N + 1 - i) for i in range(1, N + 1)))


def query_pair(matching: MatchingList, q: int) -> tuple[int, int]:
    return matching.pair(q)


def query_partner(matching: MatchingList, x: int) -> int:
    return matching.partner(x)


def locate(matching: MatchingList, x: int) -> int:
    return matching.locate(x)


def scan_partner(matching: MatchingList, x: int) -> int:
    """Partner of ``x`` found with pair queries only, one pair at a time.

    This is how the list model answers a random-matching query.
    """
    if not 1 <= x <= 2 * matching.N:
        raise OutOfRange(f"{x} not in [1, {2 * matching.N}]")
    for q in range(1, matching.N + 1):
        a, b = matching.pair(q)
        if x == a:
            return b
        if x == b:
            return a
    raise AssertionError("unreachable: matching covers the universe")


# --- auxiliary random string ------------------------------------------------

@dataclass(frozen=True)
class RandomBitString:
    """Bit sequence stored most significant bit of each byte first."""

    data: bytes
    length: int

    def __post_init__(self):
        if not 0 <= self.length <= 8 * len(self.data):
            raise InvalidConfig("length exceeds the stored bytes")

    @classmethod
    def from_bits(cls, bits: str | Sequence[int]) -> "RandomBitString":
        text = "".join(str(int(b)) for b in bits) if not isinstance(bits, str) else bits
        text = "".join(ch for ch in text if ch in "01")
        padded = text + "0" * (-len(text) % 8)
        data = int(padded, 2).to_bytes(len(padded) // 8, "big") if padded else b""
        return cls(data, len(text))

    @classmethod
    def from_file(cls, path) -> "RandomBitString":
        data = Path(path).read_bytes()
        return cls(data, 8 * len(data))

    @classmethod
    def random(cls, nbits: int, rng: random.Random) -> "RandomBitString":
        nbytes = (nbits + 7) // 8
        return cls(rng.getrandbits(8 * nbytes).to_bytes(nbytes, "big") if nbytes else b"", nbits)

    def bit(self, i: int) -> int:
        return (self.data[i >> 3] >> (7 - (i & 7))) & 1


def word_width(N: int) -> int:
    if N < 1 or N & (N - 1):
        raise InvalidConfig(f"string decoding needs N a power of two, got {N}")
    return N.bit_length()  # 1 + log2 N


def iter_words(s: RandomBitString, N: int) -> Iterator[int]:
    """Numbers in ``[1, 2N]`` read from consecutive big-endian words."""
    width = word_width(N)
    for start in range(0, s.length - width + 1, width):
        w = 0
        for i in range(start, start + width):
            w = (w << 1) | s.bit(i)
        yield w + 1


def decode_random_string(s: RandomBitString, N: int) -> MatchingList:
    width = word_width(N)
    if s.length < width:
        raise InvalidConfig(f"string shorter than one {width}-bit word")
    seen = set()
    order = []
    for x in iter_words(s, N):
        if x not in seen:
            seen.add(x)
            order.append(x)
            if len(order) == 2 * N:
                break
    if len(order) < 2 * N:
        missing = min(set(range(1, 2 * N + 1)) - seen)
        raise IncompleteCoverage(f"{missing} never appears in the string")
    return MatchingList(tuple(zip(order[0::2], order[1::2])))


class StreamingStringOracle:
    """Pair queries answered straight from the random string.

    Holds only a few counters: each query rescans the string, and a word
    counts as a first appearance when no earlier word carries the same
    value. Quadratic time, logarithmic workspace.
    """

    def __init__(self, s: RandomBitString, N: int):
        word_width(N)
        self.s = s
        self.N = N

    def _word(self, pos: int) -> int:
        width = word_width(self.N)
        w = 0
        for i in range(pos * width, (pos + 1) * width):
            w = (w << 1) | self.s.bit(i)
        return w + 1

    def nth(self, j: int) -> int:
        """The ``j``-th number (1-based) in first-appearance order."""
        if not 1 <= j <= 2 * self.N:
            raise OutOfRange(f"position {j} not in [1, {2 * self.N}]")
        nwords = self.s.length // word_width(self.N)
        found = 0
        for t in range(nwords):
            x = self._word(t)
            if all(self._word(u) != x for u in range(t)):
                found += 1
                if found == j:
                    return x
        raise IncompleteCoverage(f"fewer than {j} distinct numbers in the string")

    def pair(self, q: int) -> tuple[int, int]:
        if not 1 <= q <= self.N:
            raise OutOfRange(f"pair index {q} not in [1, {self.N}]")
        a, b = self.nth(2 * q - 1), self.nth(2 * q)
        return (min(a, b), max(a, b))
