"""Memory-metered players.

Alice's partition strategy splits the oracle's pair list into blocks
``P_1`` (pairs 1-2) and ``P_i`` (pairs ``2**(i-1)+1 .. 2**i``). Small
blocks are tracked explicitly, larger ones through a power-sum sketch
that becomes explicit once at most ``k`` of their numbers are left.
Alice mirrors Bob through the oracle's matching and, whenever Bob
declares the partner of her open generated number, generates a fresh
number from the lowest block that still has undeclared numbers.

Every player reports ``metered_bits()``: one number or counter of
``[1, 2N]`` costs ``number_bits(N)`` bits, a residue ``ceil(log2 p)``
bits, a flag one bit. Oracle contents and query answers are free.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import Exhausted, InvalidConfig, OutOfRange, ProtocolError
from .missing import (
    PowerSumSketch,
    number_bits,
    offline_sums,
    recover_newton,
    select_prime,
)
from .oracle import MatchingList, fixed_matching


def budget(N: int, c) -> int:
    """``k = ceil(c * log2 N)``, computed exactly for rational ``c``."""
    return math.ceil(Fraction(c) * (N.bit_length() - 1))


def partition_of(q: int) -> int:
    """Block index of pair ``q``: pairs 1-2 are block 1, else ``ceil(log2 q)``."""
    return max(1, (q - 1).bit_length())


def pair_range(i: int) -> range:
    if i == 1:
        return range(1, 3)
    return range(2 ** (i - 1) + 1, 2**i + 1)


class PartitionTracker:
    """Declared-number bookkeeping for one block of pairs."""

    __slots__ = ("index", "pairs", "size", "k", "N", "undeclared",
                 "offline", "online", "declared_count", "bits")

    def __init__(self, index: int, oracle: MatchingList, k: int, p: int):
        self.index = index
        self.pairs = pair_range(index)
        self.size = 2 * len(self.pairs)
        self.k = k
        self.N = oracle.N
        self.declared_count = 0
        self.offline: Optional[PowerSumSketch] = None
        self.online: Optional[PowerSumSketch] = None
        self.undeclared: Optional[set[int]] = None
        if self.size <= k:
            self.undeclared = set(self.members(oracle))
        else:
            self.offline = offline_sums(self.members(oracle), k, p, N=self.N)
            self.online = PowerSumSketch(self.offline.params)
        self.bits = self.metered_bits()

    def members(self, oracle: MatchingList) -> list[int]:
        return [x for q in self.pairs for x in oracle.pair(q)]

    @property
    def explicit(self) -> bool:
        return self.undeclared is not None

    @property
    def remaining(self) -> int:
        return self.size - self.declared_count

    @property
    def exhausted(self) -> bool:
        return self.declared_count == self.size

    def absorb(self, x: int, oracle: MatchingList, y: Optional[int] = None) -> int:
        """Record a declaration of ``x`` (and ``y``); returns the change in metered bits."""
        if self.undeclared is not None:
            self.undeclared.remove(x)
            self.declared_count += 1
            if y is not None:
                self.undeclared.remove(y)
                self.declared_count += 1
        else:
            if y is None:
                self.online.update(x)
                self.declared_count += 1
            else:
                self.online.update_pair(x, y)
                self.declared_count += 2
            if self.remaining > self.k:
                return 0
            self.undeclared = recover_newton(self.offline, self.online, self.members(oracle))
            self.offline = self.online = None
        old, self.bits = self.bits, self.metered_bits()
        return self.bits - old

    def metered_bits(self) -> int:
        nb = number_bits(self.N)
        if self.undeclared is not None:
            return len(self.undeclared) * nb + nb + 1
        return self.offline.metered_bits() + self.online.metered_bits() + 1


@dataclass(frozen=True)
class Abort:
    reason: str


class AlicePartition:
    """Alice's low-memory strategy in the random list model."""

    name = "alice-partition"

    def __init__(self, oracle: MatchingList, c=2):
        N = oracle.N
        if N < 2 or N & (N - 1):
            raise InvalidConfig(f"alice-partition needs N a power of two >= 2, got {N}")
        self.oracle = oracle
        self.N = N
        self.n = N.bit_length() - 1
        self.k = budget(N, c)
        if self.k < 1:
            raise InvalidConfig("memory constant too small: k < 1")
        self.p = select_prime(N)
        self.trackers: list[PartitionTracker] = []
        self.open_g: Optional[int] = None
        self.open_partner: Optional[int] = None
        self.aborted = False
        self.generated: list[int] = []
        self._low = 0
        self._bits = 0
        self.peak_bits = 0

    def _absorb(self, x: int, y: Optional[int] = None) -> None:
        # y, when given, is the partner of x and so lives in the same block
        tr = self.trackers[partition_of(self.oracle.locate(x)) - 1]
        self._bits += tr.absorb(x, self.oracle, y)

    def _open(self, g: int) -> None:
        self.open_g, self.open_partner = g, self.oracle.partner(g)
        self.generated.append(g)
        self._absorb(g)
        self.peak_bits = max(self.peak_bits, self.metered_bits())

    def start(self) -> int:
        if self.trackers:
            raise ProtocolError("alice already started")
        self.trackers = [PartitionTracker(i, self.oracle, self.k, self.p)
                         for i in range(1, self.n + 1)]
        self._bits = sum(t.bits for t in self.trackers)
        g = self.oracle.pair(1)[0]
        self._open(g)
        return g

    def move(self, bob_number: int):
        """Alice's reply to Bob's declaration: a number, or :class:`Abort`."""
        if not self.trackers or self.aborted:
            raise ProtocolError("alice is not in a position to move")
        if not 1 <= bob_number <= 2 * self.N:
            raise OutOfRange(f"{bob_number} not in [1, {2 * self.N}]")
        if bob_number != self.open_partner:
            y = self.oracle.partner(bob_number)
            self._absorb(bob_number, y)
            return y
        self._absorb(bob_number)
        self.open_g = self.open_partner = None
        trackers = self.trackers
        while self._low < len(trackers) and trackers[self._low].exhausted:
            self._low += 1
        if self._low == len(trackers):
            raise ProtocolError("every number is declared; the game is over")
        tr = trackers[self._low]
        if not tr.explicit:
            self.aborted = True
            return Abort(f"block {tr.index} has {tr.remaining} undeclared numbers > k={self.k}")
        self._open(min(tr.undeclared))
        return self.open_g

    def metered_bits(self) -> int:
        if not self.trackers:
            return 0
        nb = number_bits(self.N)
        open_bits = 2 * nb if self.open_g is not None else 0
        return self._bits + open_bits + 1

    def recount_bits(self) -> int:
        """``metered_bits`` recomputed from scratch, for cross-checks."""
        nb = number_bits(self.N)
        open_bits = 2 * nb if self.open_g is not None else 0
        return sum(t.metered_bits() for t in self.trackers) + open_bits + 1


def alice_init(oracle: MatchingList, N: int, c=2) -> tuple[AlicePartition, int]:
    if oracle.N != N:
        raise InvalidConfig(f"oracle holds {oracle.N} pairs, expected {N}")
    alice = AlicePartition(oracle, c)
    return alice, alice.start()


def alice_move(state: AlicePartition, bob_number: int):
    return state.move(bob_number)


# --- Bob -------------------------------------------------------------------

def bob_mirror_move(last_alice_number: int, matching: MatchingList | Callable[[int], int]) -> int:
    partner = matching.partner if isinstance(matching, MatchingList) else matching
    return partner(last_alice_number)


def bob_uniform_move(declared: set[int], N: int, rng: random.Random) -> int:
    free = [x for x in range(1, 2 * N + 1) if x not in declared]
    if not free:
        raise Exhausted("no undeclared numbers left")
    return rng.choice(free)


def low_numbers(oracle: MatchingList) -> list[int]:
    """Sorted numbers of every block below the top one."""
    return sorted(x for q in range(1, oracle.N // 2 + 1) for x in oracle.pair(q)) if oracle.N > 1 else []


def bob_peeking_move(oracle: MatchingList, declared: set[int], alice_open_g: Optional[int], N: int) -> int:
    avoid = oracle.partner(alice_open_g) if alice_open_g is not None else None
    low = set(low_numbers(oracle))
    free_low = sorted(x for x in low if x not in declared)
    for x in free_low:
        if x != avoid:
            return x
    if free_low:
        return free_low[0]
    free_high = [x for x in range(1, 2 * N + 1) if x not in declared and x not in low]
    if not free_high:
        raise Exhausted("no undeclared numbers left")
    return min(free_high)


class MirrorBob:
    """Declares the partner of Alice's last number under a fixed matching."""

    name = "bob-mirror"

    def __init__(self, N: int, matching: Optional[MatchingList] = None):
        self.N = N
        self.matching = matching or fixed_matching(N)
        self.last: Optional[int] = None
        self.peak_bits = 0

    def observe(self, player_is_alice: bool, x: int) -> None:
        if player_is_alice:
            self.last = x
            self.peak_bits = max(self.peak_bits, self.metered_bits())

    def move(self) -> int:
        if self.last is None:
            raise ProtocolError("mirror bob moves only after alice")
        return bob_mirror_move(self.last, self.matching)

    def metered_bits(self) -> int:
        return number_bits(self.N) if self.last is not None else 0


class UniformPlayer:
    """Declares a uniformly random undeclared number.

    Keeps the undeclared pool in a list with swap-removal for O(1) moves;
    metered as a ``2N``-bit declared map.
    """

    def __init__(self, N: int, rng: random.Random, name: str = "bob-uniform"):
        self.N = N
        self.rng = rng
        self.name = name
        self.pool = list(range(1, 2 * N + 1))
        self.pos = list(range(-1, 2 * N))
        self.peak_bits = 0

    def observe(self, player_is_alice: bool, x: int) -> None:
        i = self.pos[x]
        if i < 0:
            return
        last = self.pool.pop()
        if last != x:
            self.pool[i] = last
            self.pos[last] = i
        self.pos[x] = -1
        self.peak_bits = 2 * self.N

    def move(self) -> int:
        if not self.pool:
            raise Exhausted("no undeclared numbers left")
        return self.pool[self.rng.randrange(len(self.pool))]

    def metered_bits(self) -> int:
        return 2 * self.N if len(self.pool) < 2 * self.N else 0


class PeekingBob:
    """Adversary that reads the oracle and Alice's open number.

    Empties the lower blocks while dodging the partner of Alice's open
    number, then forces a generation step into the top block.
    """

    name = "bob-peeking"

    def __init__(self, oracle: MatchingList, alice: AlicePartition):
        self.oracle = oracle
        self.alice = alice
        self.N = oracle.N
        self.low = low_numbers(oracle)
        low = set(self.low)
        self.high = [x for x in range(1, 2 * self.N + 1) if x not in low]
        self.declared: set[int] = set()
        self._lo = 0
        self._hi = 0
        self.peak_bits = 0

    def observe(self, player_is_alice: bool, x: int) -> None:
        self.declared.add(x)
        self.peak_bits = self.metered_bits()

    def move(self) -> int:
        declared, low = self.declared, self.low
        while self._lo < len(low) and low[self._lo] in declared:
            self._lo += 1
        if self._lo < len(low):
            g = self.alice.open_g
            avoid = self.oracle.partner(g) if g is not None else None
            first = low[self._lo]
            if first != avoid:
                return first
            for j in range(self._lo + 1, len(low)):
                if low[j] not in declared:
                    return low[j]
            return first
        while self._hi < len(self.high) and self.high[self._hi] in declared:
            self._hi += 1
        if self._hi == len(self.high):
            raise Exhausted("no undeclared numbers left")
        return self.high[self._hi]

    def metered_bits(self) -> int:
        return 2 * self.N if self.declared else 0


def metered_bits(state) -> int:
    return state.metered_bits()


ALICE_STRATEGIES = ("alice-partition", "alice-uniform")
BOB_STRATEGIES = ("bob-mirror", "bob-uniform", "bob-peeking")
