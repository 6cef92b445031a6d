"""Two-bin processes bounding Alice's abort probability.

Bin A stands for the numbers of the blocks below ``P_i``, bin B for the
numbers of ``P_i``; both start with ``m`` balls. Each round Bob removes a
uniformly random ball and Alice removes another ball from the same bin
(from the other bin if that one is now empty). In the Alice-starts
variant Alice first removes one ball from A. The event of interest is
that B still holds more than ``t`` balls at the moment A runs empty.

With even ``m`` the Bob-starts rounds remove whole pairs in a uniformly
random order, so the event probability is the chance that the last
``t // 2 + 1`` of ``m`` pairs (``m / 2`` per bin) all belong to B.
"""
from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import InvalidConfig, InvalidParams, TooLarge


class Variant(enum.Enum):
    ALICE_STARTS = "alice"
    BOB_STARTS = "bob"


@dataclass(frozen=True)
class TwoBinConfig:
    m: int
    t: int
    variant: Variant = Variant.BOB_STARTS
    trials: int = 10_000
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.m < 1:
            raise InvalidConfig(f"m must be >= 1, got {self.m}")
        if not 0 <= self.t < 2 * self.m:
            raise InvalidConfig(f"t must lie in [0, {2 * self.m}), got {self.t}")
        if self.trials < 1:
            raise InvalidConfig("trials must be >= 1")


@dataclass(frozen=True)
class TwoBinResult:
    event_count: int
    trials: int
    exact: Optional[Fraction] = None

    @property
    def estimate(self) -> float:
        return self.event_count / self.trials

    @property
    def sigma(self) -> float:
        q = self.estimate
        return math.sqrt(q * (1 - q) / self.trials)

    @property
    def confidence_halfwidth(self) -> float:
        return 3 * self.sigma


def _run_once(m: int, t: int, alice_starts: bool, rng: random.Random) -> bool:
    a, b = m, m
    if alice_starts:
        a -= 1
        if a == 0:
            return b > t
    while True:
        # Bob's draw, then Alice's draw from the same bin (or the other one)
        if rng.randrange(a + b) < a:
            a -= 1
            if a == 0:
                return b > t
            a -= 1
            if a == 0:
                return b > t
        else:
            b -= 1
            if b:
                b -= 1
            else:
                a -= 1
                if a == 0:
                    return b > t


def simulate_two_bin(config: TwoBinConfig) -> TwoBinResult:
    rng = random.Random(config.seed)
    alice_starts = config.variant is Variant.ALICE_STARTS
    hits = sum(_run_once(config.m, config.t, alice_starts, rng) for _ in range(config.trials))
    return TwoBinResult(hits, config.trials)


def exact_tail_prob(pairs: int, r: int) -> Fraction:
    """Chance that the last ``r`` of ``2 * pairs`` shuffled items are all in B.

    Half of the items are in each bin: ``prod_{j<r} (pairs - j) / (2 pairs - j)``.
    """
    if pairs < 0 or not 0 <= r <= pairs:
        raise InvalidParams(f"need 0 <= r <= pairs, got pairs={pairs}, r={r}")
    out = Fraction(1)
    for j in range(r):
        out *= Fraction(pairs - j, 2 * pairs - j)
    return out


def bob_starts_exact(m: int, t: int) -> Fraction:
    """Closed-form Bob-starts event probability for even ``m``."""
    if m < 1 or m % 2:
        raise InvalidParams(f"closed form needs even m, got {m}")
    r = t // 2 + 1
    if r > m // 2:
        return Fraction(0)
    return exact_tail_prob(m // 2, r)


def enumerate_prob(m: int, t: int, variant) -> Fraction:
    """Exact event probability by walking the whole process tree."""
    variant = Variant(variant)
    if m > 6:
        raise TooLarge(f"enumeration is limited to m <= 6, got {m}")
    if m < 1 or not 0 <= t < 2 * m:
        raise InvalidParams(f"bad (m, t) = ({m}, {t})")

    @lru_cache(maxsize=None)
    def bob_turn(a: int, b: int) -> Fraction:
        total = Fraction(0)
        if a:
            total += Fraction(a, a + b) * alice_turn(a - 1, b, "A")
        if b:
            total += Fraction(b, a + b) * alice_turn(a, b - 1, "B")
        return total

    def alice_turn(a: int, b: int, last: str) -> Fraction:
        if a == 0:
            return Fraction(int(b > t))
        if last == "A" or b == 0:
            a -= 1
            if a == 0:
                return Fraction(int(b > t))
        else:
            b -= 1
        return bob_turn(a, b)

    if variant is Variant.ALICE_STARTS:
        if m == 1:
            return Fraction(int(m > t))
        return bob_turn(m - 1, m)
    return bob_turn(m, m)


def bound_margin(pairs: int, r: int) -> Fraction:
    """``2**-r`` minus the exact tail probability; never negative."""
    if not 1 <= r <= pairs:
        raise InvalidParams(f"need 1 <= r <= pairs, got pairs={pairs}, r={r}")
    return Fraction(1, 2**r) - exact_tail_prob(pairs, r)


# --- game mapping ----------------------------------------------------------

def block_event_prob(i: int, k: int) -> Fraction:
    """Bob-starts bound on block ``i`` still holding more than ``k`` numbers.

    Bins hold ``2**i`` numbers each: the lower blocks together and ``P_i``.
    """
    return bob_starts_exact(2**i, k)


def predicted_abort_bound(N: int, k: int) -> Fraction:
    """Union of the per-block Bob-starts bounds over blocks ``2..n``."""
    n = N.bit_length() - 1
    return sum((block_event_prob(i, k) for i in range(2, n + 1)), Fraction(0))


def union_bound_report(N: int, k: int) -> dict:
    """Both readings of the bin sizes, next to the ``n * 2**-k`` expression.

    ``numbers``: bins of ``2**i`` numbers, threshold ``k`` numbers.
    ``literal``: a permutation of ``2**(i+1)`` pair-items, last ``k+1`` in B.
    """
    n = N.bit_length() - 1
    numbers = predicted_abort_bound(N, k)
    literal = Fraction(0)
    for i in range(2, n + 1):
        if k + 1 <= 2**i:
            literal += exact_tail_prob(2**i, k + 1)
    paper = Fraction(n, 2**k)
    return {
        "N": N,
        "n": n,
        "k": k,
        "bound_numbers": float(numbers),
        "bound_literal": float(literal),
        "n_times_2_to_minus_k": float(paper),
        "target_abort": 1 / N,
        "numbers_within_paper_expr": numbers <= paper,
        "literal_within_paper_expr": literal <= paper,
    }
