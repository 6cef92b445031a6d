"""Streaming recovery of up to ``k`` missing numbers from power sums.

An offline set ``S`` is summarised by ``sum(x**i) mod p`` for
``i = 1..k``; the online stream ``S'`` (a subset of ``S`` seen once) is
summarised the same way. The differences are the power sums of the
missing set, which is unique and can be read back either by exhaustive
search or by Newton's identities plus root finding over ``GF(p)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional

import numpy as np

from .errors import DecodeFailure, InvalidParams, OutOfRange, ParamMismatch


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def select_prime(N: int) -> int:
    """Smallest prime ``p`` with ``2N < p < 4N``."""
    if N < 1:
        raise InvalidParams(f"N must be >= 1, got {N}")
    p = 2 * N + 1
    while not is_prime(p):
        p += 1
    assert p < 4 * N
    return p


def number_bits(N: int) -> int:
    """Bits to store one number of ``[1, 2N]`` (or a counter up to ``2N``)."""
    return (2 * N).bit_length()


@dataclass(frozen=True)
class SketchParams:
    N: int
    s: int
    k: int
    p: int

    def __post_init__(self):
        if not 1 <= self.k <= self.s <= 2 * self.N:
            raise InvalidParams(f"need 1 <= k <= s <= 2N, got k={self.k}, s={self.s}, N={self.N}")
        if not is_prime(self.p) or self.p <= 2 * self.N:
            raise InvalidParams(f"p={self.p} must be a prime above 2N={2 * self.N}")

    @property
    def residue_bits(self) -> int:
        return (self.p - 1).bit_length()  # ceil(log2 p)


@dataclass
class PowerSumSketch:
    params: SketchParams
    sums: list[int] = field(default_factory=list)
    count: int = 0

    def __post_init__(self):
        if not self.sums:
            self.sums = [0] * self.params.k
        if len(self.sums) != self.params.k:
            raise InvalidParams("sketch must hold exactly k residues")

    def update(self, y: int) -> "PowerSumSketch":
        """Absorb one streamed value in place."""
        N, p = self.params.N, self.params.p
        if not 1 <= y <= 2 * N:
            raise OutOfRange(f"{y} not in [1, {2 * N}]")
        pw = 1
        self.sums = [(s + (pw := pw * y % p)) % p for s in self.sums]
        self.count += 1
        return self

    def update_pair(self, y: int, z: int) -> "PowerSumSketch":
        """Absorb two streamed values in one pass over the residues."""
        N, p = self.params.N, self.params.p
        if not (1 <= y <= 2 * N and 1 <= z <= 2 * N):
            raise OutOfRange(f"{y} or {z} not in [1, {2 * N}]")
        a = b = 1
        self.sums = [(s + (a := a * y % p) + (b := b * z % p)) % p for s in self.sums]
        self.count += 2
        return self

    def copy(self) -> "PowerSumSketch":
        return PowerSumSketch(self.params, list(self.sums), self.count)

    def metered_bits(self) -> int:
        return self.params.k * self.params.residue_bits + number_bits(self.params.N)


def empty_sketch(params: SketchParams) -> PowerSumSketch:
    return PowerSumSketch(params)


def offline_sums(S: Iterable[int], k: int, p: int, N: Optional[int] = None) -> PowerSumSketch:
    """Power sums of the whole offline set.

    ``N`` defaults to the smallest universe ``[1, 2N]`` containing ``S``.
    """
    S = list(S)
    if not S:
        raise InvalidParams("offline set must be non-empty")
    if len(set(S)) != len(S):
        raise InvalidParams("offline set has repeated elements")
    if N is None:
        N = (max(S) + 1) // 2
    if min(S) < 1 or max(S) > 2 * N:
        raise InvalidParams(f"offline set not inside [1, {2 * N}]")
    sketch = PowerSumSketch(SketchParams(N, len(S), k, p))
    if p >= 2**31:
        for x in S:
            sketch.update(x)
        return sketch
    # offline access is unrestricted, so sum all elements at once per power
    xs = np.asarray(S, dtype=np.int64)
    pw = np.ones_like(xs)
    for i in range(k):
        pw = pw * xs % p
        sketch.sums[i] = int(pw.sum() % p)
    sketch.count = len(S)
    return sketch


def stream_update(sketch: PowerSumSketch, y: int) -> PowerSumSketch:
    """Pure version of :meth:`PowerSumSketch.update`."""
    return sketch.copy().update(y)


def _difference_sums(offline: PowerSumSketch, online: PowerSumSketch) -> tuple[int, list[int]]:
    if offline.params != online.params:
        raise ParamMismatch(f"{offline.params} != {online.params}")
    missing = offline.count - online.count
    if not 0 <= missing <= offline.params.k:
        raise DecodeFailure(f"{missing} missing numbers, budget is {offline.params.k}")
    p = offline.params.p
    return missing, [(a - b) % p for a, b in zip(offline.sums, online.sums)]


def _matches(T: Iterable[int], diff: list[int], p: int) -> bool:
    T = list(T)
    if p < 2**31 and len(T) > 1:
        xs = np.asarray(T, dtype=np.int64)
        pw = np.ones_like(xs)
        for d in diff:
            pw = pw * xs % p
            if int(pw.sum() % p) != d:
                return False
        return True
    acc = [0] * len(diff)
    for z in T:
        pw = z
        for i in range(len(acc)):
            acc[i] = (acc[i] + pw) % p
            pw = pw * z % p
    return acc == diff


def elementary_from_power_sums(power_sums: list[int], p: int) -> list[int]:
    """Newton's identities over GF(p); returns ``e_0 .. e_m``.

    ``j e_j = sum_{i=1..j} (-1)**(i-1) e_{j-i} P_i``; needs ``m < p``.
    """
    e = [1]
    for j in range(1, len(power_sums) + 1):
        acc = 0
        for i in range(1, j + 1):
            term = e[j - i] * power_sums[i - 1]
            acc += term if i % 2 else -term
        e.append(acc % p * pow(j, -1, p) % p)
    return e


def _roots_in(S: list[int], coeffs: list[int], p: int) -> list[int]:
    """Members of ``S`` where the polynomial (highest degree first) vanishes."""
    if p < 2**31:
        xs = np.asarray(S, dtype=np.int64)
        acc = np.zeros_like(xs)
        for a in coeffs:
            acc = (acc * xs + a) % p
        return xs[acc == 0].tolist()
    roots = []
    for x in S:
        acc = 0
        for a in coeffs:
            acc = (acc * x + a) % p
        if acc == 0:
            roots.append(x)
    return roots


def recover_newton(offline: PowerSumSketch, online: PowerSumSketch, S: Iterable[int]) -> set[int]:
    """Missing set ``S \\ S'`` via Newton's identities and root finding.

    The candidate set is checked against all ``k`` residues, so a stream
    that was not a subset of ``S`` raises :class:`DecodeFailure` rather
    than yielding a wrong answer.
    """
    m, diff = _difference_sums(offline, online)
    if m == 0:
        if any(diff):
            raise DecodeFailure("counts agree but power sums differ")
        return set()
    p = offline.params.p
    e = elementary_from_power_sums(diff[:m], p)
    coeffs = [e[j] if j % 2 == 0 else (-e[j]) % p for j in range(m + 1)]
    roots = _roots_in(list(S), coeffs, p)
    if len(roots) != m or not _matches(roots, diff, p):
        raise DecodeFailure(f"found {len(roots)} roots for {m} missing numbers")
    return set(roots)


def recover_bruteforce(offline: PowerSumSketch, online: PowerSumSketch, S: Iterable[int]) -> set[int]:
    """Missing set by trying every subset of the right size. Small ``S`` only."""
    m, diff = _difference_sums(offline, online)
    p = offline.params.p
    for T in combinations(sorted(S), m):
        if _matches(T, diff, p):
            return set(T)
    raise DecodeFailure(f"no {m}-subset of S matches the power sums")
