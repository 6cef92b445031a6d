"""Matches, Monte Carlo campaigns, memory measurements and the REPL."""
from __future__ import annotations

import csv
import io
import json
import logging
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import InvalidConfig
from .game import GameConfig, GameTranscript, Outcome, Player, new_game
from .missing import number_bits
from .oracle import MatchingList, generate_list
from .strategies import (
    Abort,
    AlicePartition,
    MirrorBob,
    PeekingBob,
    UniformPlayer,
    budget,
)
from .twobin import (
    TwoBinConfig,
    TwoBinResult,
    Variant,
    bob_starts_exact,
    enumerate_prob,
    predicted_abort_bound,
    simulate_two_bin,
    union_bound_report,
)

log = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1


def mix(master_seed: int, index: int) -> int:
    """splitmix64 finaliser applied to ``master_seed + (index + 1) * golden``."""
    z = (master_seed + (index + 1) * 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def is_power_of_two(N: int) -> bool:
    return N >= 1 and not N & (N - 1)


class UniformAlice:
    """Alice declaring uniformly random undeclared numbers."""

    name = "alice-uniform"

    def __init__(self, N: int, rng: random.Random):
        self.player = UniformPlayer(N, rng, self.name)
        self.open_g = None

    def start(self) -> int:
        x = self.player.move()
        self.player.observe(True, x)
        return x

    def move(self, bob_number: int) -> int:
        self.player.observe(False, bob_number)
        return self.start()

    @property
    def peak_bits(self) -> int:
        return self.player.peak_bits

    def metered_bits(self) -> int:
        return self.player.metered_bits()


def make_alice(name: str, oracle: MatchingList, c, rng: random.Random):
    if name == "alice-partition":
        return AlicePartition(oracle, c)
    if name == "alice-uniform":
        return UniformAlice(oracle.N, rng)
    raise InvalidConfig(f"unknown alice strategy {name!r}")


def make_bob(name: str, oracle: MatchingList, alice, rng: random.Random, mirror: str = "fixed"):
    N = oracle.N
    if name == "bob-mirror":
        if mirror not in ("fixed", "oracle"):
            raise InvalidConfig(f"mirror matching must be 'fixed' or 'oracle', got {mirror!r}")
        return MirrorBob(N, oracle if mirror == "oracle" else None)
    if name == "bob-uniform":
        return UniformPlayer(N, rng)
    if name == "bob-peeking":
        if not isinstance(alice, AlicePartition):
            raise InvalidConfig("bob-peeking only plays against alice-partition")
        return PeekingBob(oracle, alice)
    raise InvalidConfig(f"unknown bob strategy {name!r}")


@dataclass
class Match:
    transcript: GameTranscript
    abort_flag: bool
    alice_bits: int
    bob_bits: int
    k: int

    @property
    def outcome(self) -> Outcome:
        return self.transcript.outcome


def play_match(alice_name: str, bob_name: str, N: int, c=2, seed: int = 0,
               mirror: str = "fixed") -> Match:
    """One full game on a fresh oracle list drawn from ``seed``."""
    if not is_power_of_two(N):
        raise InvalidConfig(f"N must be a power of two, got {N}")
    rng = random.Random(seed)
    oracle = generate_list(N, rng)
    state = new_game(GameConfig(N, c, seed & MASK64))
    alice = make_alice(alice_name, oracle, c, rng)
    bob = make_bob(bob_name, oracle, alice, rng, mirror)
    declare = state.declare
    x = alice.start()
    declare(Player.ALICE, x)
    bob.observe(True, x)
    while True:
        y = bob.move()
        declare(Player.BOB, y)
        if state.outcome is not Outcome.ONGOING:
            break
        bob.observe(False, y)
        x = alice.move(y)
        if isinstance(x, Abort):
            state.alice_aborts(x.reason)
            break
        declare(Player.ALICE, x)
        if state.outcome is not Outcome.ONGOING:
            break
        bob.observe(True, x)
    return Match(state.transcript, state.abort_flag, alice.peak_bits, bob.peak_bits, budget(N, c))


# --- Monte Carlo -----------------------------------------------------------

@dataclass(frozen=True)
class CampaignConfig:
    N: Sequence[int]
    c: Fraction = Fraction(2)
    bob_strategy: str = "bob-uniform"
    trials: int = 100
    master_seed: int = 0
    worker_count: int = 1
    output: Optional[str] = None
    format: str = "json"
    alice_strategy: str = "alice-partition"

    def __post_init__(self):
        object.__setattr__(self, "N", tuple(self.N))
        object.__setattr__(self, "c", Fraction(self.c))
        if self.trials < 1:
            raise InvalidConfig("trials must be >= 1")
        if not self.N:
            raise InvalidConfig("at least one N is required")
        for N in self.N:
            if not is_power_of_two(N) or N < 2:
                raise InvalidConfig(f"every N must be a power of two >= 2, got {N}")
        if self.c <= 0:
            raise InvalidConfig("c must be positive")
        if self.worker_count < 1:
            raise InvalidConfig("worker_count must be >= 1")
        if self.format not in ("json", "csv"):
            raise InvalidConfig(f"format must be json or csv, got {self.format!r}")


def _trial(args) -> tuple[str, bool, int, int]:
    alice_name, bob_name, N, c, seed = args
    m = play_match(alice_name, bob_name, N, c, seed)
    return m.outcome.value, m.abort_flag, m.alice_bits, m.bob_bits


def _run_trials(jobs: list, workers: int) -> list:
    if workers == 1:
        return [_trial(j) for j in jobs]
    chunk = max(1, len(jobs) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_trial, jobs, chunksize=chunk))


@dataclass
class StatsReport:
    config: dict
    per_n: list[dict] = field(default_factory=list)
    elapsed: float = 0.0

    def to_json(self) -> str:
        # wall time is left out so that equal configs give equal bytes
        return json.dumps({"config": self.config, "per_n": self.per_n}, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(self.per_n[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.per_n)
        return buf.getvalue()


def run_montecarlo(config: CampaignConfig) -> StatsReport:
    start = time.perf_counter()
    report = StatsReport(config={
        "N": list(config.N),
        "c": str(config.c),
        "alice_strategy": config.alice_strategy,
        "bob_strategy": config.bob_strategy,
        "trials": config.trials,
        "master_seed": config.master_seed,
    })
    for N in config.N:
        jobs = [(config.alice_strategy, config.bob_strategy, N, config.c, mix(config.master_seed, t))
                for t in range(config.trials)]
        results = _run_trials(jobs, config.worker_count)
        k = budget(N, config.c)
        ties = sum(r[0] == Outcome.TIE.value for r in results)
        alice_wins = sum(r[0] == Outcome.ALICE_WINS.value for r in results)
        bob_wins = sum(r[0] == Outcome.BOB_WINS.value for r in results)
        aborts = sum(r[1] for r in results)
        alice_bits = [r[2] for r in results]
        predicted = predicted_abort_bound(N, k)
        report.per_n.append({
            "N": N,
            "n": N.bit_length() - 1,
            "k": k,
            "trials": config.trials,
            "ties": ties,
            "alice_wins": alice_wins,
            "bob_wins": bob_wins,
            "aborts": aborts,
            "tie_rate": ties / config.trials,
            "abort_rate": aborts / config.trials,
            "tie_target": 1 - 1 / N,
            "predicted_abort_bound": float(predicted),
            "paper_union_bound": (N.bit_length() - 1) / 2**k,
            "peak_alice_bits_max": max(alice_bits),
            "peak_alice_bits_mean": sum(alice_bits) / len(alice_bits),
            "peak_bob_bits": max(r[3] for r in results),
        })
        log.info("N=%d: %d/%d ties, %d aborts", N, ties, config.trials, aborts)
    report.elapsed = time.perf_counter() - start
    if config.output:
        text = report.to_json() if config.format == "json" else report.to_csv()
        with open(config.output, "w") as fh:
            fh.write(text)
    return report


# --- memory growth ---------------------------------------------------------

@dataclass
class MemoryReport:
    rows: list[dict]
    fitted_constant: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2) + "\n"


def measure_memory(N_list: Sequence[int], c=2, trials: int = 10, seed: int = 0,
                   bob: str = "bob-uniform") -> MemoryReport:
    """Peak metered Alice bits per ``N`` against ``(log2 N)**3``."""
    if not N_list:
        raise InvalidConfig("at least one N is required")
    if trials < 1:
        raise InvalidConfig("trials must be >= 1")
    rows = []
    for N in N_list:
        if not is_power_of_two(N) or N < 2:
            raise InvalidConfig(f"every N must be a power of two >= 2, got {N}")
        peaks = [play_match("alice-partition", bob, N, c, mix(seed, t)).alice_bits
                 for t in range(trials)]
        mirror = play_match("alice-partition", "bob-mirror", N, c, mix(seed, trials))
        cube = (N.bit_length() - 1) ** 3
        rows.append({
            "N": N,
            "k": budget(N, c),
            "alice_peak_max": max(peaks),
            "alice_peak_mean": sum(peaks) / len(peaks),
            "log2N_cubed": cube,
            "ratio": max(peaks) / cube,
            "mirror_bob_peak": mirror.bob_bits,
            "mirror_bob_limit": 2 * number_bits(N),
        })
    num = sum(r["alice_peak_max"] * r["log2N_cubed"] for r in rows)
    den = sum(r["log2N_cubed"] ** 2 for r in rows)
    return MemoryReport(rows, num / den)


# --- two-bin ---------------------------------------------------------------

def run_twobin(config: TwoBinConfig, exact: bool = False, enumerate: bool = False) -> dict:
    """Simulation row ``(m, t, variant, trials, estimate, exact, margin)``."""
    res: TwoBinResult = simulate_two_bin(config)
    row = {
        "m": config.m,
        "t": config.t,
        "variant": config.variant.value,
        "trials": config.trials,
        "estimate": res.estimate,
        "halfwidth": res.confidence_halfwidth,
        "exact": None,
        "margin": None,
    }
    value = None
    if enumerate:
        value = enumerate_prob(config.m, config.t, config.variant)
    elif exact and config.variant is Variant.BOB_STARTS and config.m % 2 == 0:
        value = bob_starts_exact(config.m, config.t)
    if value is not None:
        row["exact"] = str(value)
        r = config.t // 2 + 1
        if config.variant is Variant.BOB_STARTS and config.m % 2 == 0 and r <= config.m // 2:
            row["margin"] = str(Fraction(1, 2**r) - value)
    return row


# --- interactive play ------------------------------------------------------

def interactive_repl(N: int, c=2, seed: int = 0,
                     input_fn: Callable[[str], str] = input, out=None) -> int:
    """A human plays Bob against ``alice-partition`` in the terminal."""
    out = out or sys.stdout

    def say(msg: str) -> None:
        print(msg, file=out)

    if not is_power_of_two(N) or N < 2:
        say(f"N must be a power of two >= 2, got {N}")
        return 2
    rng = random.Random(seed)
    oracle = generate_list(N, rng)
    state = new_game(GameConfig(N, c, seed & MASK64))
    alice = AlicePartition(oracle, c)
    say(f"mirror game over [1, {2 * N}]; you are Bob. Commands: show, quit")
    x = alice.start()
    state.declare(Player.ALICE, x)
    say(f"Alice declares {x}")
    while not state.over:
        try:
            line = input_fn("bob> ").strip()
        except EOFError:
            say("input closed")
            return 1
        if line == "quit":
            say("bye")
            return 0
        if line == "show":
            say("declared: " + " ".join(map(str, sorted(state.declared))))
            continue
        try:
            y = int(line)
        except ValueError:
            say(f"enter a number in [1, {2 * N}], 'show' or 'quit'")
            continue
        if not 1 <= y <= 2 * N:
            say(f"out of range: numbers run from 1 to {2 * N}")
            continue
        state.declare(Player.BOB, y)
        if state.outcome is Outcome.ALICE_WINS:
            say("you lose: repeated declaration")
            break
        if state.outcome is Outcome.TIE:
            break
        reply = alice.move(y)
        if isinstance(reply, Abort):
            state.alice_aborts(reply.reason)
            say(f"Alice aborts ({reply.reason}); you win")
            break
        state.declare(Player.ALICE, reply)
        say(f"Alice declares {reply}")
    if state.outcome is Outcome.TIE:
        say("*** tie: all numbers declared ***")
    say(f"outcome: {state.outcome.value}")
    return 0


__all__ = [
    "CampaignConfig", "Match", "MemoryReport", "StatsReport", "interactive_repl",
    "measure_memory", "mix", "play_match", "run_montecarlo", "run_twobin",
    "union_bound_report",
]
