"""Referee for the mirror game.

Two players alternate declaring numbers from ``[1, 2N]``, Alice first.
Declaring a number twice loses on the spot; declaring all ``2N`` numbers
without a repeat is a tie. The referee keeps the full declared set; only
the players' own state is ever metered.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import GameOver, InvalidConfig, OutOfRange, WrongTurn


class Player(enum.Enum):
    ALICE = "A"
    BOB = "B"

    @property
    def other(self) -> "Player":
        return Player.BOB if self is Player.ALICE else Player.ALICE


class Outcome(enum.Enum):
    ONGOING = "Ongoing"
    ALICE_WINS = "AliceWins"
    BOB_WINS = "BobWins"
    TIE = "Tie"


def _wins(player: Player) -> Outcome:
    return Outcome.ALICE_WINS if player is Player.ALICE else Outcome.BOB_WINS


@dataclass(frozen=True)
class GameConfig:
    N: int
    c: Fraction = Fraction(2)
    master_seed: int = 0

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N < 1:
            raise InvalidConfig(f"N must be a positive integer, got {self.N!r}")
        c = Fraction(self.c)
        if c <= 0:
            raise InvalidConfig(f"c must be positive, got {self.c!r}")
        object.__setattr__(self, "c", c)
        if not 0 <= self.master_seed < 2**64:
            raise InvalidConfig("master_seed must fit in 64 unsigned bits")


@dataclass
class GameTranscript:
    moves: list[tuple[Player, int]] = field(default_factory=list)
    outcome: Outcome = Outcome.ONGOING
    abort_reason: Optional[str] = None

    def dumps(self) -> str:
        lines = [f"{p.value} {x}" for p, x in self.moves]
        tail = f"OUTCOME {self.outcome.value}"
        if self.abort_reason is not None:
            tail += " abort"
        lines.append(tail)
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "GameTranscript":
        moves = []
        outcome = None
        aborted = False
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            head, _, rest = line.partition(" ")
            if head == "OUTCOME":
                parts = rest.split()
                outcome = Outcome(parts[0])
                aborted = parts[1:] == ["abort"]
            else:
                moves.append((Player(head), int(rest)))
        if outcome is None:
            raise ValueError("transcript has no OUTCOME line")
        return cls(moves, outcome, "abort" if aborted else None)


@dataclass
class GameState:
    config: GameConfig
    declared: set[int] = field(default_factory=set)
    mover: Player = Player.ALICE
    outcome: Outcome = Outcome.ONGOING
    abort_flag: bool = False
    transcript: GameTranscript = field(default_factory=GameTranscript)

    def __post_init__(self):
        self.universe = 2 * self.config.N

    @property
    def over(self) -> bool:
        return self.outcome is not Outcome.ONGOING

    def declare(self, player: Player, x: int) -> "GameState":
        """Apply one declaration in place and return the state."""
        if self.outcome is not Outcome.ONGOING:
            raise GameOver(f"game already ended: {self.outcome.value}")
        if player is not self.mover:
            raise WrongTurn(f"it is {self.mover.name}'s turn, not {player.name}'s")
        size = self.universe
        if not 1 <= x <= size:
            raise OutOfRange(f"{x} not in [1, {size}]")
        self.transcript.moves.append((player, x))
        declared = self.declared
        if x in declared:
            self.outcome = _wins(player.other)
        else:
            declared.add(x)
            if len(declared) == size:
                self.outcome = Outcome.TIE
            else:
                self.mover = Player.BOB if player is Player.ALICE else Player.ALICE
        self.transcript.outcome = self.outcome
        return self

    def alice_aborts(self, reason: str = "abort") -> "GameState":
        """Record Alice's forfeit: Bob wins with the abort flag set."""
        if self.outcome is not Outcome.ONGOING:
            raise GameOver(f"game already ended: {self.outcome.value}")
        self.outcome = Outcome.BOB_WINS
        self.abort_flag = True
        self.transcript.outcome = self.outcome
        self.transcript.abort_reason = reason
        return self


def new_game(config: GameConfig) -> GameState:
    return GameState(config)


def apply_declaration(state: GameState, player: Player, x: int) -> GameState:
    return state.declare(player, x)
