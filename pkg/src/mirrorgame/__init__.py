"""Mirror game simulator with a memory-metered low-space Alice."""
from .errors import (
    DecodeFailure,
    Exhausted,
    GameOver,
    IncompleteCoverage,
    InvalidConfig,
    InvalidParams,
    MirrorGameError,
    OutOfRange,
    ParamMismatch,
    ProtocolError,
    TooLarge,
    WrongTurn,
)
from .game import GameConfig, GameState, GameTranscript, Outcome, Player, apply_declaration, new_game
from .harness import CampaignConfig, measure_memory, play_match, run_montecarlo, run_twobin
from .missing import (
    PowerSumSketch,
    SketchParams,
    offline_sums,
    recover_bruteforce,
    recover_newton,
    select_prime,
    stream_update,
)
from .oracle import (
    MatchingList,
    RandomBitString,
    decode_random_string,
    generate_list,
    locate,
    query_pair,
    query_partner,
)
from .strategies import Abort, AlicePartition, MirrorBob, PeekingBob, UniformPlayer, metered_bits
from .twobin import (
    TwoBinConfig,
    TwoBinResult,
    Variant,
    bound_margin,
    enumerate_prob,
    exact_tail_prob,
    simulate_two_bin,
)

__version__ = "0.1.0"
