"""Command line entry point: ``mirrorgame <play|mc|memory|twobin|decode>``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from .errors import MirrorGameError
from .harness import (
    CampaignConfig,
    interactive_repl,
    measure_memory,
    play_match,
    run_montecarlo,
    run_twobin,
)
from .oracle import RandomBitString, decode_random_string
from .twobin import TwoBinConfig


def _n_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mirrorgame", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("play", help="play one match")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bob", default="bob-uniform")
    p.add_argument("--alice", default="alice-partition")
    p.add_argument("--c", type=Fraction, default=Fraction(2))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--interactive", action="store_true", help="you play Bob")

    p = sub.add_parser("mc", help="Monte Carlo campaign")
    p.add_argument("--n", type=_n_list, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--bob", default="bob-uniform")
    p.add_argument("--c", type=Fraction, default=Fraction(2))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("memory", help="peak metered memory against (log2 N)^3")
    p.add_argument("--n", type=_n_list, required=True)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--c", type=Fraction, default=Fraction(2))
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("twobin", help="simulate a two-bin process")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--variant", choices=("alice", "bob"), default="bob")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--enumerate", action="store_true")

    p = sub.add_parser("decode", help="decode a random bit file into a pair list")
    p.add_argument("--bits", required=True)
    p.add_argument("--n", type=int, required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "play":
            if args.interactive:
                return interactive_repl(args.n, args.c, args.seed)
            match = play_match(args.alice, args.bob, args.n, args.c, args.seed)
            sys.stdout.write(match.transcript.dumps())
        elif args.command == "mc":
            config = CampaignConfig(N=args.n, c=args.c, bob_strategy=args.bob, trials=args.trials,
                                    master_seed=args.seed, worker_count=args.workers,
                                    output=args.out, format=args.format)
            report = run_montecarlo(config)
            if not args.out:
                sys.stdout.write(report.to_json() if args.format == "json" else report.to_csv())
            print(f"elapsed {report.elapsed:.2f}s", file=sys.stderr)
        elif args.command == "memory":
            sys.stdout.write(measure_memory(args.n, args.c, args.trials, args.seed).to_json())
        elif args.command == "twobin":
            config = TwoBinConfig(args.m, args.t, args.variant, args.trials, args.seed)
            print(json.dumps(run_twobin(config, exact=args.exact, enumerate=args.enumerate)))
        elif args.command == "decode":
            matching = decode_random_string(RandomBitString.from_file(args.bits), args.n)
            sys.stdout.write(matching.dumps())
    except (MirrorGameError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
