"""Tie and abort rates of alice-partition against uniform Bob.

    python scripts/tie_campaign.py --n 64,256,1024 --trials 500 --c 2 4
"""
import argparse
from fractions import Fraction

from mirrorgame.harness import CampaignConfig, run_montecarlo


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", default="64,256,1024")
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--c", type=Fraction, nargs="+", default=[Fraction(2), Fraction(4)])
    ap.add_argument("--bob", default="bob-uniform")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    Ns = [int(v) for v in args.n.split(",")]
    print(f"{'c':>4} {'N':>6} {'k':>4} {'ties':>7} {'aborts':>6} {'abort rate':>10} "
          f"{'bound':>10} {'1/N':>9} {'peak bits':>9}")
    for c in args.c:
        rep = run_montecarlo(CampaignConfig(N=Ns, c=c, bob_strategy=args.bob, trials=args.trials,
                                            master_seed=args.seed, worker_count=args.workers))
        for r in rep.per_n:
            print(f"{str(c):>4} {r['N']:>6} {r['k']:>4} {r['ties']:>7} {r['aborts']:>6} "
                  f"{r['abort_rate']:>10.5f} {r['predicted_abort_bound']:>10.3g} {1 / r['N']:>9.3g} "
                  f"{r['peak_alice_bits_max']:>9}")


if __name__ == "__main__":
    main()
