"""Two-bin processes: simulation vs exact values, and the union bound per N."""
import argparse

from mirrorgame.harness import run_twobin
from mirrorgame.strategies import budget
from mirrorgame.twobin import TwoBinConfig, union_bound_report


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=50_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print("m   t   variant  estimate   +-3sigma   exact")
    for m, t in [(4, 1), (6, 3), (8, 3), (16, 7), (32, 9), (64, 19)]:
        for variant in ("alice", "bob"):
            row = run_twobin(TwoBinConfig(m, t, variant, args.trials, args.seed),
                             exact=True, enumerate=m <= 6)
            print(f"{m:<3} {t:<3} {variant:<8} {row['estimate']:<10.5f} {row['halfwidth']:<10.5f} "
                  f"{row['exact'] or '-'}")
    print()
    print("N      c  k   bound(numbers)  bound(literal)  n*2^-k      1/N")
    for N in (64, 256, 1024, 4096, 16384):
        for c in (2, 4):
            r = union_bound_report(N, budget(N, c))
            print(f"{N:<6} {c}  {r['k']:<3} {r['bound_numbers']:<15.3g} {r['bound_literal']:<15.3g} "
                  f"{r['n_times_2_to_minus_k']:<11.3g} {r['target_abort']:.3g}")


if __name__ == "__main__":
    main()
