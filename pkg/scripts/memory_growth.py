"""Peak metered Alice memory against (log2 N)^3."""
import argparse

from mirrorgame.harness import measure_memory


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", default="64,256,1024,4096,16384")
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--c", type=float, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rep = measure_memory([int(v) for v in args.n.split(",")], args.c, args.trials, args.seed)
    print(f"{'N':>6} {'k':>3} {'peak':>6} {'(log N)^3':>9} {'ratio':>6} {'mirror bob':>10}")
    for r in rep.rows:
        print(f"{r['N']:>6} {r['k']:>3} {r['alice_peak_max']:>6} {r['log2N_cubed']:>9} "
              f"{r['ratio']:>6.2f} {r['mirror_bob_peak']:>10}")
    print(f"least-squares constant: peak ~ {rep.fitted_constant:.2f} * (log2 N)^3")


if __name__ == "__main__":
    main()
