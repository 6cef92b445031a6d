"""Exit criteria. Run with ``pytest tests/test_acceptance.py`` for the summary."""
import math
import random
import time
from fractions import Fraction

from mirrorgame.cli import main
from mirrorgame.game import Outcome
from mirrorgame.harness import CampaignConfig, mix, play_match, run_montecarlo
from mirrorgame.missing import (
    PowerSumSketch, number_bits, offline_sums, recover_bruteforce, recover_newton, select_prime,
)
from mirrorgame.twobin import (
    TwoBinConfig, bob_starts_exact, enumerate_prob, exact_tail_prob, simulate_two_bin,
)


def sketch_instance(rng, max_n, max_s, max_k):
    N = rng.randint(2, max_n)
    s = rng.randint(2, min(2 * N, max_s))
    S = rng.sample(range(1, 2 * N + 1), s)
    k = rng.randint(1, min(max_k, s))
    missing = set(rng.sample(S, rng.randint(0, k)))
    off = offline_sums(S, k, select_prime(N), N)
    on = PowerSumSketch(off.params)
    stream = [x for x in S if x not in missing]
    rng.shuffle(stream)
    for y in stream:
        on.update(y)
    return S, stream, off, on


def test_c01_newton_equals_set_difference(report):
    rng = random.Random(101)
    start = time.perf_counter()
    agree = 0
    for _ in range(1000):
        S, stream, off, on = sketch_instance(rng, 128, 256, 12)
        agree += recover_newton(off, on, S) == set(S) - set(stream)
    elapsed = time.perf_counter() - start
    ok = agree == 1000 and elapsed < 10
    report(1, ok, f"newton == set difference on {agree}/1000 instances in {elapsed:.2f}s (< 10s)")
    assert ok


def test_c02_decoders_agree(report):
    rng = random.Random(202)
    agree = 0
    for _ in range(500):
        S, stream, off, on = sketch_instance(rng, 8, 16, 4)
        agree += recover_newton(off, on, S) == recover_bruteforce(off, on, S) == set(S) - set(stream)
    report(2, agree == 500, f"newton == brute force on {agree}/500 instances")
    assert agree == 500


def test_c03_closed_form_vs_enumeration(report):
    mismatches = [(m, t) for m in (2, 4) for t in range(2 * m)
                  if enumerate_prob(m, t, "bob") != bob_starts_exact(m, t)]
    spot = exact_tail_prob(2, 2) == Fraction(1, 6) and exact_tail_prob(8, 4) == Fraction(1, 26)
    ok = not mismatches and spot
    report(3, ok, f"enumeration == closed form for m in (2, 4), mismatches={mismatches}; "
                  f"tail(2,2)=1/6 and tail(8,4)=1/26: {spot}")
    assert ok


def test_c04_two_bin_monte_carlo(report):
    start = time.perf_counter()
    trials = 100_000
    res = simulate_two_bin(TwoBinConfig(16, 7, "bob", trials, seed=404))
    target = 1 / 26
    sigma = math.sqrt(target * (1 - target) / trials)
    close = abs(res.estimate - target) <= 3 * sigma
    rows = []
    ordered = True
    for i, (m, t) in enumerate([(8, 3), (16, 7), (32, 9)]):
        a = simulate_two_bin(TwoBinConfig(m, t, "alice", trials, seed=410 + i))
        b = simulate_two_bin(TwoBinConfig(m, t, "bob", trials, seed=420 + i))
        slack = 3 * math.sqrt(a.sigma**2 + b.sigma**2)
        ordered &= a.estimate <= b.estimate + slack
        rows.append(f"({m},{t}) alice={a.estimate:.4f} bob={b.estimate:.4f}")
    elapsed = time.perf_counter() - start
    ok = close and ordered and elapsed < 60
    report(4, ok, f"bob-starts m=16 t=7: {res.estimate:.5f} vs 1/26={target:.5f} (3sigma={3 * sigma:.5f}); "
                  + "; ".join(rows) + f"; {elapsed:.1f}s (< 60s)")
    assert ok


def test_c05_tail_bound(report):
    worst = max(exact_tail_prob(mp, r) * 2**r for mp in range(1, 65) for r in range(1, mp + 1))
    ok = worst <= 1
    report(5, ok, f"max over m'<=64, r<=m' of tail * 2^r = {float(worst):.4f} (<= 1)")
    assert ok


def test_c06_tie_probability(report):
    start = time.perf_counter()
    strict = run_montecarlo(CampaignConfig(N=[1024], c=4, bob_strategy="bob-uniform",
                                           trials=2000, master_seed=606)).per_n[0]
    loose = run_montecarlo(CampaignConfig(N=[1024], c=2, bob_strategy="bob-uniform",
                                          trials=2000, master_seed=607)).per_n[0]
    elapsed = time.perf_counter() - start
    bound = loose["predicted_abort_bound"]
    limit = bound + 3 * math.sqrt(bound * (1 - bound) / loose["trials"])
    ok = strict["ties"] >= 1999 and loose["abort_rate"] <= limit and elapsed < 120
    report(6, ok, f"c=4: {strict['ties']}/2000 ties (>= 1999); c=2: abort rate "
                  f"{loose['abort_rate']:.4f} <= {limit:.4f} (bound {bound:.4f} + 3sigma); {elapsed:.1f}s (< 120s)")
    assert ok


def test_c07_space(report):
    Ns = [2**6, 2**8, 2**10, 2**12, 2**14]
    peaks = {}
    bob_ok = True
    for N in Ns:
        peaks[N] = max(play_match("alice-partition", "bob-uniform", N, 2, mix(707, t)).alice_bits
                       for t in range(50))
        bob = play_match("alice-partition", "bob-mirror", N, 2, mix(708, N)).bob_bits
        bob_ok &= bob <= 2 * math.ceil(math.log2(2 * N + 1))
    C = 2 * peaks[2**6] / 6**3
    within = all(peaks[N] <= C * math.log2(N) ** 3 for N in Ns)
    growth = peaks[2**14] / peaks[2**6]
    ok = bob_ok and within and growth <= 2 * (14 / 6) ** 3
    report(7, ok, f"mirror bob within 2*ceil(log2(2N+1)): {bob_ok}; alice peaks {peaks}; "
                  f"C={C:.2f}, all peak <= C(log2 N)^3: {within}; growth {growth:.2f} <= {2 * (14 / 6) ** 3:.2f}")
    assert ok


def test_c08_peeking_forces_abort(report):
    counts = {}
    for N in (256, 1024):
        counts[N] = sum(play_match("alice-partition", "bob-peeking", N, 2, mix(808, t)).abort_flag
                        for t in range(100))
    ok = all(v == 100 for v in counts.values())
    report(8, ok, f"aborts out of 100 games against bob-peeking: {counts}")
    assert ok


def test_c09_mirror_bob_safety(report):
    losses = 0
    Ns = [2, 4, 8, 16, 32, 64, 128]
    for t in range(1000):
        m = play_match("alice-uniform", "bob-mirror", Ns[t % len(Ns)], 2, mix(909, t))
        losses += m.outcome is Outcome.ALICE_WINS
        assert m.outcome is Outcome.TIE
        assert m.bob_bits <= 2 * number_bits(Ns[t % len(Ns)])
    report(9, losses == 0, f"mirror bob losses against 1000 random legal opponents: {losses}")
    assert losses == 0


def test_c10_determinism(report, tmp_path):
    outs = []
    for workers in (1, 8):
        path = tmp_path / f"w{workers}.json"
        assert main(["mc", "--n", "64,256", "--trials", "40", "--bob", "bob-uniform", "--c", "2",
                     "--seed", "1010", "--out", str(path), "--format", "json",
                     "--workers", str(workers)]) == 0
        outs.append(path.read_bytes())
    ok = outs[0] == outs[1]
    report(10, ok, f"mc JSON with 1 and 8 workers byte-identical: {ok} ({len(outs[0])} bytes)")
    assert ok
