"""Realize every admissible (n, p) up to a bound, replay each trace, and tabulate strategies."""
import argparse
import time
from collections import Counter

from skolemkit.seqcore import count_common, skolem, validate
from skolemkit.spectrum import RealizationTrace, necessary_spectrum, realize, replay


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=52)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    t0 = time.perf_counter()
    strategies, worst = Counter(), (0.0, None)
    for n in range(4, args.max_n + 1):
        if n % 4 not in (0, 1):
            continue
        for p in sorted(necessary_spectrum(n)):
            t = time.perf_counter()
            r = realize(n, p, seed=args.seed)
            dt = time.perf_counter() - t
            worst = max(worst, (dt, (n, p)))
            assert validate(r.first, skolem(n)).valid and validate(r.second, skolem(n)).valid
            assert count_common(r.first, r.second) == p
            assert replay(RealizationTrace.from_json(r.trace.to_json()))[:2] == (r.first, r.second)
            strategies[r.trace.strategy.value] += 1
        print(f"n={n} done, {time.perf_counter() - t0:.1f}s", flush=True)
    print("strategies:", dict(strategies.most_common()))
    print(f"slowest case {worst[1]}: {worst[0]:.2f}s; total {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
