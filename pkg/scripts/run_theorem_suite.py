"""Run the theorem suite and print one line per theorem with timing."""

from __future__ import annotations

import argparse
import time

from relfix.search import THEOREMS, verify_theorem


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-size", type=int, default=3)
    ap.add_argument("--min-size", type=int, default=0)
    ap.add_argument("--budget", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    total = time.perf_counter()
    for th in THEOREMS:
        t0 = time.perf_counter()
        r = verify_theorem(th, args.max_size, args.budget, args.seed, args.jobs, args.min_size)
        sizes = " ".join(f"n={n}:{c['mode'][0]}{c['examined']}" for n, c in r.counts.items())
        print(f"{r.name:45s} {r.verdict:9s} {sizes}  {time.perf_counter() - t0:6.2f}s")
        for v in r.violations:
            print(f"    {v['message']}")
    print(f"total {time.perf_counter() - total:.2f}s")


if __name__ == "__main__":
    main()
