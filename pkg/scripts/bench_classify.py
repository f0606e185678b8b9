"""Classify every relation of a given size and report property frequencies."""

from __future__ import annotations

import argparse
import time
from collections import Counter

from relfix.core import related_set_from_code
from relfix.props import classify


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=4)
    args = ap.parse_args()
    n = args.size
    t0 = time.perf_counter()
    freq: Counter[str] = Counter()
    total = 1 << (n * n)
    for code in range(total):
        freq.update(classify(related_set_from_code(n, code)))
    elapsed = time.perf_counter() - t0
    print(f"{total} relations of size {n} in {elapsed:.2f}s")
    for p, k in sorted(freq.items(), key=lambda kv: (-kv[1], kv[0])):
        print(f"  {p:22s} {k:7d}")


if __name__ == "__main__":
    main()
