"""Search for the smallest counterexample to each conjecture in a model file."""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from relfix.search import find_counterexample
from relfix.textio import load_model

DEFAULT = Path(__file__).resolve().parent.parent / "models" / "paper.rel"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("file", nargs="?", default=str(DEFAULT))
    ap.add_argument("--max-size", type=int, default=4)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    model = load_model(args.file)
    for c in model.conjectures.values():
        t0 = time.perf_counter()
        r = find_counterexample(c, args.max_size, jobs=args.jobs)
        print(f"== {c.name}: {r.verdict} after {r.examined} instances ({time.perf_counter() - t0:.2f}s)")
        if r.instance is not None:
            print(r.instance.to_text())


if __name__ == "__main__":
    main()
