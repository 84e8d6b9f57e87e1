#!/usr/bin/env python3
"""Replay both worked examples and the small-ring sweeps, printing one line per part.

    python scripts/replay_examples.py [--jobs N] [--json out.json]
"""
import argparse
import json
import time

from ringbench.replay import dual6_theorem, example1, example2, oracle_equivalence, structure, theorem_instance


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--json", help="also write the full document here")
    args = ap.parse_args()

    parts = {
        "example2": example2,
        "example1": example1,
        "theorem_instance": lambda: theorem_instance(args.jobs),
        "oracle_equivalence": lambda: oracle_equivalence(args.jobs),
        "structure": lambda: structure(args.jobs),
        "dual6_theorem": lambda: dual6_theorem(args.jobs),
    }
    doc = {}
    for name, run in parts.items():
        t0 = time.perf_counter()
        doc[name] = run()
        print(f"{name:20s} {'pass' if doc[name]['pass'] else 'FAIL'}  {time.perf_counter() - t0:6.2f}s")

    for n, row in doc["example1"].items():
        if isinstance(row, dict):
            verdicts = ", ".join(f"{k}={'pass' if v['pass'] else 'fail ' + str(v['witness'])}" for k, v in row.items())
            print(f"  example1 {n}: {verdicts}")
    for line in doc["dual6_theorem"]["notes"]:
        print(f"  dual6: {line}")

    if args.json:
        with open(args.json, "w") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)


if __name__ == "__main__":
    main()
