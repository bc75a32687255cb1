"""Differential run of every engine against the grounding oracle.

    python scripts/fuzz_experiment.py --count 500 --seed 7

Prints one row per engine (agreement, model methods, time) and exits with
status 1 if any engine disagrees with the oracle or emits a rejected model.
"""

from __future__ import annotations

import argparse
import sys
import time
from collections import Counter, defaultdict

from instantia import ENGINES
from instantia.fuzz import FuzzConfig, corpus
from instantia.oracle import herbrand_oracle, verify_model
from instantia.results import Limits, Status


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--timeout", type=float, default=30.0)
    ap.add_argument("--max-clauses", type=int, default=6)
    ap.add_argument("--max-literals", type=int, default=3)
    args = ap.parse_args(argv)

    cfg = FuzzConfig(max_clauses=args.max_clauses, max_literals=args.max_literals)
    problems = corpus(args.count, args.seed, cfg)
    truth = [herbrand_oracle(cs).status for cs in problems]
    sat = sum(t is Status.SAT for t in truth)
    print(f"{args.count} problems, seed {args.seed}: {sat} satisfiable, {args.count - sat} unsatisfiable")

    bad = 0
    methods: dict[str, Counter] = defaultdict(Counter)
    print(f"{'engine':<14}{'agree':>7}{'wrong':>7}{'r/out':>7}{'secs':>8}  models")
    for name in sorted(ENGINES):
        agree = wrong = rout = 0
        t0 = time.perf_counter()
        for k, (cs, want) in enumerate(zip(problems, truth)):
            res = ENGINES[name](cs, Limits(timeout=args.timeout))
            if res.status is Status.RESOURCE_OUT:
                rout += 1
            elif res.status is not want:
                wrong += 1
                print(f"  problem {k}: {name} says {res.status}, oracle says {want}")
            elif res.model is not None and not verify_model(cs, res.model):
                wrong += 1
                print(f"  problem {k}: {name} model rejected")
            else:
                agree += 1
            if res.model is not None:
                methods[name][res.model.method] += 1
        wall = time.perf_counter() - t0
        bad += wrong + rout
        shown = ", ".join(f"{m}={n}" for m, n in sorted(methods[name].items()))
        print(f"{name:<14}{agree:>7}{wrong:>7}{rout:>7}{wall:>8.2f}  {shown}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
