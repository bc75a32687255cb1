"""Time each engine on the bundled problems and on a harder random corpus.

    python scripts/benchmark.py
    python scripts/benchmark.py --count 100 --clauses 10 --literals 4

The random part uses larger clause sets than the default fuzz settings, so
it shows how the engines scale rather than checking correctness (the
oracle still labels each problem).
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time
from pathlib import Path

from instantia import ENGINES
from instantia.fuzz import FuzzConfig, corpus
from instantia.oracle import herbrand_oracle
from instantia.results import Limits, Status
from instantia.tptp import read_problem

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def bundled(timeout: float) -> None:
    # cluster.p is not function-free; hyper-linking keeps adding instances until the timeout
    names = sorted(ENGINES)
    print(f"{'problem':<12}" + "".join(f"{n:>24}" for n in names))
    for path in sorted(PROBLEMS.glob("*.p")):
        cells = []
        for name in names:
            t0 = time.perf_counter()
            res = ENGINES[name](read_problem(path).clauses, Limits(timeout=timeout, max_instances=2_000))
            cells.append(f"{res.status} {time.perf_counter() - t0:.3f}s")
        print(f"{path.stem:<12}" + "".join(f"{c:>24}" for c in cells))


def random_corpus(count: int, seed: int, clauses: int, literals: int, timeout: float) -> None:
    cfg = FuzzConfig(max_clauses=clauses, max_literals=literals)
    problems = corpus(count, seed, cfg)
    truth = [herbrand_oracle(cs).status for cs in problems]
    print(f"\n{count} random problems, <= {clauses} clauses of <= {literals} literals, seed {seed}")
    print(f"{'engine':<14}{'solved':>8}{'wrong':>7}{'median ms':>11}{'max ms':>9}")
    for name in sorted(ENGINES):
        times, solved, wrong = [], 0, 0
        for cs, want in zip(problems, truth):
            t0 = time.perf_counter()
            res = ENGINES[name](cs, Limits(timeout=timeout))
            times.append((time.perf_counter() - t0) * 1000)
            if res.status is Status.RESOURCE_OUT:
                continue
            solved += 1
            wrong += res.status is not want
        print(f"{name:<14}{solved:>8}{wrong:>7}{statistics.median(times):>11.2f}{max(times):>9.1f}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--seed", type=int, default=11)
    ap.add_argument("--clauses", type=int, default=10)
    ap.add_argument("--literals", type=int, default=4)
    ap.add_argument("--timeout", type=float, default=10.0)
    args = ap.parse_args(argv)
    bundled(min(args.timeout, 2.0))
    random_corpus(args.count, args.seed, args.clauses, args.literals, args.timeout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
