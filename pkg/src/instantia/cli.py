"""Command line entry point: ``instantia prove|oracle|verify|sat|fuzz``."""

from __future__ import annotations

import argparse
import re
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import ENGINES
from .fuzz import FuzzConfig, corpus
from .grounding import ReservedSymbolError
from .models import format_certificate, parse_certificate
from .oracle import OracleRefusal, herbrand_oracle, verify_model
from .results import EngineResult, Limits, Status
from .sat import Solver, format_model, parse_dimacs
from .tptp import InputError, format_problem, read_problem

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_RESOURCE = 2
EXIT_DISAGREE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


@dataclass
class RunReport:
    engine: str
    status: Status
    wall: float
    stats: dict = field(default_factory=dict)
    certificate: str | None = None

    def line(self) -> str:
        stats = " ".join(f"{k}={v}" for k, v in sorted(self.stats.items()))
        cert = f" cert={self.certificate}" if self.certificate else ""
        return f"% {self.engine}: {self.status} time={self.wall:.3f}s {stats}{cert}".rstrip()


def _limits(args) -> Limits:
    return Limits(
        timeout=args.timeout,
        max_instances=args.max_instances,
        seed=args.seed,
        initial_path=args.initial_path,
    )


def _certificate_text(r: EngineResult) -> str:
    if r.model is not None:
        return format_certificate(r.model)
    lines = r.proof or r.dump.splitlines()
    return "\n".join(lines) + "\n"


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _cert_path(base: str, engine: str, many: bool) -> str:
    return f"{base}.{engine}" if many else base


def cmd_prove(args) -> int:
    problem = read_problem(args.file)
    names = sorted(ENGINES) if args.engine == "all" else [args.engine]
    many = len(names) > 1
    reports = []
    for name in names:
        t0 = time.perf_counter()
        r = ENGINES[name](problem.clauses, _limits(args))
        wall = time.perf_counter() - t0
        cert = None
        if args.cert and r.status is not Status.RESOURCE_OUT:
            cert = _cert_path(args.cert, name, many)
            _write(cert, _certificate_text(r))
        if args.dump_dimacs and r.dimacs:
            _write(_cert_path(args.dump_dimacs, name, many), r.dimacs)
        if args.dump_tree and (r.dump or r.dot):
            tree = r.dot if args.dump_tree.endswith(".dot") and r.dot else r.dump
            _write(_cert_path(args.dump_tree, name, many), tree)
        reports.append((r, RunReport(name, r.status, wall, r.stats, cert)))
    for r, rep in reports:
        print(rep.line())
        if r.reason:
            print(f"% reason: {r.reason}")
    definite = {rep.status for _, rep in reports if rep.status is not Status.RESOURCE_OUT}
    if len(definite) > 1:
        print("% engines disagree")
        return EXIT_DISAGREE
    status = definite.pop() if definite else Status.RESOURCE_OUT
    print(f"% SZS status {status}")
    return EXIT_RESOURCE if status is Status.RESOURCE_OUT else EXIT_OK


def cmd_oracle(args) -> int:
    problem = read_problem(args.file)
    try:
        res = herbrand_oracle(problem, bound=args.bound)
    except OracleRefusal as e:
        print(f"% oracle refused: {e}")
        return EXIT_RESOURCE if e.estimate is not None else EXIT_INPUT
    print(f"% ground clauses: {res.ground_clauses}")
    print(f"% SZS status {res.status}")
    return EXIT_OK


def cmd_verify(args) -> int:
    problem = read_problem(args.file)
    cert = parse_certificate(Path(args.cert).read_text(encoding="utf-8"))
    try:
        ok = verify_model(problem, cert)
    except OracleRefusal as e:
        print(f"% verification refused: {e}")
        return EXIT_INPUT
    print(f"% model {'verified' if ok else 'rejected'}")
    return EXIT_OK if ok else EXIT_INPUT


def cmd_sat(args) -> int:
    cnf = parse_dimacs(Path(args.file).read_text(encoding="utf-8"))
    solver = Solver(cnf.num_vars, seed=args.seed)
    for i, c in enumerate(cnf.clauses):
        solver.add_clause(c, i)
    if solver.solve():
        print("SAT")
        print(format_model(solver.model))
    else:
        print("UNSAT")
    return EXIT_OK


def cmd_fuzz(args) -> int:
    problems = corpus(args.count, args.seed, FuzzConfig())
    names = sorted(ENGINES) if args.engine == "all" else [args.engine]
    limits = Limits(timeout=args.timeout)
    bad = 0
    for k, clauses in enumerate(problems):
        if args.out:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"fuzz_{args.seed}_{k:04d}.p").write_text(format_problem(clauses), encoding="utf-8")
        truth = herbrand_oracle(clauses).status
        for name in names:
            r = ENGINES[name](clauses, limits)
            if r.status is not truth:
                bad += 1
                print(f"% problem {k}: {name} says {r.status}, oracle says {truth}")
            elif r.model is not None and not verify_model(clauses, r.model):
                bad += 1
                print(f"% problem {k}: {name} model rejected")
    print(f"% fuzz: {args.count} problems, {bad} disagreements")
    return EXIT_DISAGREE if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="instantia", description="Instance-based provers for clause logic.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("prove", help="run one engine, or all of them")
    p.add_argument("--engine", choices=sorted(ENGINES) + ["all"], default="instgen")
    p.add_argument("--timeout", type=float, default=30.0)
    p.add_argument("--max-instances", type=int, default=100_000)
    p.add_argument("--dump-dimacs", metavar="F")
    p.add_argument("--dump-tree", metavar="F")
    p.add_argument("--initial-path", default="first", help="first or random:SEED")
    p.add_argument("--seed", type=int)
    p.add_argument("--cert", metavar="F", help="write the model or proof here")
    p.add_argument("file")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("oracle", help="decide function-free input by full grounding")
    p.add_argument("--bound", type=int, default=10**6)
    p.add_argument("file")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check a model certificate")
    p.add_argument("file")
    p.add_argument("cert")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sat", help="solve a DIMACS CNF file")
    p.add_argument("--seed", type=int)
    p.add_argument("file")
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("fuzz", help="differential test against the oracle")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--engine", choices=sorted(ENGINES) + ["all"], default="all")
    p.add_argument("--timeout", type=float, default=30.0)
    p.add_argument("--out", metavar="DIR", help="also write the problems as .p files")
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    mode = getattr(args, "initial_path", "first")
    if mode != "first" and not re.fullmatch(r"random:-?\d+", mode):
        print(f"instantia: error: bad --initial-path {mode!r}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, ReservedSymbolError) as e:
        print(f"instantia: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"instantia: error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
