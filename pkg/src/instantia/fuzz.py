"""Seeded random EPR clause sets for differential testing."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .logic import Clause, Fn, Literal, Origin, Var, const


@dataclass
class FuzzConfig:
    max_predicates: int = 3
    max_arity: int = 2
    max_constants: int = 3
    max_clauses: int = 6
    max_literals: int = 3
    max_variables: int = 3
    variable_rate: float = 0.5


def random_problem(rng: random.Random, cfg: FuzzConfig | None = None) -> list[Clause]:
    cfg = cfg or FuzzConfig()
    preds = [(f"p{i}", rng.randint(0, cfg.max_arity)) for i in range(rng.randint(1, cfg.max_predicates))]
    consts = [const(f"k{i}") for i in range(rng.randint(1, cfg.max_constants))]
    variables = [Var(f"X{i}") for i in range(cfg.max_variables)]
    clauses = []
    for cid in range(rng.randint(1, cfg.max_clauses)):
        lits = []
        for _ in range(rng.randint(1, cfg.max_literals)):
            name, arity = rng.choice(preds)
            args = tuple(
                rng.choice(variables) if rng.random() < cfg.variable_rate else rng.choice(consts)
                for _ in range(arity)
            )
            lits.append(Literal(rng.random() < 0.5, Fn(name, args)))
        clauses.append(Clause(tuple(lits), cid, Origin(name=f"f{cid}")))
    return clauses


def corpus(count: int, seed: int = 0, cfg: FuzzConfig | None = None) -> list[list[Clause]]:
    rng = random.Random(seed)
    return [random_problem(rng, cfg) for _ in range(count)]
