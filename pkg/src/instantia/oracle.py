"""Ground-truth checks for function-free input by full Herbrand grounding."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .grounding import PropAbstraction
from .logic import Clause, Term
from .models import Interpretation, ModelCertificate, falsified_instance, ground_instances
from .results import Status
from .sat import Solver
from .tptp import Problem

DEFAULT_BOUND = 10**6


class OracleRefusal(Exception):
    """The oracle cannot answer: non-EPR input or grounding too large."""

    def __init__(self, message: str, estimate: int | None = None):
        super().__init__(message)
        self.estimate = estimate


@dataclass
class OracleResult:
    status: Status
    ground_clauses: int
    domain: tuple[Term, ...]
    model: dict | None = None


def _problem(p: Problem | Sequence[Clause]) -> Problem:
    return p if isinstance(p, Problem) else Problem.from_clauses(p)


def grounding_size(clauses: Sequence[Clause], k: int) -> int:
    return sum(k ** len(c.variables()) for c in clauses)


def herbrand_oracle(p: Problem | Sequence[Clause], bound: int = DEFAULT_BOUND, domain: Sequence[Term] | None = None) -> OracleResult:
    """Ground every clause over the constants and decide the result with SAT."""
    p = _problem(p)
    if not p.is_epr:
        raise OracleRefusal("the oracle only handles function-free input")
    domain = tuple(domain) if domain is not None else tuple(p.domain())
    size = grounding_size(p.clauses, len(domain))
    if size > bound:
        raise OracleRefusal(f"grounding needs {size} clauses, above the bound {bound}", size)
    pa = PropAbstraction()
    solver = Solver()
    n = 0
    for c in p.clauses:
        for _, ground in ground_instances(c, domain):
            _, prop = pa.add(Clause(ground, c.id))
            solver.ensure_vars(pa.num_vars)
            solver.add_clause(prop, c.id)
            n += 1
    if solver.solve():
        model = {pa.atoms[v]: val for v, val in solver.model.items()}
        return OracleResult(Status.SAT, n, domain, model)
    return OracleResult(Status.UNSAT, n, domain)


def verify_model(p: Problem | Sequence[Clause], cert: ModelCertificate, domain: Sequence[Term] | None = None) -> bool:
    """True when every ground instance over the domain holds under ``cert``."""
    p = _problem(p)
    if not p.is_epr:
        raise OracleRefusal("model verification needs function-free input")
    domain = tuple(domain) if domain is not None else tuple(p.domain())
    interp = Interpretation(cert.literals)
    return all(falsified_instance(interp, c, domain) is None for c in p.clauses)
