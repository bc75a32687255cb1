"""Round-based hyper-linking with a SAT check on the grounded clause set."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterator, Sequence

from .grounding import PropAbstraction, extract_path
from .logic import Clause, Fresh, Origin, Subst, apply, clause_key, literal_key, rename_literal, restrict
from .models import certify_with_fallback, signature_domain
from .results import Budget, EngineResult, Limits, ResourceOut, SoundnessAudit, Status, prepare_input
from .sat import Solver
from .unify import Link, LinkIndex, unify_all

ENGINE = "hyperlink"


@dataclass(frozen=True)
class HyperLink:
    clause: int
    links: tuple[Link, ...]
    theta: tuple

    @property
    def sigma(self) -> Subst:
        return dict(self.theta)


def _enumerate(c: Clause, index: LinkIndex, fresh: Fresh, distinct: bool = False) -> Iterator[HyperLink]:
    """Depth-first over one partner per literal, unifying simultaneously.

    Every partner literal is renamed apart, so a clause may also link with a
    copy of itself.  With ``distinct`` only one hyper-link per resulting
    instance (up to variants) is produced: partner literals are taken once
    per variant, and a partial instance already expanded at the same depth
    is not expanded again.
    """
    partners = [index.partners(lit) for lit in c.literals]
    if any(not p for p in partners):
        return
    if distinct:
        partners = [_distinct_partners(p) for p in partners]
    n = len(c.literals)
    variables = c.variables()
    expanded: list[set] = [set() for _ in range(n + 1)]

    def go(i: int, s: Subst, chosen: tuple) -> Iterator[HyperLink]:
        if distinct:
            key = clause_key(apply(s, c))
            if key in expanded[i]:
                return
            expanded[i].add(key)
        if i == n:
            yield HyperLink(c.id, chosen, tuple(restrict(s, variables).items()))
            return
        lit = c.literals[i]
        for d, j in partners[i]:
            other = rename_literal(d.literals[j], fresh)
            pair = unify_all([(lit.atom, other.atom)])
            if pair is None:
                continue
            s2 = unify_all([(lit.atom, other.atom)], s)
            if s2 is None:
                continue
            link = Link(c.id, i, d.id, j, tuple(pair.items()))
            yield from go(i + 1, s2, chosen + (link,))

    yield from go(0, {}, ())


def _distinct_partners(occurrences: list[tuple[Clause, int]]) -> list[tuple[Clause, int]]:
    seen = set()
    out = []
    for d, j in occurrences:
        key = literal_key(d.literals[j])
        if key not in seen:
            seen.add(key)
            out.append((d, j))
    return out


def hyper_links(
    c: Clause,
    against: Sequence[Clause] | LinkIndex,
    cap: int = 10_000,
    skip: int = 0,
    fresh: Fresh | None = None,
    distinct: bool = False,
) -> list[HyperLink]:
    """Hyper-links of ``c`` (one link per literal), at most ``cap`` after ``skip``."""
    fresh = fresh or Fresh("h")
    index = against if isinstance(against, LinkIndex) else LinkIndex(against)
    out = []
    for k, hl in enumerate(_enumerate(c, index, fresh, distinct)):
        if k < skip:
            continue
        out.append(hl)
        if len(out) >= cap:
            break
    return out


@dataclass
class HyperLinkState:
    inputs: list[Clause]
    fresh: Fresh
    clauses: list[Clause] = field(default_factory=list)
    keys: dict = field(default_factory=dict)
    abstraction: PropAbstraction = field(default_factory=PropAbstraction)
    solver: Solver = field(default_factory=Solver)
    cursor: dict = field(default_factory=dict)
    stats: Counter = field(default_factory=Counter)

    def add(self, c: Clause) -> Clause | None:
        key = clause_key(c)
        if key in self.keys:
            return None
        c = replace(c, id=len(self.clauses))
        self.keys[key] = c.id
        self.clauses.append(c)
        k, prop = self.abstraction.add(c)
        self.solver.ensure_vars(self.abstraction.num_vars)
        self.solver.add_clause(prop, k)
        return c


def hl_round(state: HyperLinkState, cap: int = 10_000, budget: Budget | None = None) -> list[Clause]:
    """One round over a snapshot of the clause set; returns the new instances."""
    snapshot = list(state.clauses)
    index = LinkIndex(snapshot)
    new: dict = {}
    for c in snapshot:
        if budget is not None:
            budget.check(len(state.clauses) + len(new))
        skip = state.cursor.get(c.id, 0)
        found = hyper_links(c, index, cap, skip, state.fresh, distinct=True)
        state.cursor[c.id] = skip + len(found) if len(found) >= cap else 0
        state.stats["hyperlinks"] += len(found)
        for hl in found:
            inst = apply(hl.sigma, c)
            key = clause_key(inst)
            if key in state.keys or key in new:
                continue
            parents = (c.id,) + tuple(l.clause2 for l in hl.links)
            new[key] = Clause(inst.literals, origin=Origin(ENGINE, parents, hl.theta))
    return list(new.values())


def _trace(n: int, k: int, state: HyperLinkState, sat: bool) -> str:
    return (
        f"round {n}: +{k} instances, abstraction vars={state.abstraction.num_vars} "
        f"clauses={len(state.abstraction.cnf)}, status={'SAT' if sat else 'UNSAT'}"
    )


def hl_saturate(clauses: Sequence[Clause], limits: Limits | None = None) -> EngineResult:
    limits = limits or Limits()
    budget = Budget(limits)
    fresh = Fresh("h")
    inputs = prepare_input(clauses, fresh)
    state = HyperLinkState(inputs, fresh, solver=Solver(seed=limits.seed))
    audit = SoundnessAudit(inputs, limits.audit)
    for c in inputs:
        state.add(c)
    trace: list[str] = []

    def result(status: Status, **kw) -> EngineResult:
        stats = dict(state.stats, clauses=len(state.clauses), rounds=sum(l.startswith("round") for l in trace) - 1, audited=audit.checked)
        return EngineResult(ENGINE, status, proof=trace, stats=stats, dimacs=state.abstraction.to_dimacs(), **kw)

    try:
        sat = state.solver.solve()
        trace.append(_trace(0, 0, state, sat))
        n = 0
        while sat:
            n += 1
            new = hl_round(state, limits.hyperlink_cap, budget)
            added = 0
            for c in new:
                c = state.add(c)
                if c is not None:
                    audit.check(c)
                    added += 1
            state.stats["instances"] += added
            budget.check(len(state.clauses))
            sat = state.solver.solve()
            trace.append(_trace(n, added, state, sat))
            if sat and added == 0 and not any(state.cursor.values()):
                path = extract_path(state.solver.model, state.clauses, state.abstraction)
                selected = [(c, path[c.id]) for c in state.clauses]
                model = certify_with_fallback(selected, inputs, signature_domain(inputs), limits.seed)
                return result(Status.SAT, model=model)
        core = state.solver.conflict_core or frozenset()
        trace.append(f"unsat core: prop clauses {sorted(core)}")
        return result(Status.UNSAT)
    except ResourceOut as e:
        return result(Status.RESOURCE_OUT, reason=str(e))
