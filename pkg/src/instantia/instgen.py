"""Inst-Gen: proper instances from selected links, checked by SAT on the grounding."""

from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field, replace
from typing import Sequence

from .grounding import PropAbstraction, bottom_ground, extract_path
from .logic import (
    Clause,
    Fresh,
    Origin,
    apply,
    clause_key,
    is_proper_instance,
    rename_apart,
)
from .models import ModelCertificate, certify_with_fallback, signature_domain
from .results import Budget, EngineResult, Limits, ResourceOut, SoundnessAudit, Status, prepare_input
from .sat import Solver
from .unify import Link, make_link

ENGINE = "instgen"


def instgen_step(premise1: Clause, premise2: Clause, link: Link, active_keys=None) -> list[Clause]:
    """Conclusions of the rule for ``link``: the proper, new σ-instances.

    Returned clauses share the variables introduced by σ; callers rename
    them apart before adding them to a clause set.
    """
    sigma = link.sigma
    out = []
    seen = set()
    for premise in (premise1, premise2):
        inst = apply(sigma, premise)
        if not is_proper_instance(inst, premise):
            continue
        key = clause_key(inst)
        if key in seen or (active_keys is not None and key in active_keys):
            continue
        seen.add(key)
        out.append(replace(inst, origin=Origin(ENGINE, (premise1.id, premise2.id), link.mgu)))
    return out


@dataclass
class InstGenState:
    inputs: list[Clause]
    fresh: Fresh
    active: list[Clause] = field(default_factory=list)
    keys: dict = field(default_factory=dict)
    abstraction: PropAbstraction = field(default_factory=PropAbstraction)
    solver: Solver = field(default_factory=Solver)
    path: dict | None = None
    queue: deque = field(default_factory=deque)
    seen: set = field(default_factory=set)
    stats: Counter = field(default_factory=Counter)
    # selected literal occurrences bucketed by (predicate, polarity)
    _selected: dict = field(default_factory=lambda: defaultdict(dict))

    def add(self, c: Clause) -> Clause | None:
        key = clause_key(c)
        if key in self.keys:
            return None
        c = replace(rename_apart(c, self.fresh), id=len(self.active))
        self.keys[key] = c.id
        self.active.append(c)
        k, prop = self.abstraction.add(c)
        self.solver.ensure_vars(self.abstraction.num_vars)
        self.solver.add_clause(prop, k)
        return c


def _selected_literal(state: InstGenState, cid: int):
    c = state.active[cid]
    return c.literals[state.path[cid]]


def select_relevant_links(state: InstGenState, changed: Sequence[int]) -> int:
    """Enqueue unseen links between path-selected literals.

    Only clauses in ``changed`` (new clauses or a different selection) can
    take part in links not considered before.  Returns the number enqueued.
    """
    buckets = state._selected
    for cid in changed:
        for bucket in buckets.values():
            bucket.pop(cid, None)
    for cid in changed:
        lit = _selected_literal(state, cid)
        buckets[(lit.predicate, lit.positive)][cid] = None
    added = 0
    for cid in changed:
        c = state.active[cid]
        i = state.path[cid]
        lit = c.literals[i]
        for did in buckets.get((lit.predicate, not lit.positive), ()):
            d = state.active[did]
            link = make_link(c, i, d, state.path[did])
            if link is None or link.key in state.seen:
                continue
            state.seen.add(link.key)
            state.queue.append(link)
            added += 1
    return added


def _still_selected(state: InstGenState, link: Link) -> bool:
    return state.path.get(link.clause1) == link.index1 and state.path.get(link.clause2) == link.index2


def _proof(state: InstGenState) -> list[str]:
    core = state.solver.conflict_core or frozenset()
    sources = state.abstraction.sources
    needed: set[int] = set()
    stack = [sources[k] for k in core]
    while stack:
        cid = stack.pop()
        if cid in needed:
            continue
        needed.add(cid)
        stack.extend(state.active[cid].origin.parents)
    lines = []
    for cid in sorted(needed):
        c = state.active[cid]
        o = c.origin
        if o.is_input:
            lines.append(f"{cid}. {c!r} <- input({o.name or cid})")
        else:
            sigma = "{" + ", ".join(f"{v!r}->{t!r}" for v, t in o.subst) + "}"
            lines.append(f"{cid}. {c!r} <- instgen({o.parents[0]}, {o.parents[1]}, {sigma})")
    lines.append(f"unsat core: prop clauses {sorted(core)}")
    return lines


def build_model(state: InstGenState) -> ModelCertificate:
    selected = [(c, state.path[c.id]) for c in state.active]
    return certify_with_fallback(selected, state.inputs, signature_domain(state.inputs))


def _check_path(state: InstGenState) -> None:
    seen = {}
    for c in state.active:
        g = bottom_ground(c.literals[state.path[c.id]])
        if seen.get(g.atom, g.positive) != g.positive:
            raise AssertionError(f"path selects both polarities of {g.atom!r}")
        seen[g.atom] = g.positive


def saturate(clauses: Sequence[Clause], limits: Limits | None = None) -> EngineResult:
    limits = limits or Limits()
    budget = Budget(limits)
    fresh = Fresh("i")
    inputs = prepare_input(clauses, fresh)
    state = InstGenState(inputs, fresh, solver=Solver(seed=limits.seed))
    audit = SoundnessAudit(inputs, limits.audit)
    for c in inputs:
        state.add(c)

    def result(status: Status, **kw) -> EngineResult:
        stats = dict(state.stats, active=len(state.active), audited=audit.checked)
        return EngineResult(ENGINE, status, stats=stats, dimacs=state.abstraction.to_dimacs(), state=state, **kw)

    prev: dict[int, int] = {}
    try:
        while True:
            budget.check(len(state.active))
            state.stats["sat_calls"] += 1
            if not state.solver.solve():
                return result(Status.UNSAT, proof=_proof(state))
            state.path = extract_path(state.solver.model, state.active, state.abstraction)
            if limits.audit:
                _check_path(state)
            changed = [cid for cid, i in state.path.items() if prev.get(cid) != i]
            prev = dict(state.path)
            select_relevant_links(state, changed)
            if not state.queue:
                return result(Status.SAT, model=build_model(state))
            new = 0
            while state.queue and new < limits.batch:
                link = state.queue.popleft()
                if not _still_selected(state, link):
                    state.seen.discard(link.key)
                    continue
                state.stats["links"] += 1
                c, d = state.active[link.clause1], state.active[link.clause2]
                for inst in instgen_step(c, d, link, state.keys):
                    added = state.add(inst)
                    if added is not None:
                        audit.check(added)
                        new += 1
                        state.stats["instances"] += 1
                budget.check(len(state.active))
    except ResourceOut as e:
        return result(Status.RESOURCE_OUT, reason=str(e))
