"""Disconnection tableaux: expand a branch one link at a time.

A branch stands for a clause set with one selected literal per clause: the
clause instances attached on it (selected at the node the branch passes
through) plus every input clause that has no variant on the branch
(selected at its initial-path literal).  The branch is saturated when no two
selected literals are complementary after grounding and every link between
selected literals has both of its instances present up to variants.  A
saturated open branch yields a model, which is why the search can answer
Satisfiable on EPR input.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from typing import Iterator, Sequence

from .grounding import bottom_ground
from .logic import Clause, Fresh, Literal, Origin, apply, clause_key, is_tautology, rename_apart, variant_key
from .models import certify_with_fallback, signature_domain
from .results import Budget, EngineResult, Limits, ResourceOut, SoundnessAudit, Status, prepare_input
from .unify import unify_all

ENGINE = "disconnection"


@dataclass(eq=False)
class Node:
    literal: Literal | None
    clause: Clause | None = None
    index: int = -1
    parent: "Node | None" = None
    children: list["Node"] = field(default_factory=list)
    closed: bool = False
    witness: tuple[Literal, Literal] | None = None
    depth: int = 0  # number of expansions above and including this node
    used: tuple | None = None  # registry entry recorded by the expansion starting here

    def branch(self) -> list["Node"]:
        out = []
        n = self
        while n is not None and n.literal is not None:
            out.append(n)
            n = n.parent
        out.reverse()
        return out


@dataclass
class Selected:
    clause: Clause
    index: int
    on_tableau: bool
    age: int

    @property
    def literal(self) -> Literal:
        return self.clause.literals[self.index]


@dataclass
class Expansion:
    first: Clause
    first_index: int
    second: Clause | None
    second_index: int
    key: tuple


def choose_initial_path(clauses: Sequence[Clause], mode: str = "first") -> dict[int, int]:
    """One literal index per clause id: the first literal, or ``random:SEED``."""
    if mode == "first":
        return {c.id: 0 for c in clauses}
    if mode.startswith("random:"):
        rng = random.Random(int(mode.split(":", 1)[1]))
        return {c.id: rng.randrange(len(c.literals)) for c in clauses}
    raise ValueError(f"unknown initial path mode {mode!r}")


class Tableau:
    def __init__(self, inputs: Sequence[Clause], initial_path: dict[int, int], fresh: Fresh | None = None):
        self.inputs = [c for c in inputs if c.literals]
        self.initial_path = initial_path
        self.fresh = fresh or Fresh("d")
        self.root = Node(None)
        self.input_keys = {clause_key(c): c for c in self.inputs}
        self.stats: Counter = Counter()

    # -- branch views -----------------------------------------------------

    def branch_literals(self, leaf: Node) -> set[Literal]:
        return {bottom_ground(n.literal) for n in leaf.branch()}

    def registry(self, leaf: Node) -> set:
        out = set()
        n = leaf
        while n is not None:
            if n.used is not None:
                out.add(n.used)
            n = n.parent
        return out

    def selected(self, leaf: Node) -> list[Selected]:
        """The clause set the branch stands for, with its selection."""
        nodes = leaf.branch()
        tableau_keys = {clause_key(n.clause) for n in nodes}
        out = [
            Selected(c, self.initial_path[c.id], False, i)
            for i, c in enumerate(self.inputs)
            if clause_key(c) not in tableau_keys
        ]
        base = len(self.inputs)
        out += [Selected(n.clause, n.index, True, base + i) for i, n in enumerate(nodes)]
        return out

    # -- closure ----------------------------------------------------------

    def is_closed(self, leaf: Node) -> bool:
        """Complementary pair among the grounded tableau literals of the branch."""
        seen = set()
        for n in leaf.branch():
            g = bottom_ground(n.literal)
            if g.complement() in seen:
                return True
            seen.add(g)
        return False

    # -- expansion --------------------------------------------------------

    def attach(self, leaf: Node, c: Clause) -> list[Node]:
        """Hang a renamed copy of ``c`` below ``leaf``, one child per literal."""
        c = replace(rename_apart(c, self.fresh), id=-1)
        ground = self.branch_literals(leaf)
        children = []
        for i, lit in enumerate(c.literals):
            node = Node(lit, c, i, leaf, depth=leaf.depth + 1)
            g = bottom_ground(lit)
            if g.complement() in ground:
                node.closed = True
                node.witness = (lit, g.complement())
            children.append(node)
        leaf.children = children
        self.stats["nodes"] += len(children)
        return children

    def expand(self, leaf: Node, exp: Expansion) -> list[Node] | None:
        """Apply ``exp`` at ``leaf``; returns the new leaves or None if refused."""
        if exp.key in self.registry(leaf):
            return None
        leaf.used = exp.key
        self.stats["expansions"] += 1
        first = self.attach(leaf, exp.first)
        leaves = list(first)
        hook = first[exp.first_index]
        if exp.second is not None and not hook.closed:
            second = self.attach(hook, exp.second)
            for n in second:
                n.depth = leaf.depth + 1
            leaves[exp.first_index:exp.first_index + 1] = second
        return leaves

    def violations(self, leaf: Node) -> Iterator[Expansion]:
        """Expansions that repair a reason for the branch not being saturated."""
        sel = self.selected(leaf)
        present = set(self.input_keys)
        present.update(clause_key(s.clause) for s in sel if s.on_tableau)
        used = self.registry(leaf)
        by_atom: dict[Literal, Selected] = {}
        for s in sel:
            g = bottom_ground(s.literal)
            other = by_atom.get(g.complement())
            if other is not None and not (other.on_tableau and s.on_tableau):
                exp = self._complementary(other, s)
                if exp.key not in used:
                    yield exp
            by_atom.setdefault(g, s)
        buckets: dict[tuple, list[Selected]] = defaultdict(list)
        for s in sel:
            buckets[(s.literal.predicate, s.literal.positive)].append(s)
        for s in sel:
            lit = s.literal
            if not lit.positive:
                continue
            for t in buckets.get((lit.predicate, False), ()):
                sigma = unify_all([(lit.atom, t.literal.atom)])
                if sigma is None:
                    continue
                exp = self._link(s, t, sigma, present)
                if exp is not None and exp.key not in used:
                    yield exp

    def _complementary(self, a: Selected, b: Selected) -> Expansion:
        # at least one side is an input clause off the tableau
        if a.on_tableau:
            a, b = b, a
        second = None if b.on_tableau else b.clause
        key = ("copy", variant_key(a.clause.literals + b.clause.literals), a.index, b.index)
        return Expansion(a.clause, a.index, second, b.index, key)

    def _link(self, a: Selected, b: Selected, sigma, present) -> Expansion | None:
        ia, ib = apply(sigma, a.clause), apply(sigma, b.clause)
        missing_a = clause_key(ia) not in present
        missing_b = clause_key(ib) not in present
        if not (missing_a or missing_b):
            return None
        # attach a missing instance first, preferring the tableau side
        order = [(a, ia, missing_a), (b, ib, missing_b)]
        order.sort(key=lambda x: (not x[2], not x[0].on_tableau))
        (x, ix, _), (y, iy, _) = order
        key = ("link", variant_key(ix.literals + iy.literals), x.index, y.index)
        return Expansion(ix, x.index, iy, y.index, key)

    def open_cost(self, leaf: Node, exp: Expansion) -> int:
        """Open leaves ``exp`` would create at ``leaf``."""
        ground = self.branch_literals(leaf)
        cost = 0
        for i, lit in enumerate(exp.first.literals):
            g = bottom_ground(lit)
            if g.complement() in ground:
                continue
            if i == exp.first_index and exp.second is not None:
                inner = ground | {g}
                cost += sum(
                    1 for l in exp.second.literals if bottom_ground(l).complement() not in inner
                )
            else:
                cost += 1
        return cost

    # -- output -----------------------------------------------------------

    def dump(self) -> str:
        lines: list[str] = []

        def walk(n: Node, depth: int) -> None:
            for ch in n.children:
                lines.append("  " * depth + ch.literal.pretty() + (" *" if ch.closed else ""))
                walk(ch, depth + 1)

        walk(self.root, 0)
        return "\n".join(lines) + ("\n" if lines else "")

    def dot(self) -> str:
        lines = ["digraph tableau {", '  n0 [label=""];']
        ids = {id(self.root): 0}

        def walk(n: Node) -> None:
            for ch in n.children:
                ids[id(ch)] = len(ids)
                label = ch.literal.pretty() + (" *" if ch.closed else "")
                lines.append(f'  n{ids[id(ch)]} [label="{label}"];')
                lines.append(f"  n{ids[id(n)]} -> n{ids[id(ch)]};")
                walk(ch)

        walk(self.root)
        lines.append("}")
        return "\n".join(lines) + "\n"


def dt_prove(clauses: Sequence[Clause], limits: Limits | None = None, initial_bound: int = 16) -> EngineResult:
    limits = limits or Limits()
    budget = Budget(limits)
    fresh = Fresh("d")
    inputs = prepare_input(clauses, fresh)
    audit = SoundnessAudit(inputs, limits.audit)
    if any(not c.literals for c in inputs):
        return EngineResult(ENGINE, Status.UNSAT, proof=["input contains the empty clause"])
    kept = [c for c in inputs if not is_tautology(c)]
    tab = Tableau(kept, choose_initial_path(kept, limits.initial_path), fresh)

    def result(status: Status, **kw) -> EngineResult:
        stats = dict(tab.stats, bound=bound, audited=audit.checked)
        dump = tab.dump()
        return EngineResult(ENGINE, status, stats=stats, dump=dump, dot=tab.dot(), **kw)

    bound = initial_bound
    stack = [tab.root]
    cut: list[Node] = []
    try:
        while True:
            while stack:
                budget.check(tab.stats["nodes"])
                leaf = stack.pop()
                if leaf.depth >= bound:
                    cut.append(leaf)
                    continue
                best = None
                for age, exp in enumerate(tab.violations(leaf)):
                    cost = tab.open_cost(leaf, exp)
                    if best is None or cost < best[0]:
                        best = (cost, age, exp)
                    if cost == 0:
                        break
                if best is None:
                    sel = tab.selected(leaf)
                    model = certify_with_fallback(
                        [(s.clause, s.index) for s in sel], inputs, signature_domain(inputs), limits.seed
                    )
                    if model is None:
                        raise AssertionError("saturated branch without a model")
                    return result(Status.SAT, model=model)
                exp = best[2]
                leaves = tab.expand(leaf, exp)
                audit.check(exp.first)
                if exp.second is not None:
                    audit.check(exp.second)
                if limits.audit and not any(n.closed for n in leaves):
                    raise AssertionError("expansion closed no branch")
                stack.extend(reversed([n for n in leaves if not n.closed]))
            if not cut:
                return result(Status.UNSAT, proof=tab.dump().splitlines())
            bound *= 2
            stack, cut = list(reversed(cut)), []
    except ResourceOut as e:
        return result(Status.RESOURCE_OUT, reason=str(e))
