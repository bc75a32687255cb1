"""First-order DPLL: a semantic tree that splits on complementary literals.

Each branch induces a candidate model in which the most specific matching
branch literal decides a ground atom (the deeper literal wins between
incomparable ones) and the root pseudo-literal makes everything else false.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .grounding import bottom_ground
from .logic import (
    Clause,
    Fresh,
    Literal,
    Subst,
    Term,
    Var,
    apply,
    apply_literal,
    atom_instance_of,
    literal_key,
    match_into,
    rename_literal,
)
from .models import Interpretation, ModelCertificate, signature_domain
from .results import Budget, EngineResult, Limits, ResourceOut, Status, prepare_input
from .unify import unify_all

ENGINE = "fdpll"
ROOT = Literal(False, Var("x"))


def candidate_value(branch: Sequence[Literal], atom: Term) -> bool:
    return Interpretation(branch).value(atom)


@dataclass
class Falsified:
    instance: Clause
    sigma: Subst
    partners: tuple[Literal, ...]


def _strictly_more_general(general: Literal, specific: Literal) -> bool:
    return atom_instance_of(specific.atom, general.atom) and not atom_instance_of(general.atom, specific.atom)


def find_falsified_instance(branch: Sequence[Literal], c: Clause, fresh: Fresh | None = None) -> Falsified | None:
    """A clause instance whose every literal is contradicted by a branch literal.

    Literal i is paired with a renamed copy of an opposite-sign branch
    literal (positive literals may use the root) and all pairs are unified
    at once.  A pairing is discarded when an instantiated clause literal
    falls under a same-sign branch literal that is strictly more specific
    than its partner, since that literal is then not false.  None means
    that the clause holds in the candidate model.
    """
    fresh = fresh or Fresh("f")
    lits = c.literals
    options = []
    for lit in lits:
        opts = [b for b in branch if b.positive != lit.positive and (b.predicate == lit.predicate or isinstance(b.atom, Var))]
        if not opts:
            return None
        options.append(opts)
    same_sign = {True: [b for b in branch if b.positive], False: [b for b in branch if not b.positive]}

    def refuted(s: Subst, chosen: tuple[Literal, ...]) -> bool:
        for lit, partner in zip(lits, chosen):
            inst = apply_literal(s, lit)
            for b in same_sign[lit.positive]:
                if atom_instance_of(inst.atom, b.atom) and _strictly_more_general(partner.complement(), b):
                    return True
        return False

    def go(i: int, s: Subst, chosen: tuple) -> Falsified | None:
        if i == len(lits):
            if refuted(s, chosen):
                return None
            return Falsified(apply(s, c), s, chosen)
        for b in options[i]:
            other = rename_literal(b, fresh)
            s2 = unify_all([(lits[i].atom, other.atom)], s)
            if s2 is None:
                continue
            found = go(i + 1, s2, chosen + (b,))
            if found is not None:
                return found
        return None

    return go(0, {}, ())


def close_branch(branch: Sequence[Literal], c: Clause) -> tuple[Subst, tuple[Literal, ...]] | None:
    """Match every literal of ``c`` onto a grounded complementary branch literal."""
    grounded = [bottom_ground(b) for b in branch if not isinstance(b.atom, Var)]
    lits = c.literals

    def go(i: int, s: Subst, partners: tuple) -> tuple | None:
        if i == len(lits):
            return {v: t for v, t in s.items() if t is not v}, partners
        lit = lits[i]
        for g in grounded:
            if g.positive == lit.positive or g.predicate != lit.predicate:
                continue
            s2 = dict(s)
            if match_into(lit.atom, g.atom, s2):
                found = go(i + 1, s2, partners + (g,))
                if found is not None:
                    return found
        return None

    return go(0, {}, ())


@dataclass(eq=False)
class TreeNode:
    literal: Literal
    parent: "TreeNode | None" = None
    children: list["TreeNode"] = field(default_factory=list)
    closed: bool = False
    witness: tuple | None = None
    depth: int = 0

    def branch(self) -> list[Literal]:
        out = []
        n = self
        while n is not None:
            out.append(n.literal)
            n = n.parent
        out.reverse()
        return out


def _on_branch(branch: Sequence[Literal], lit: Literal) -> bool:
    key = literal_key(lit)
    return any(literal_key(b) == key for b in branch)


def eligible_literal(branch: Sequence[Literal], instance: Clause) -> int | None:
    """First literal of ``instance`` with neither it nor its complement on the branch."""
    for i, lit in enumerate(instance.literals):
        if not _on_branch(branch, lit) and not _on_branch(branch, lit.complement()):
            return i
    return None


class SemanticTree:
    def __init__(self, clauses: Sequence[Clause], fresh: Fresh | None = None):
        self.clauses = list(clauses)
        self.fresh = fresh or Fresh("f")
        self.root = TreeNode(ROOT)
        self.stats: Counter = Counter()

    def check_closed(self, node: TreeNode) -> bool:
        branch = node.branch()
        for c in self.clauses:
            w = close_branch(branch, c)
            if w is not None:
                node.closed = True
                node.witness = (c.id, w[0], w[1])
                self.stats["closed"] += 1
                return True
        return False

    def split(self, node: TreeNode, lit: Literal) -> tuple[TreeNode, TreeNode]:
        branch = node.branch()
        if _on_branch(branch, lit) or _on_branch(branch, lit.complement()):
            raise ValueError(f"cannot split on {lit.pretty()}: already decided on the branch")
        left = TreeNode(lit, node, depth=node.depth + 1)
        right = TreeNode(lit.complement(), node, depth=node.depth + 1)
        node.children = [left, right]
        self.stats["splits"] += 1
        return left, right

    def next_split(self, node: TreeNode) -> Literal | None:
        """Split literal for an open branch, or None when the branch is saturated."""
        branch = node.branch()
        for c in self.clauses:
            f = find_falsified_instance(branch, c, self.fresh)
            if f is None:
                continue
            i = eligible_literal(branch, f.instance)
            if i is None:
                raise AssertionError(f"falsified instance {f.instance!r} is neither closable nor splittable")
            return f.instance.literals[i]
        return None

    def dump(self) -> str:
        lines: list[str] = []

        def walk(n: TreeNode, depth: int) -> None:
            lines.append("  " * depth + n.literal.pretty() + (" ★" if n.closed else ""))
            for ch in n.children:
                walk(ch, depth + 1)

        walk(self.root, 0)
        return "\n".join(lines) + "\n"


def branch_model(branch: Sequence[Literal], domain) -> ModelCertificate:
    literals = [b for b in branch if not isinstance(b.atom, Var)]
    return ModelCertificate(literals, tuple(domain or ()), [None] * len(literals), "branch")


def fdpll_prove(clauses: Sequence[Clause], limits: Limits | None = None, initial_bound: int = 16) -> EngineResult:
    limits = limits or Limits()
    budget = Budget(limits)
    fresh = Fresh("f")
    inputs = prepare_input(clauses, fresh)
    tree = SemanticTree(inputs, fresh)
    domain = signature_domain(inputs)
    found: TreeNode | None = None

    def result(status: Status, **kw) -> EngineResult:
        stats = dict(tree.stats, bound=bound)
        return EngineResult(ENGINE, status, stats=stats, dump=tree.dump(), **kw)

    def sat() -> EngineResult:
        return result(Status.SAT, model=branch_model(found.branch(), domain))

    bound = initial_bound
    if any(not c.literals for c in inputs):
        tree.root.closed = True
        return result(Status.UNSAT, proof=["input contains the empty clause"])
    tree.check_closed(tree.root)
    stack = [] if tree.root.closed else [tree.root]
    cut: list[TreeNode] = []
    try:
        while True:
            while stack:
                budget.check(tree.stats["splits"])
                node = stack.pop()
                if node.depth >= bound:
                    cut.append(node)
                    continue
                lit = tree.next_split(node)
                if lit is None:
                    if found is None:
                        found = node
                    if not limits.explore_all:
                        return sat()
                    continue
                left, right = tree.split(node, lit)
                tree.check_closed(left)
                tree.check_closed(right)
                stack.extend(n for n in (right, left) if not n.closed)
            if not cut:
                break
            bound *= 2
            stack, cut = list(reversed(cut)), []
    except ResourceOut as e:
        if found is not None:
            return sat()
        return result(Status.RESOURCE_OUT, reason=str(e))
    if found is not None:
        return sat()
    return result(Status.UNSAT, proof=tree.dump().splitlines())
