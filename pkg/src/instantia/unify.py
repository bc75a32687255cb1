"""Most general unifiers, one-way matching and links between clauses."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .logic import (
    Clause,
    Fn,
    Literal,
    Subst,
    Term,
    Var,
    apply_term,
    match_into,
)


def _walk(t: Term, b: Subst) -> Term:
    while isinstance(t, Var):
        nxt = b.get(t)
        if nxt is None:
            return t
        t = nxt
    return t


def _occurs(v: Var, t: Term, b: Subst) -> bool:
    stack = [t]
    while stack:
        t = _walk(stack.pop(), b)
        if t is v:
            return True
        if isinstance(t, Fn) and not t.ground:
            stack.extend(t.args)
    return False


def _resolve(b: Subst) -> Subst:
    """Turn triangular bindings into an idempotent substitution."""
    out: Subst = {}

    def res(t: Term) -> Term:
        if t.ground:
            return t
        if isinstance(t, Var):
            if t in out:
                return out[t]
            nxt = b.get(t)
            if nxt is None:
                return t
            r = res(nxt)
            out[t] = r
            return r
        return Fn(t.symbol, tuple(res(a) for a in t.args))

    for v in b:
        res(v)
    return {v: t for v, t in out.items() if t is not v}


def unify_all(pairs: Iterable[tuple[Term, Term]], subst: Subst | None = None) -> Subst | None:
    """Simultaneous most general unifier of all ``pairs``, extending ``subst``."""
    b: Subst = dict(subst) if subst else {}
    stack = list(pairs)
    while stack:
        s, t = stack.pop()
        s = _walk(s, b)
        t = _walk(t, b)
        if s is t:
            continue
        if isinstance(s, Var):
            if _occurs(s, t, b):
                return None
            b[s] = t
        elif isinstance(t, Var):
            if _occurs(t, s, b):
                return None
            b[t] = s
        elif s.symbol != t.symbol or len(s.args) != len(t.args):
            return None
        else:
            stack.extend(zip(s.args, t.args))
    return _resolve(b)


def mgu(a: Term | Literal, b: Term | Literal) -> Subst | None:
    """Robinson unification with occurs check; None when not unifiable.

    Literals are unified through their atoms (polarity is ignored here; link
    detection decides polarity).
    """
    if isinstance(a, Literal):
        a = a.atom
    if isinstance(b, Literal):
        b = b.atom
    return unify_all([(a, b)])


def match(general: Term | Literal, specific: Term | Literal) -> Subst | None:
    """One-way matcher binding only variables of ``general``."""
    if isinstance(general, Literal) or isinstance(specific, Literal):
        if not (isinstance(general, Literal) and isinstance(specific, Literal)):
            raise TypeError("match() needs two terms or two literals")
        if general.positive != specific.positive:
            return None
        general, specific = general.atom, specific.atom
    s: Subst = {}
    if not match_into(general, specific, s):
        return None
    return {v: t for v, t in s.items() if t is not v}


def is_unifier(s: Subst, a: Term, b: Term) -> bool:
    return apply_term(s, a) is apply_term(s, b)


@dataclass(frozen=True)
class Link:
    """Complementary literal pair across two clauses, with its MGU."""

    clause1: int
    index1: int
    clause2: int
    index2: int
    mgu: tuple[tuple[Var, Term], ...]

    @property
    def sigma(self) -> Subst:
        return dict(self.mgu)

    @property
    def key(self) -> tuple[int, int, int, int]:
        a, b = (self.clause1, self.index1), (self.clause2, self.index2)
        return (*min(a, b), *max(a, b))


def make_link(c: Clause, i: int, d: Clause, j: int) -> Link | None:
    k, l = c.literals[i], d.literals[j]
    if k.positive == l.positive or k.predicate != l.predicate:
        return None
    s = unify_all([(k.atom, l.atom)])
    if s is None:
        return None
    return Link(c.id, i, d.id, j, tuple(s.items()))


class LinkIndex:
    """Literal occurrences bucketed by (predicate, polarity)."""

    def __init__(self, clauses: Iterable[Clause] = ()):
        self._buckets: dict[tuple, list[tuple[Clause, int]]] = defaultdict(list)
        for c in clauses:
            self.add(c)

    def add(self, c: Clause) -> None:
        for i, lit in enumerate(c.literals):
            self._buckets[(lit.predicate, lit.positive)].append((c, i))

    def partners(self, lit: Literal) -> list[tuple[Clause, int]]:
        return self._buckets.get((lit.predicate, not lit.positive), [])

    def links(self, c: Clause) -> list[Link]:
        out = []
        for i, lit in enumerate(c.literals):
            for d, j in self.partners(lit):
                if d.id == c.id:
                    continue
                s = unify_all([(lit.atom, d.literals[j].atom)])
                if s is not None:
                    out.append(Link(c.id, i, d.id, j, tuple(s.items())))
        return out


def find_links(c: Clause, against: Sequence[Clause]) -> list[Link]:
    """Every link between a literal of ``c`` and a literal of another clause.

    Clauses are expected to be renamed apart; ``c`` is not linked with
    itself (pass a renamed copy with a distinct id for that).
    """
    return LinkIndex(against).links(c)

