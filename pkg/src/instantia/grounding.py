"""Grounding every variable to one reserved constant, and the bridge to SAT."""

from __future__ import annotations

from typing import Iterable, Sequence

from .logic import Clause, Fn, Literal, Term, Var, const
from .sat import Assignment, PropCNF, format_dimacs

BOT_NAME = "$bot"
BOT = const(BOT_NAME)

Path = dict  # clause id -> index of the selected literal


class ReservedSymbolError(ValueError):
    pass


def ground_term(t: Term) -> Term:
    if t.ground:
        return t
    if isinstance(t, Var):
        return BOT
    return Fn(t.symbol, tuple(ground_term(a) for a in t.args))


def ground_literal(lit: Literal) -> Literal:
    atom = ground_term(lit.atom)
    return lit if atom is lit.atom else Literal(lit.positive, atom)


def bottom_ground(c: Clause | Literal | Term):
    """Replace every variable by the reserved constant."""
    if isinstance(c, Term):
        return ground_term(c)
    if isinstance(c, Literal):
        return ground_literal(c)
    from dataclasses import replace

    return replace(c, literals=tuple(ground_literal(l) for l in c.literals))


def uses_reserved(t: Term) -> bool:
    if isinstance(t, Var):
        return False
    if t.symbol == BOT_NAME:
        return True
    return any(uses_reserved(a) for a in t.args)


def check_reserved(clauses: Iterable[Clause]) -> None:
    for c in clauses:
        for lit in c.literals:
            if uses_reserved(lit.atom):
                raise ReservedSymbolError(f"clause {c.id} uses the reserved symbol {BOT_NAME}")


class PropAbstraction:
    """Grounded atoms numbered as propositional variables, plus the CNF.

    Clauses are appended incrementally; ``sources[k]`` is the id of the
    first-order clause behind propositional clause ``k``.
    """

    def __init__(self):
        self.atom_map: dict[Term, int] = {}
        self.atoms: list[Term] = [None]
        self.cnf: list[list[int]] = []
        self.sources: list[int] = []
        self.index_of: dict[int, int] = {}

    @property
    def num_vars(self) -> int:
        return len(self.atoms) - 1

    def var(self, atom: Term) -> int:
        v = self.atom_map.get(atom)
        if v is None:
            v = len(self.atoms)
            self.atom_map[atom] = v
            self.atoms.append(atom)
        return v

    def literal(self, lit: Literal) -> int:
        v = self.var(ground_term(lit.atom))
        return v if lit.positive else -v

    def add(self, c: Clause) -> tuple[int, list[int]]:
        """Append the image of ``c``; returns (prop clause index, clause)."""
        prop = [self.literal(l) for l in c.literals]
        k = len(self.cnf)
        self.cnf.append(prop)
        self.sources.append(c.id)
        self.index_of.setdefault(c.id, k)
        return k, prop

    def as_cnf(self) -> PropCNF:
        return PropCNF(self.num_vars, [list(c) for c in self.cnf])

    def value(self, assignment: Assignment, lit: Literal) -> bool:
        p = self.literal(lit)
        return assignment.get(abs(p), False) == (p > 0)

    def to_dimacs(self) -> str:
        comments = [f"{v} {self.atoms[v]!r}" for v in range(1, len(self.atoms))]
        return format_dimacs(self.as_cnf(), comments)


def abstract(clauses: Iterable[Clause]) -> PropAbstraction:
    pa = PropAbstraction()
    for c in clauses:
        pa.add(c)
    return pa


def extract_path(assignment: Assignment, clauses: Sequence[Clause], abstraction: PropAbstraction) -> Path:
    """Pick, per clause, the first literal whose grounded image is true."""
    path: Path = {}
    for c in clauses:
        for i, lit in enumerate(c.literals):
            if abstraction.value(assignment, lit):
                path[c.id] = i
                break
        else:
            raise ValueError(f"assignment falsifies the image of clause {c.id}")
    return path
