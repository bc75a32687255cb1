"""Model certificates for satisfiable answers.

A certificate is a list of possibly non-ground literals over a finite
domain.  A ground atom takes the sign of the most specific literal whose atom
it instantiates; among incomparable most specific literals the one listed
last wins, and atoms matched by nothing are false.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .logic import (
    Clause,
    Fn,
    Literal,
    Term,
    Var,
    apply_literal,
    atom_instance_of,
    match_literals,
    term_vars,
)


class Interpretation:
    """Most-specific-literal-wins reading of a literal list."""

    def __init__(self, literals: Iterable[Literal]):
        self.literals = list(literals)
        self._exact: dict[Term, int] = {}
        self._general: dict[tuple, list[int]] = defaultdict(list)
        self._wild: list[int] = []
        for i, lit in enumerate(self.literals):
            atom = lit.atom
            if isinstance(atom, Var):
                self._wild.append(i)
            elif atom.ground:
                self._exact[atom] = i
            else:
                self._general[(atom.symbol, len(atom.args))].append(i)

    def deciding(self, atom: Term) -> int | None:
        """Index of the literal that decides ``atom`` (ground), or None."""
        i = self._exact.get(atom)
        if i is not None:
            return i
        candidates = [
            j for j in self._general.get((atom.symbol, len(atom.args)), ())
            if atom_instance_of(atom, self.literals[j].atom)
        ]
        candidates += [j for j in self._wild]
        if not candidates:
            return None
        if len(candidates) == 1:
            return candidates[0]
        lits = self.literals
        maximal = [
            j for j in candidates
            if not any(
                k != j
                and atom_instance_of(lits[k].atom, lits[j].atom)
                and not atom_instance_of(lits[j].atom, lits[k].atom)
                for k in candidates
            )
        ]
        return max(maximal)

    def value(self, atom: Term) -> bool:
        i = self.deciding(atom)
        return False if i is None else self.literals[i].positive

    def satisfies_literal(self, lit: Literal) -> bool:
        return self.value(lit.atom) == lit.positive


def candidate_value(literals: Sequence[Literal], atom: Term) -> bool:
    return Interpretation(literals).value(atom)


def ground_instances(c: Clause | Sequence[Literal], domain: Sequence[Term]):
    """Yield (substitution, ground literals) in lexicographic domain order."""
    literals = c.literals if isinstance(c, Clause) else tuple(c)
    seen: dict[Var, None] = {}
    for lit in literals:
        for v in term_vars(lit.atom):
            seen[v] = None
    variables = tuple(seen)
    for values in itertools.product(domain, repeat=len(variables)):
        s = dict(zip(variables, values))
        yield s, tuple(apply_literal(s, l) for l in literals)


def falsified_instance(interp: Interpretation, c: Clause, domain: Sequence[Term]):
    """First ground instance of ``c`` false under ``interp``, or None."""
    for s, ground in ground_instances(c, domain):
        if not any(interp.satisfies_literal(l) for l in ground):
            return s
    return None


def satisfies_all(interp: Interpretation, clauses: Iterable[Clause], domain: Sequence[Term]) -> bool:
    return all(falsified_instance(interp, c, domain) is None for c in clauses)


@dataclass
class ModelCertificate:
    literals: list[Literal]
    domain: tuple[Term, ...]
    provenance: list[int | None] = field(default_factory=list)
    method: str = "lifted"

    def interpretation(self) -> Interpretation:
        return Interpretation(self.literals)

    def value(self, atom: Term) -> bool:
        return self.interpretation().value(atom)


def generation_model(selected: Sequence[tuple[Clause, int]], domain: Sequence[Term]) -> list[Literal]:
    """Ground model built by letting most specific clause instances generate.

    ``selected`` pairs each clause with the index of its selected literal.
    Clauses are visited in id order and their ground instances in
    lexicographic order; a ground instance that is not yet true and whose
    clause is the most specific representative of it adds its selected
    literal when that atom is still undefined.
    """
    ordered = sorted(selected, key=lambda cs: cs[0].id)
    by_shape: dict[tuple, list[Clause]] = defaultdict(list)
    for c, _ in ordered:
        by_shape[_shape(c)].append(c)
    defined: dict[Term, bool] = {}
    for c, k in ordered:
        finer = [
            d for d in by_shape[_shape(c)]
            if d is not c and match_literals(c.literals, d.literals) is not None
            and match_literals(d.literals, c.literals) is None
        ]
        for _, ground in ground_instances(c, domain):
            if finer and any(match_literals(d.literals, ground) is not None for d in finer):
                continue
            if any(defined.get(l.atom) == l.positive for l in ground):
                continue
            lit = ground[k]
            if lit.atom not in defined:
                defined[lit.atom] = lit.positive
    return [Literal(v, a) for a, v in defined.items()]


def _shape(c: Clause) -> tuple:
    return tuple((l.positive, l.predicate) for l in c.literals)


def certify(selected: Sequence[tuple[Clause, int]], clauses: Sequence[Clause], domain: Sequence[Term] | None) -> ModelCertificate:
    """Certificate for a closed clause set with a consistent selection.

    The selected literals themselves are tried first; when they do not
    satisfy ``clauses`` over ``domain`` the ground generation model is used.
    Without a finite domain (non-EPR input) the lifted literals are returned
    unchecked.
    """
    ordered = sorted(selected, key=lambda cs: cs[0].id)
    lifted = [c.literals[k] for c, k in ordered]
    provenance = [c.id for c, _ in ordered]
    if domain is None:
        return ModelCertificate(lifted, (), provenance, "lifted-unchecked")
    domain = tuple(domain)
    if satisfies_all(Interpretation(lifted), clauses, domain):
        return ModelCertificate(lifted, domain, provenance, "lifted")
    ground = generation_model(selected, domain)
    return ModelCertificate(ground, domain, [None] * len(ground), "generation")


def signature_domain(clauses: Iterable[Clause]) -> tuple[Term, ...] | None:
    """Sorted constants of ``clauses``; None when a proper function symbol occurs.

    A clause set without constants gets one fresh constant.
    """
    consts: set[Term] = set()
    symbols: set[str] = set()
    stack = []
    for c in clauses:
        for lit in c.literals:
            if isinstance(lit.atom, Fn):
                symbols.add(lit.atom.symbol)
                stack.extend(lit.atom.args)
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            continue
        if t.args:
            return None
        consts.add(t)
        symbols.add(t.symbol)
    if consts:
        return tuple(sorted(consts))
    i = 0
    while f"c{i}" in symbols:
        i += 1
    return (Fn(f"c{i}"),)


def ground_model(clauses: Sequence[Clause], domain: Sequence[Term], seed: int | None = None) -> list[Literal] | None:
    """True ground atoms of some model of ``clauses`` over ``domain``, via SAT."""
    from .grounding import PropAbstraction
    from .sat import Solver

    pa = PropAbstraction()
    solver = Solver(seed=seed)
    for c in clauses:
        for _, ground in ground_instances(c, domain):
            _, prop = pa.add(Clause(ground, c.id))
            solver.ensure_vars(pa.num_vars)
            solver.add_clause(prop, c.id)
    if not solver.solve():
        return None
    return [Literal(True, pa.atoms[v]) for v, val in solver.model.items() if val]


def certify_with_fallback(selected, clauses, domain, seed=None) -> ModelCertificate | None:
    """Like :func:`certify`, completing by a ground SAT model when needed."""
    cert = certify(selected, clauses, domain)
    if cert.method in ("lifted", "lifted-unchecked"):
        return cert
    if satisfies_all(cert.interpretation(), clauses, cert.domain):
        return cert
    ground = ground_model(clauses, cert.domain, seed)
    if ground is None:
        return None
    return ModelCertificate(ground, cert.domain, [None] * len(ground), "ground")


def format_certificate(cert: ModelCertificate) -> str:
    """Text form: a domain header, then one literal per line (default false)."""
    from .tptp import format_literal, format_term

    lines = [
        "% domain: " + ", ".join(format_term(t) for t in cert.domain),
        f"% method: {cert.method}",
    ]
    lines += [format_literal(l) for l in cert.literals]
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> ModelCertificate:
    from .tptp import parse_literal, parse_term

    domain: tuple[Term, ...] = ()
    method = "file"
    literals = []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("% domain:"):
            names = [n.strip() for n in line[len("% domain:"):].split(",") if n.strip()]
            domain = tuple(parse_term(n) for n in names)
        elif line.startswith("% method:"):
            method = line.split(":", 1)[1].strip()
        elif line and not line.startswith("%"):
            literals.append(parse_literal(line))
    return ModelCertificate(literals, domain, [None] * len(literals), method)
