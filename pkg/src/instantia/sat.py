"""Propositional satisfiability.

Two solvers share one contract: :func:`dpll` is the plain splitting
procedure built on :func:`simplify`; :class:`Solver` is the incremental
conflict-driven solver (two watched literals, first-UIP learning) that the
engines use.  Clauses are lists of non-zero signed variable indices.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Assignment = dict  # variable index -> bool


@dataclass
class PropCNF:
    num_vars: int = 0
    clauses: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        for c in self.clauses:
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range 1..{self.num_vars}")


def satisfies(assignment: Assignment, clauses: Iterable[Sequence[int]]) -> bool:
    return all(any(assignment.get(abs(l)) == (l > 0) for l in c) for c in clauses)


def simplify(clauses: Iterable[Sequence[int]], var: int, value: bool) -> list[list[int]]:
    """Replace ``var`` by ``value``: drop satisfied clauses, shorten the rest.

    An empty list in the result signals a falsified clause.
    """
    true_lit = var if value else -var
    out = []
    for c in clauses:
        if true_lit in c:
            continue
        out.append([l for l in c if l != -true_lit])
    return out


def _branch_var(clauses: list[list[int]]) -> int:
    counts = Counter(abs(l) for c in clauses for l in c)
    return min(counts, key=lambda v: (-counts[v], v))


def dpll(clauses: Iterable[Sequence[int]], num_vars: int | None = None, pure: bool = True) -> Assignment | None:
    """Recursive DPLL with unit propagation and pure-literal elimination.

    Returns a total model over ``1..num_vars`` or None when unsatisfiable.
    """
    clauses = [list(dict.fromkeys(c)) for c in clauses]
    if num_vars is None:
        num_vars = max((abs(l) for c in clauses for l in c), default=0)
    model = _dpll(clauses, {}, pure)
    if model is None:
        return None
    for v in range(1, num_vars + 1):
        model.setdefault(v, False)
    return model


def _dpll(clauses: list[list[int]], assignment: Assignment, pure: bool) -> Assignment | None:
    assignment = dict(assignment)
    while True:
        if any(not c for c in clauses):
            return None
        if not clauses:
            return assignment
        unit = next((c[0] for c in clauses if len(c) == 1), None)
        if unit is None and pure:
            lits = {l for c in clauses for l in c}
            unit = next((l for l in sorted(lits, key=abs) if -l not in lits), None)
        if unit is None:
            break
        assignment[abs(unit)] = unit > 0
        clauses = simplify(clauses, abs(unit), unit > 0)
    v = _branch_var(clauses)
    for value in (True, False):
        model = _dpll(simplify(clauses, v, value), {**assignment, v: value}, pure)
        if model is not None:
            return model
    return None


class Solver:
    """Incremental CDCL solver.

    Clauses may be added between :meth:`solve` calls; learned clauses are kept
    since clause addition never invalidates them.  Every clause carries a set
    of origin tags so that an unsatisfiable core over the tags can be reported.
    Branching picks the unassigned variable with the highest occurrence count
    (learned clauses included), ties going to the lowest index.
    """

    def __init__(self, num_vars: int = 0, seed: int | None = None):
        self.num_vars = 0
        self._value: list[int] = [0]  # 1 true, -1 false, 0 unassigned
        self._level: list[int] = [0]
        self._reason: list[int] = [-1]
        self._activity: list[int] = [0]
        self._root_origin: list[frozenset] = [frozenset()]
        self._watches: dict[int, list[int]] = {}
        self._clauses: list[list[int]] = []
        self._origins: list[frozenset] = []
        self._trail: list[int] = []
        self._trail_lim: list[int] = []
        self._qhead = 0
        self._rng = random.Random(seed) if seed is not None else None
        self.conflict_core: frozenset | None = None
        self.model: Assignment | None = None
        self.stats = Counter()
        self.ensure_vars(num_vars)

    # -- setup -------------------------------------------------------------

    def ensure_vars(self, n: int) -> None:
        while self.num_vars < n:
            self.num_vars += 1
            v = self.num_vars
            self._value.append(0)
            self._level.append(0)
            self._reason.append(-1)
            self._activity.append(0)
            self._root_origin.append(frozenset())
            self._watches[v] = []
            self._watches[-v] = []

    def _lit_value(self, lit: int) -> int:
        val = self._value[abs(lit)]
        return val if lit > 0 else -val

    def add_clause(self, lits: Iterable[int], origin=None) -> None:
        """Add a clause tagged with ``origin`` (any hashable, or None)."""
        if self.conflict_core is not None:
            return
        self._backtrack(0)
        lits = list(dict.fromkeys(lits))
        tags = frozenset() if origin is None else frozenset([origin])
        if any(-l in lits for l in lits):
            return  # tautology: never part of a core
        if lits:
            self.ensure_vars(max(abs(l) for l in lits))
        for l in lits:
            self._activity[abs(l)] += 1
        self.stats["clauses"] += 1
        if not lits:
            self.conflict_core = tags
            return
        # order: non-false literals first so the watches are meaningful
        lits.sort(key=lambda l: self._lit_value(l) == -1)
        non_false = [l for l in lits if self._lit_value(l) != -1]
        if not non_false:
            core = set(tags)
            for l in lits:
                core |= self._root_origin[abs(l)]
            self.conflict_core = frozenset(core)
            return
        ci = self._store(lits, tags)
        if len(non_false) == 1 and self._lit_value(lits[0]) == 0:
            self._enqueue(lits[0], ci)

    def _store(self, lits: list[int], tags: frozenset) -> int:
        ci = len(self._clauses)
        self._clauses.append(lits)
        self._origins.append(tags)
        if len(lits) >= 2:
            self._watches[lits[0]].append(ci)
            self._watches[lits[1]].append(ci)
        return ci

    # -- search ------------------------------------------------------------

    def _enqueue(self, lit: int, reason: int) -> None:
        v = abs(lit)
        self._value[v] = 1 if lit > 0 else -1
        level = len(self._trail_lim)
        self._level[v] = level
        self._reason[v] = reason
        self._trail.append(lit)
        if level == 0 and reason >= 0:
            tags = set(self._origins[reason])
            for q in self._clauses[reason]:
                if q != lit:
                    tags |= self._root_origin[abs(q)]
            self._root_origin[v] = frozenset(tags)

    def _propagate(self) -> int:
        """Unit propagation; index of a conflicting clause or -1."""
        value = self._value
        while self._qhead < len(self._trail):
            lit = self._trail[self._qhead]
            self._qhead += 1
            false_lit = -lit
            ws = self._watches[false_lit]
            kept = []
            i = 0
            n = len(ws)
            while i < n:
                ci = ws[i]
                i += 1
                c = self._clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                fv = value[abs(first)]
                if (fv if first > 0 else -fv) == 1:
                    kept.append(ci)
                    continue
                for k in range(2, len(c)):
                    q = c[k]
                    qv = value[abs(q)]
                    if (qv if q > 0 else -qv) != -1:
                        c[1], c[k] = q, false_lit
                        self._watches[q].append(ci)
                        break
                else:
                    kept.append(ci)
                    if (fv if first > 0 else -fv) == -1:
                        kept.extend(ws[i:])
                        self._watches[false_lit] = kept
                        self._qhead = len(self._trail)
                        return ci
                    self._enqueue(first, ci)
            self._watches[false_lit] = kept
        return -1

    def _analyze(self, confl: int) -> tuple[list[int], int, frozenset]:
        seen = set()
        learnt = [0]
        tags = set(self._origins[confl])
        current = len(self._trail_lim)
        counter = 0
        p = 0
        idx = len(self._trail) - 1
        clause = self._clauses[confl]
        while True:
            for q in clause:
                if q == p:
                    continue
                v = abs(q)
                if v in seen:
                    continue
                seen.add(v)
                if self._level[v] == 0:
                    tags |= self._root_origin[v]
                    continue
                self._activity[v] += 1
                if self._level[v] == current:
                    counter += 1
                else:
                    learnt.append(q)
            while abs(self._trail[idx]) not in seen:
                idx -= 1
            p = self._trail[idx]
            idx -= 1
            counter -= 1
            if counter == 0:
                break
            reason = self._reason[abs(p)]
            clause = self._clauses[reason]
            tags |= self._origins[reason]
        learnt[0] = -p
        bt = 0
        if len(learnt) > 1:
            best = max(range(1, len(learnt)), key=lambda k: self._level[abs(learnt[k])])
            learnt[1], learnt[best] = learnt[best], learnt[1]
            bt = self._level[abs(learnt[1])]
        return learnt, bt, frozenset(tags)

    def _backtrack(self, level: int) -> None:
        if len(self._trail_lim) <= level:
            return
        start = self._trail_lim[level]
        for lit in self._trail[start:]:
            v = abs(lit)
            self._value[v] = 0
            self._reason[v] = -1
        del self._trail[start:]
        del self._trail_lim[level:]
        self._qhead = min(self._qhead, len(self._trail))

    def _pick(self) -> int:
        best, best_act = 0, -1
        value, act = self._value, self._activity
        for v in range(1, self.num_vars + 1):
            if value[v] == 0 and act[v] > best_act:
                best, best_act = v, act[v]
        if best == 0:
            return 0
        if self._rng is not None and self._rng.random() < 0.5:
            return best
        return -best

    def solve(self) -> bool:
        """True (with :attr:`model`) if satisfiable; else :attr:`conflict_core`."""
        self.stats["solves"] += 1
        self.model = None
        if self.conflict_core is not None:
            return False
        self._backtrack(0)
        self._qhead = 0
        while True:
            confl = self._propagate()
            if confl >= 0:
                self.stats["conflicts"] += 1
                if not self._trail_lim:
                    core = set(self._origins[confl])
                    for q in self._clauses[confl]:
                        core |= self._root_origin[abs(q)]
                    self.conflict_core = frozenset(core)
                    return False
                learnt, bt, tags = self._analyze(confl)
                self._backtrack(bt)
                ci = self._store(learnt, tags)
                self._enqueue(learnt[0], ci)
            else:
                lit = self._pick()
                if lit == 0:
                    self.model = {v: self._value[v] == 1 for v in range(1, self.num_vars + 1)}
                    return True
                self.stats["decisions"] += 1
                self._trail_lim.append(len(self._trail))
                self._enqueue(lit, -1)


def solve(cnf: PropCNF | Sequence[Sequence[int]], seed: int | None = None) -> Assignment | None:
    """Model of ``cnf`` or None when unsatisfiable."""
    if isinstance(cnf, PropCNF):
        num_vars, clauses = cnf.num_vars, cnf.clauses
    else:
        clauses = cnf
        num_vars = max((abs(l) for c in clauses for l in c), default=0)
    s = Solver(num_vars, seed=seed)
    for i, c in enumerate(clauses):
        s.add_clause(c, i)
    return s.model if s.solve() else None


# -- DIMACS ------------------------------------------------------------------


def parse_dimacs(text: str) -> PropCNF:
    num_vars = 0
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"line {lineno}: bad problem line {line!r}")
            num_vars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
                num_vars = max(num_vars, abs(lit))
    if current:
        clauses.append(current)
    return PropCNF(num_vars, clauses)


def format_dimacs(cnf: PropCNF, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {cnf.num_vars} {len(cnf.clauses)}")
    lines.extend(" ".join(map(str, c + [0])) for c in cnf.clauses)
    return "\n".join(lines) + "\n"


def format_model(model: Assignment) -> str:
    lits = [v if model[v] else -v for v in sorted(model)]
    return "v " + " ".join(map(str, lits + [0]))
