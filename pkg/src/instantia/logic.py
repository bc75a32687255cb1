"""Terms, literals, clauses and substitutions.

Terms are hash-consed: constructing the same structure twice returns the same
object, so equality is identity and hashing is by address.  Substitutions are
plain ``dict[Var, Term]`` mappings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, NamedTuple, Sequence, Union


class Term:
    __slots__ = ()

    ground: bool

    def __lt__(self, other: "Term") -> bool:
        return sort_key(self) < sort_key(other)


class Var(Term):
    __slots__ = ("name",)
    _table: dict[str, "Var"] = {}
    ground = False

    def __new__(cls, name: str) -> "Var":
        v = cls._table.get(name)
        if v is None:
            v = object.__new__(cls)
            object.__setattr__(v, "name", name)
            cls._table[name] = v
        return v

    def __reduce__(self):
        return (Var, (self.name,))

    def __repr__(self) -> str:
        return self.name

    @property
    def display(self) -> str:
        """Name without the renaming suffix, for human-facing dumps."""
        return self.name.split("_", 1)[0] or self.name


class Fn(Term):
    """Constant (no arguments) or compound term; also used for atoms."""

    __slots__ = ("symbol", "args", "ground", "_vars")
    _table: dict[tuple, "Fn"] = {}

    def __new__(cls, symbol: str, args: tuple[Term, ...] = ()) -> "Fn":
        key = (symbol, args)
        t = cls._table.get(key)
        if t is None:
            t = object.__new__(cls)
            t.symbol = symbol
            t.args = args
            t.ground = all(a.ground for a in args)
            t._vars = None
            cls._table[key] = t
        return t

    def __reduce__(self):
        return (Fn, (self.symbol, self.args))

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def is_constant(self) -> bool:
        return not self.args

    def __repr__(self) -> str:
        if not self.args:
            return self.symbol
        return f"{self.symbol}({','.join(map(repr, self.args))})"


def const(name: str) -> Fn:
    return Fn(name, ())


def sort_key(t: Term) -> tuple:
    if isinstance(t, Var):
        return (0, t.name)
    return (1, t.symbol, tuple(sort_key(a) for a in t.args))


def term_vars(t: Term) -> tuple[Var, ...]:
    """Variables of ``t`` in left-to-right first-occurrence order."""
    if isinstance(t, Var):
        return (t,)
    if t.ground:
        return ()
    if t._vars is None:
        seen: dict[Var, None] = {}
        for a in t.args:
            for v in term_vars(a):
                seen[v] = None
        t._vars = tuple(seen)
    return t._vars


def occurs(v: Var, t: Term) -> bool:
    if t is v:
        return True
    if isinstance(t, Var) or t.ground:
        return False
    return v in term_vars(t)


def term_depth(t: Term) -> int:
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(term_depth(a) for a in t.args)


class Literal(NamedTuple):
    positive: bool
    atom: Term

    def complement(self) -> "Literal":
        return Literal(not self.positive, self.atom)

    @property
    def predicate(self) -> tuple[str, int]:
        atom = self.atom
        if isinstance(atom, Var):
            return ("", -1)
        return (atom.symbol, len(atom.args))

    def __repr__(self) -> str:
        return repr(self.atom) if self.positive else f"~{self.atom!r}"

    def pretty(self) -> str:
        """Logic-notation rendering (¬, variables without their rename suffix)."""
        return ("" if self.positive else "¬") + pretty_term(self.atom)


def pretty_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.display
    if not t.args:
        return t.symbol
    return f"{t.symbol}({','.join(pretty_term(a) for a in t.args)})"


def pos(atom: Term) -> Literal:
    return Literal(True, atom)


def neg(atom: Term) -> Literal:
    return Literal(False, atom)


@dataclass(frozen=True)
class Origin:
    """Provenance of a clause: an input clause or an engine inference."""

    engine: str = "input"
    parents: tuple[int, ...] = ()
    subst: tuple[tuple[Var, Term], ...] = ()
    name: str | None = None

    @property
    def is_input(self) -> bool:
        return self.engine == "input"

    def describe(self) -> str:
        if self.is_input:
            return f"input({self.name})" if self.name else "input"
        sigma = "{" + ", ".join(f"{v!r}->{t!r}" for v, t in self.subst) + "}"
        return f"{self.engine}({', '.join(map(str, self.parents))}, {sigma})"


INPUT = Origin()


@dataclass(eq=False)
class Clause:
    literals: tuple[Literal, ...]
    id: int = -1
    origin: Origin = field(default=INPUT)

    def __post_init__(self):
        if not isinstance(self.literals, tuple):
            self.literals = tuple(self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __getitem__(self, i: int) -> Literal:
        return self.literals[i]

    @property
    def is_empty(self) -> bool:
        return not self.literals

    @property
    def is_ground(self) -> bool:
        return all(lit.atom.ground for lit in self.literals)

    def variables(self) -> tuple[Var, ...]:
        seen: dict[Var, None] = {}
        for lit in self.literals:
            for v in term_vars(lit.atom):
                seen[v] = None
        return tuple(seen)

    def __repr__(self) -> str:
        if not self.literals:
            return "$false"
        return " | ".join(map(repr, self.literals))

    def pretty(self) -> str:
        if not self.literals:
            return "□"
        return " ∨ ".join(lit.pretty() for lit in self.literals)


Subst = dict
Substitutable = Union[Term, Literal, Clause, Sequence[Literal]]


def apply_term(s: Subst, t: Term) -> Term:
    if t.ground:
        return t
    if isinstance(t, Var):
        return s.get(t, t)
    return Fn(t.symbol, tuple(apply_term(s, a) for a in t.args))


def apply_literal(s: Subst, lit: Literal) -> Literal:
    atom = apply_term(s, lit.atom)
    return lit if atom is lit.atom else Literal(lit.positive, atom)


def apply(s: Subst, x):
    """Apply ``s`` simultaneously to a term, literal, clause or literal tuple."""
    if not s:
        return x
    if isinstance(x, Term):
        return apply_term(s, x)
    if isinstance(x, Literal):
        return apply_literal(s, x)
    if isinstance(x, Clause):
        return replace(x, literals=tuple(apply_literal(s, l) for l in x.literals))
    return tuple(apply_literal(s, l) for l in x)


def compose(s1: Subst, s2: Subst) -> Subst:
    """Substitution equivalent to applying ``s1`` and then ``s2``."""
    out: Subst = {}
    for v, t in s1.items():
        t2 = apply_term(s2, t)
        if t2 is not v:
            out[v] = t2
    for v, t in s2.items():
        if v not in s1 and t is not v:
            out[v] = t
    return out


def restrict(s: Subst, variables: Iterable[Var]) -> Subst:
    return {v: s[v] for v in variables if v in s and s[v] is not v}


def is_renaming(s: Subst, variables: Iterable[Var]) -> bool:
    """True when ``s`` maps ``variables`` injectively onto variables."""
    images = set()
    for v in variables:
        t = s.get(v, v)
        if not isinstance(t, Var) or t in images:
            return False
        images.add(t)
    return True


class Fresh:
    """Source of fresh variables; owned by a single engine run."""

    def __init__(self, prefix: str = ""):
        self.prefix = prefix
        self._counter = itertools.count(1)

    def var(self, base: str = "v") -> Var:
        base = base.split("_", 1)[0] or "v"
        return Var(f"{base}_{self.prefix}{next(self._counter)}")

    def renaming(self, variables: Iterable[Var]) -> Subst:
        return {v: self.var(v.name) for v in variables}


def rename_apart(c: Clause, fresh: Fresh) -> Clause:
    """Variant of ``c`` whose variables have never been issued before."""
    variables = c.variables()
    if not variables:
        return c
    return apply(fresh.renaming(variables), c)


def rename_literal(lit: Literal, fresh: Fresh) -> Literal:
    variables = term_vars(lit.atom)
    if not variables:
        return lit
    return apply_literal(fresh.renaming(variables), lit)


_CANON: list[Var] = []


def _canon_var(i: int) -> Var:
    while len(_CANON) <= i:
        _CANON.append(Var(f"%{len(_CANON)}"))
    return _CANON[i]


def variant_key(literals: Iterable[Literal]) -> tuple[Literal, ...]:
    """Normal form with variables numbered left to right.

    Two literal sequences are variants (position by position) exactly when
    their keys are equal.
    """
    literals = tuple(literals)
    mapping: Subst = {}
    for lit in literals:
        for v in term_vars(lit.atom):
            if v not in mapping:
                mapping[v] = _canon_var(len(mapping))
    return tuple(apply_literal(mapping, lit) for lit in literals) if mapping else literals


def clause_key(c: Clause) -> tuple[Literal, ...]:
    return variant_key(c.literals)


def literal_key(lit: Literal) -> Literal:
    return variant_key((lit,))[0]


def is_variant(c1: Clause | Sequence[Literal], c2: Clause | Sequence[Literal]) -> bool:
    l1 = c1.literals if isinstance(c1, Clause) else tuple(c1)
    l2 = c2.literals if isinstance(c2, Clause) else tuple(c2)
    return len(l1) == len(l2) and variant_key(l1) == variant_key(l2)


# -- one-way matching (instance ordering) -------------------------------------


def match_into(pattern: Term, target: Term, s: Subst) -> bool:
    """Extend ``s`` so that ``pattern`` instantiated by it equals ``target``.

    Variables of ``target`` are treated as constants.  ``s`` may keep
    identity bindings; it is left in an unspecified state on failure.
    """
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if isinstance(p, Var):
            b = s.get(p)
            if b is None:
                s[p] = t
            elif b is not t:
                return False
        elif p.ground:
            if p is not t:
                return False
        elif isinstance(t, Var) or p.symbol != t.symbol or len(p.args) != len(t.args):
            return False
        else:
            stack.extend(zip(p.args, t.args))
    return True


def match_literals(general: Sequence[Literal], specific: Sequence[Literal], s: Subst | None = None) -> Subst | None:
    """Positional matcher from ``general`` onto ``specific``, or None."""
    if len(general) != len(specific):
        return None
    s = dict(s) if s else {}
    for g, t in zip(general, specific):
        if g.positive != t.positive or not match_into(g.atom, t.atom, s):
            return None
    return {v: t for v, t in s.items() if t is not v}


def is_instance(c1: Clause | Sequence[Literal], c2: Clause | Sequence[Literal]) -> bool:
    """True when ``c1`` is an instance of ``c2`` (literal by literal)."""
    l1 = c1.literals if isinstance(c1, Clause) else tuple(c1)
    l2 = c2.literals if isinstance(c2, Clause) else tuple(c2)
    return match_literals(l2, l1) is not None


def is_proper_instance(c1: Clause | Sequence[Literal], c2: Clause | Sequence[Literal]) -> bool:
    """True when ``c1`` is an instance of ``c2`` but not a variant of it."""
    return is_instance(c1, c2) and not is_variant(c1, c2)


def literal_instance_of(specific: Literal, general: Literal) -> bool:
    if specific.positive != general.positive:
        return False
    return match_into(general.atom, specific.atom, {})


def atom_instance_of(specific: Term, general: Term) -> bool:
    return match_into(general, specific, {})


def is_tautology(c: Clause) -> bool:
    lits = set(c.literals)
    return any(lit.complement() in lits for lit in c.literals)
