"""Parser and printer for the clausal (cnf) subset of TPTP."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .grounding import BOT_NAME
from .logic import Clause, Fn, Literal, Origin, Term, Var, const, term_vars


class InputError(ValueError):
    """Malformed input: syntax errors, arity clashes, reserved symbols."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*|/\*.*?\*/)
  | (?P<upper>[A-Z][A-Za-z0-9_]*)
  | (?P<lower>[a-z][A-Za-z0-9_]*)
  | (?P<dollar>\$[a-z][A-Za-z0-9_]*)
  | (?P<quoted>'(?:[^'\\]|\\.)*')
  | (?P<number>[0-9]+)
  | (?P<neq>!=)
  | (?P<punct>[(),.|~=&!?:\[\]])
    """,
    re.VERBOSE | re.DOTALL,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise InputError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            if kind == "punct" or kind == "neq":
                kind = chunk
            tokens.append(Token(kind, chunk, line, pos - line_start + 1))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


@dataclass
class Problem:
    clauses: list[Clause]
    predicates: dict[str, int] = field(default_factory=dict)
    functions: dict[str, int] = field(default_factory=dict)
    name: str | None = None

    @classmethod
    def from_clauses(cls, clauses: Iterable[Clause], name: str | None = None) -> "Problem":
        clauses = list(clauses)
        preds: dict[str, int] = {}
        funcs: dict[str, int] = {}
        for c in clauses:
            for lit in c.literals:
                _record_atom(lit.atom, preds, funcs)
        return cls(clauses, preds, funcs, name)

    @property
    def constants(self) -> list[Fn]:
        return sorted(const(f) for f, a in self.functions.items() if a == 0)

    @property
    def is_epr(self) -> bool:
        return all(a == 0 for a in self.functions.values())

    def domain(self) -> list[Fn]:
        """Input constants, or one fresh constant when there are none."""
        return self.constants or [fresh_constant(self)]


def fresh_constant(p: Problem) -> Fn:
    i = 0
    while f"c{i}" in p.functions:
        i += 1
    return const(f"c{i}")


def _record_atom(atom: Term, preds: dict, funcs: dict, tok: Token | None = None) -> None:
    if isinstance(atom, Var):
        raise InputError("a variable cannot be used as an atom")
    _check_arity(preds, atom.symbol, len(atom.args), "predicate", tok)
    for a in atom.args:
        _record_term(a, funcs, tok)


def _record_term(t: Term, funcs: dict, tok: Token | None) -> None:
    if isinstance(t, Var):
        return
    if t.symbol == BOT_NAME:
        raise InputError(f"{BOT_NAME} is reserved", *( (tok.line, tok.column) if tok else ()))
    _check_arity(funcs, t.symbol, len(t.args), "function", tok)
    for a in t.args:
        _record_term(a, funcs, tok)


def _check_arity(table: dict, symbol: str, arity: int, kind: str, tok: Token | None) -> None:
    known = table.setdefault(symbol, arity)
    if known != arity:
        where = (tok.line, tok.column) if tok else ()
        raise InputError(f"arity clash for {kind} {symbol}: {known} vs {arity}", *where)


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.preds: dict[str, int] = {}
        self.funcs: dict[str, int] = {}

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        return InputError(msg, tok.line, tok.column)

    def expect(self, kind: str) -> Token:
        tok = self.tok
        if tok.kind != kind:
            shown = tok.text or "end of input"
            raise self.error(f"expected {kind!r}, found {shown!r}")
        self.i += 1
        return tok

    def accept(self, kind: str) -> Token | None:
        if self.tok.kind == kind:
            self.i += 1
            return self.tokens[self.i - 1]
        return None

    def problem(self) -> list[Clause]:
        clauses = []
        while self.tok.kind != "eof":
            c = self.annotated()
            if c is not None:
                c.id = len(clauses)
                clauses.append(c)
        return clauses

    def annotated(self) -> Clause | None:
        tok = self.tok
        if tok.kind != "lower" or tok.text != "cnf":
            if tok.kind == "lower" and tok.text in ("include", "fof", "tff", "thf"):
                raise self.error(f"{tok.text} is not supported (cnf only)")
            raise self.error(f"expected 'cnf', found {tok.text!r}")
        self.i += 1
        self.expect("(")
        name_tok = self.tok
        if name_tok.kind not in ("lower", "upper", "number", "quoted"):
            raise self.error("expected a clause name")
        self.i += 1
        self.expect(",")
        self.expect("lower")
        self.expect(",")
        literals, trivially_true = self.formula()
        if self.accept(","):
            self.skip_annotations()
        self.expect(")")
        self.expect(".")
        if trivially_true:
            return None
        return Clause(tuple(literals), origin=Origin(name=name_tok.text))

    def skip_annotations(self) -> None:
        depth = 0
        while True:
            k = self.tok.kind
            if k == "eof":
                raise self.error("unterminated annotation")
            if k in ("(", "["):
                depth += 1
            elif k in (")", "]"):
                if depth == 0:
                    return
                depth -= 1
            self.i += 1

    def formula(self) -> tuple[list[Literal], bool]:
        if self.accept("("):
            result = self.formula()
            self.expect(")")
            return result
        literals: list[Literal] = []
        true = False
        while True:
            lit = self.literal()
            if lit is True:
                true = True
            elif lit is not False:
                literals.append(lit)
            if not self.accept("|"):
                break
        return literals, true

    def literal(self) -> Literal | bool:
        """A literal, or True/False for the defined truth constants."""
        if self.accept("~"):
            inner = self.literal()
            return inner.complement() if isinstance(inner, Literal) else not inner
        if self.accept("("):
            inner = self.literal()
            self.expect(")")
            return inner
        tok = self.tok
        if tok.kind == "dollar":
            self.i += 1
            if tok.text in ("$false", "$true"):
                return tok.text == "$true"
            raise self.error(f"unsupported defined symbol {tok.text}", tok)
        if tok.kind not in ("lower", "upper", "quoted"):
            raise self.error(f"expected a literal, found {tok.text or 'end of input'!r}")
        self.i += 1
        args: tuple[Term, ...] = ()
        if self.accept("("):
            args = self.terms()
        if self.tok.kind in ("=", "!="):
            raise self.error("equality is not supported")
        atom = Fn(_unquote(tok.text), args)
        _record_atom(atom, self.preds, self.funcs, tok)
        return Literal(True, atom)

    def terms(self) -> tuple[Term, ...]:
        out = [self.term()]
        while self.accept(","):
            out.append(self.term())
        self.expect(")")
        return tuple(out)

    def term(self) -> Term:
        tok = self.tok
        if tok.kind == "upper":
            self.i += 1
            return Var(tok.text)
        if tok.kind in ("lower", "quoted", "number"):
            self.i += 1
            args: tuple[Term, ...] = ()
            if self.accept("("):
                args = self.terms()
            return Fn(_unquote(tok.text), args)
        if tok.kind == "dollar":
            raise self.error(f"{tok.text} is reserved" if tok.text == BOT_NAME else f"unsupported defined term {tok.text}")
        raise self.error(f"expected a term, found {tok.text or 'end of input'!r}")


def _unquote(s: str) -> str:
    if s.startswith("'"):
        return s[1:-1].replace("\\'", "'").replace("\\\\", "\\")
    return s


def parse_tptp_cnf(text: str, name: str | None = None) -> Problem:
    """Parse cnf(...) lines into a :class:`Problem` (ids follow input order)."""
    parser = _Parser(text)
    clauses = parser.problem()
    return Problem(clauses, parser.preds, parser.funcs, name)


def read_problem(path) -> Problem:
    with open(path, encoding="utf-8") as f:
        return parse_tptp_cnf(f.read(), name=str(path))


def parse_literal(text: str) -> Literal:
    parser = _Parser(text)
    lit = parser.literal()
    if not isinstance(lit, Literal):
        raise parser.error("expected a proper literal")
    parser.expect("eof")
    return lit


def parse_clause(text: str) -> Clause:
    """Parse a bare disjunction such as ``~P(a,Z) | Q(a,Z)``."""
    parser = _Parser(text)
    literals, _ = parser.formula()
    parser.expect("eof")
    return Clause(tuple(literals))


def parse_clauses(text: str) -> list[Clause]:
    """Parse bare disjunctions, one per line (``#`` starts a comment)."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip().rstrip(".")
        if line:
            c = parse_clause(line)
            c.id = len(out)
            out.append(c)
    return out


# -- printing ----------------------------------------------------------------

_LOWER = re.compile(r"[a-z][A-Za-z0-9_]*$|[0-9]+$")
_WORD = re.compile(r"[A-Za-z][A-Za-z0-9_]*$")


def _symbol(s: str, predicate: bool) -> str:
    if (_WORD if predicate else _LOWER).match(s):
        return s
    return "'" + s.replace("\\", "\\\\").replace("'", "\\'") + "'"


def _term(t: Term, names: dict) -> str:
    if isinstance(t, Var):
        return names[t]
    if not t.args:
        return _symbol(t.symbol, False)
    return f"{_symbol(t.symbol, False)}({','.join(_term(a, names) for a in t.args)})"


def _atom(atom: Term, names: dict) -> str:
    if isinstance(atom, Var):
        return names[atom]
    s = _symbol(atom.symbol, True)
    if not atom.args:
        return s
    return f"{s}({','.join(_term(a, names) for a in atom.args)})"


def _var_names(literals: Sequence[Literal]) -> dict:
    names: dict = {}
    for lit in literals:
        for v in term_vars(lit.atom):
            if v not in names:
                names[v] = f"X{len(names)}"
    return names


def format_literal(lit: Literal, names: dict | None = None) -> str:
    names = names if names is not None else _var_names([lit])
    return ("" if lit.positive else "~") + _atom(lit.atom, names)


def format_disjunction(literals: Sequence[Literal]) -> str:
    if not literals:
        return "$false"
    names = _var_names(literals)
    return " | ".join(format_literal(l, names) for l in literals)


def format_clause(c: Clause, role: str = "axiom") -> str:
    name = c.origin.name if c.origin.is_input and c.origin.name else f"c{c.id}"
    return f"cnf({_symbol(name, False)}, {role}, ({format_disjunction(c.literals)}))."


def format_problem(p: Problem | Sequence[Clause]) -> str:
    clauses = p.clauses if isinstance(p, Problem) else p
    return "\n".join(format_clause(c) for c in clauses) + "\n"


def format_term(t: Term) -> str:
    return _term(t, {v: f"X{i}" for i, v in enumerate(term_vars(t))})


def parse_term(text: str) -> Term:
    parser = _Parser(text)
    t = parser.term()
    parser.expect("eof")
    return t
