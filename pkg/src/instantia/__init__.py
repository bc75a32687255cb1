"""Instance-based theorem proving for clause logic."""

from __future__ import annotations

from typing import Callable, Sequence

from .disconnection import dt_prove
from .fdpll import fdpll_prove
from .hyperlink import hl_saturate
from .instgen import saturate
from .logic import Clause, Fn, Literal, Var, const
from .results import EngineResult, Limits, Status
from .tptp import InputError, Problem, parse_clauses, parse_tptp_cnf, read_problem

ENGINES: dict[str, Callable[..., EngineResult]] = {
    "disconnection": dt_prove,
    "fdpll": fdpll_prove,
    "hyperlink": hl_saturate,
    "instgen": saturate,
}


def prove(clauses: Sequence[Clause], engine: str = "instgen", limits: Limits | None = None) -> EngineResult:
    return ENGINES[engine](clauses, limits)


__all__ = [
    "Clause", "EngineResult", "ENGINES", "Fn", "InputError", "Limits", "Literal", "Problem",
    "Status", "Var", "const", "parse_clauses", "parse_tptp_cnf", "prove", "read_problem",
]
