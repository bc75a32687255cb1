"""Engine results, resource limits and shared input preparation."""

from __future__ import annotations

import enum
import os
import time
from collections import defaultdict
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .grounding import check_reserved
from .logic import Clause, Fresh, Origin, match_literals, rename_apart
from .models import ModelCertificate


class Status(enum.Enum):
    UNSAT = "Unsatisfiable"
    SAT = "Satisfiable"
    RESOURCE_OUT = "ResourceOut"

    def __str__(self) -> str:
        return self.value


def audit_default() -> bool:
    return os.environ.get("INSTANTIA_AUDIT", "") not in ("", "0")


@dataclass
class Limits:
    timeout: float = 30.0
    max_instances: int = 100_000
    hyperlink_cap: int = 10_000
    batch: int = 64
    seed: int | None = None
    initial_path: str = "first"
    explore_all: bool = False
    audit: bool = field(default_factory=audit_default)


@dataclass
class EngineResult:
    engine: str
    status: Status
    proof: list[str] = field(default_factory=list)
    model: ModelCertificate | None = None
    reason: str = ""
    stats: dict = field(default_factory=dict)
    dump: str = ""
    dot: str = ""
    dimacs: str = ""
    state: object = None  # engine internals, kept for inspection in tests

    @property
    def szs(self) -> str:
        return f"% SZS status {self.status}"


class ResourceOut(Exception):
    pass


class Budget:
    def __init__(self, limits: Limits):
        self.limits = limits
        self.deadline = time.monotonic() + limits.timeout

    def check(self, instances: int = 0) -> None:
        if instances > self.limits.max_instances:
            raise ResourceOut(f"instance cap {self.limits.max_instances} reached")
        if time.monotonic() > self.deadline:
            raise ResourceOut(f"timeout after {self.limits.timeout:g}s")


class SoundnessAudit:
    """Checks that derived clauses are instances of input clauses."""

    def __init__(self, inputs: Iterable[Clause], enabled: bool = True):
        self.enabled = enabled
        self.checked = 0
        self._by_shape: dict[tuple, list[Clause]] = defaultdict(list)
        for c in inputs:
            self._by_shape[_shape(c)].append(c)

    def check(self, c: Clause) -> None:
        if not self.enabled:
            return
        self.checked += 1
        for d in self._by_shape.get(_shape(c), ()):
            if match_literals(d.literals, c.literals) is not None:
                return
        raise AssertionError(f"unsound instance {c!r}: matches no input clause")


def _shape(c: Clause) -> tuple:
    return tuple((l.positive, l.predicate) for l in c.literals)


def prepare_input(clauses: Sequence[Clause], fresh: Fresh) -> list[Clause]:
    """Renamed-apart copies of the input with ids 0..n-1.

    Raises ReservedSymbolError when the reserved grounding constant occurs.
    """
    check_reserved(clauses)
    out = []
    for i, c in enumerate(clauses):
        origin = c.origin if c.origin.is_input else Origin(name=c.origin.name)
        out.append(replace(rename_apart(c, fresh), id=i, origin=origin))
    return out
