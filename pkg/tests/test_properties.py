"""Property suites, each run on at least 1000 generated cases.

The functions are plain hypothesis tests, so they also run standalone:
``python -m pytest tests/test_properties.py``.
"""

from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from instantia.disconnection import Tableau, choose_initial_path
from instantia.fdpll import ROOT, candidate_value, find_falsified_instance
from instantia.grounding import BOT, bottom_ground
from instantia.instgen import saturate
from instantia.logic import Fresh, Var, apply, apply_term, clause_key, is_proper_instance, is_tautology, literal_key
from instantia.models import ground_instances
from instantia.results import Limits, Status, prepare_input
from instantia.unify import make_link, mgu

import oracles
from strategies import CONSTS, epr_clauses, epr_literals, epr_problems, terms

CASES = 1000
POOL = oracles.universe(CONSTS[:2], ["f"], depth=1)


@settings(max_examples=CASES)
@given(terms(2), terms(2))
def test_mgu_idempotent_and_most_general(s, t):
    sigma = mgu(s, t)
    ground = oracles.brute_unifiers(s, t, POOL)
    if sigma is None:
        assert ground == []
        return
    assert apply_term(sigma, s) is apply_term(sigma, t)
    for v, u in sigma.items():
        assert apply_term(sigma, u) is u
    # every unifier found by enumeration factors through sigma
    for theta in ground:
        for v in oracles.variables(s, oracles.variables(t)):
            assert oracles.subst_term(theta, apply_term(sigma, v)) is theta[v]


@settings(max_examples=CASES)
@given(epr_problems(max_clauses=4, max_literals=3))
def test_instgen_path_is_link_free_at_closure(cs):
    res = saturate(cs, Limits(audit=True))
    assert res.status is not Status.RESOURCE_OUT
    if res.status is not Status.SAT:
        return
    state = res.state
    selected = [(c, state.path[c.id]) for c in state.active]
    grounded = {bottom_ground(c.literals[i]) for c, i in selected}
    assert not any(g.complement() in grounded for g in grounded)
    for c, i in selected:
        for d, j in selected:
            link = make_link(c, i, d, j)
            if link is None:
                continue
            for premise in (c, d):
                inst = apply(link.sigma, premise)
                assert not is_proper_instance(inst, premise) or clause_key(inst) in state.keys


def _expand_everywhere(cs, steps: int):
    """Drive a tableau by always taking the first violation, yielding each expansion's leaves."""
    inputs = [c for c in prepare_input(cs, Fresh("d")) if c.literals and not is_tautology(c)]
    t = Tableau(inputs, choose_initial_path(inputs))
    stack = [t.root]
    for _ in range(steps):
        if not stack:
            return
        leaf = stack.pop()
        exp = next(iter(t.violations(leaf)), None)
        if exp is None:
            return
        leaves = t.expand(leaf, exp)
        assert leaves is not None
        yield t, leaves
        stack.extend(reversed([n for n in leaves if not n.closed]))


@settings(max_examples=CASES)
@given(epr_problems(max_clauses=5, max_literals=3))
def test_disconnection_expansion_closes_a_branch(cs):
    for t, leaves in _expand_everywhere(cs, 12):
        assert any(n.closed for n in leaves)
        for n in leaves:
            if n.closed:
                lit, partner = n.witness
                assert partner == bottom_ground(lit).complement()
                assert partner in t.branch_literals(n.parent)


CLAUSE_VARS = [Var("u"), Var("v"), Var("w")]


@st.composite
def branches(draw):
    lits = draw(st.lists(epr_literals(), max_size=5))
    branch = [ROOT]
    keys = set()
    for lit in lits:
        if literal_key(lit) in keys or literal_key(lit.complement()) in keys:
            continue
        keys.add(literal_key(lit))
        branch.append(lit)
    return branch


@settings(max_examples=CASES)
@given(branches(), epr_clauses(variables=CLAUSE_VARS))
def test_fdpll_redundancy_gate(branch, c):
    if find_falsified_instance(branch, c) is not None:
        return
    domain = CONSTS + [BOT]
    for _, ground in ground_instances(c, domain):
        assert any(candidate_value(branch, l.atom) == l.positive for l in ground)
