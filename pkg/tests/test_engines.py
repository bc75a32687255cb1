import pytest

from instantia import prove
from instantia.disconnection import Tableau, choose_initial_path, dt_prove
from instantia.fdpll import ROOT, SemanticTree, candidate_value, close_branch, fdpll_prove, find_falsified_instance
from instantia.hyperlink import HyperLinkState, hl_round, hl_saturate, hyper_links
from instantia.instgen import InstGenState, instgen_step, saturate, select_relevant_links
from instantia.logic import Fn, Fresh, Var, const, is_proper_instance, is_variant, neg, pos
from instantia.oracle import herbrand_oracle, verify_model
from instantia.results import Limits, Status, prepare_input
from instantia.unify import make_link

FOUR = "P(X,Y)\n~P(a,Z) | Q(a,Z)\n~P(b,Z) | R(b,Z)\n~R(b,c)"
ENGINES = ["instgen", "hyperlink", "disconnection", "fdpll"]
x, y, z = Var("x"), Var("y"), Var("z")
a, b, c = const("a"), const("b"), const("c")


def P(*args):
    return Fn("P", args)


# -- Inst-Gen ---------------------------------------------------------------


def test_instgen_step_examples(clauses):
    cs = clauses(FOUR)
    out = instgen_step(cs[0], cs[1], make_link(cs[0], 0, cs[1], 0))
    assert len(out) == 1
    assert is_variant(out[0], clauses("P(a,Z)")[0])
    assert is_proper_instance(out[0], cs[0])
    out = instgen_step(cs[0], cs[2], make_link(cs[0], 0, cs[2], 0))
    assert len(out) == 1 and is_variant(out[0], clauses("P(b,Z)")[0])


def test_instgen_step_renaming_link_emits_nothing(clauses):
    cs = clauses("P(a,Z)\n~P(a,W) | Q(a,W)")
    assert instgen_step(cs[0], cs[1], make_link(cs[0], 0, cs[1], 0)) == []


def test_instgen_step_skips_active_variants(clauses):
    cs = clauses(FOUR)
    link = make_link(cs[0], 0, cs[1], 0)
    (inst,) = instgen_step(cs[0], cs[1], link)
    from instantia.logic import clause_key

    assert instgen_step(cs[0], cs[1], link, {clause_key(inst)}) == []


def _state(cs, path):
    fresh = Fresh("t")
    state = InstGenState(prepare_input(cs, fresh), fresh)
    for cl in state.inputs:
        state.add(cl)
    state.path = path
    return state


def test_select_relevant_links(clauses):
    cs = clauses(FOUR)
    state = _state(cs, {0: 0, 1: 1, 2: 0, 3: 0})
    assert select_relevant_links(state, [0, 1, 2, 3]) == 1
    link = state.queue[0]
    assert {link.clause1, link.clause2} == {0, 2}
    # nothing new is enqueued for an unchanged selection
    assert select_relevant_links(state, []) == 0


def test_select_relevant_links_gate(clauses):
    cs = clauses(FOUR)
    state = _state(cs, {0: 0, 1: 1, 2: 1, 3: 0})
    # R(b,Z) and ~R(b,c) are both selected; P(X,Y) has no selected partner
    assert select_relevant_links(state, [0, 1, 2, 3]) == 1
    link = state.queue[0]
    assert {link.clause1, link.clause2} == {2, 3}


def test_saturate_examples(clauses):
    res = saturate(clauses(FOUR))
    assert res.status is Status.UNSAT
    assert res.proof[-1].startswith("unsat core: prop clauses")
    assert any("<- instgen(" in line for line in res.proof)
    res = saturate(clauses("P(X)"))
    assert res.status is Status.SAT and res.stats["active"] == 1


def test_saturate_sat_model(clauses):
    cs = clauses(FOUR)[:3]
    res = saturate(cs)
    assert res.status is Status.SAT
    assert verify_model(cs, res.model, (a, b, c))


def test_instgen_resource_out(clauses):
    res = saturate(clauses("p(a)\n~p(X) | p(f(X))\n~p(b)"), Limits(max_instances=20))
    assert res.status is Status.RESOURCE_OUT and "cap" in res.reason


# -- hyper-linking ------------------------------------------------------------


def test_hyper_links_examples(clauses):
    cs = clauses(FOUR)
    assert hyper_links(cs[1], cs) == []
    hls = hyper_links(cs[0], cs)
    assert len(hls) == 2
    firsts = sorted(repr(hl.sigma[cs[0].variables()[0]]) for hl in hls)
    assert firsts == ["a", "b"]
    for hl in hls:
        assert len(hl.links) == len(cs[0].literals)
    assert hyper_links(clauses("q(a, b)")[0], cs) == []


def test_hyper_links_cap_and_skip(clauses):
    cs = clauses(FOUR)
    assert len(hyper_links(cs[0], cs, cap=1)) == 1
    assert len(hyper_links(cs[0], cs, cap=1, skip=1)) == 1
    assert hyper_links(cs[0], cs, skip=2) == []


def test_hl_round_examples(clauses):
    fresh = Fresh("h")
    state = HyperLinkState(prepare_input(clauses(FOUR), fresh), fresh)
    for cl in state.inputs:
        state.add(cl)
    new = hl_round(state)
    p_instances = [cl for cl in new if cl.literals[0].atom.symbol == "P" and len(cl) == 1]
    got = sorted(repr(cl.literals[0].atom.args[0]) for cl in p_instances)
    assert got == ["a", "b"]
    for cl in new:
        state.add(cl)
    while True:
        more = [cl for cl in hl_round(state) if state.add(cl) is not None]
        if not more:
            break
    assert hl_round(state) == []


def test_cluster_still_generates(clauses):
    res = hl_saturate(clauses("s(X)\n~s(Y) | s(f(Y))"), Limits(max_instances=30, timeout=5))
    assert res.status is Status.RESOURCE_OUT
    assert res.stats["instances"] > 0


def test_hl_saturate_examples(clauses):
    res = hl_saturate(clauses(FOUR))
    assert res.status is Status.UNSAT and res.stats["rounds"] <= 2
    assert res.proof[0].startswith("round 0: +0 instances")
    res = hl_saturate(clauses("P(a)\n~P(a)"))
    assert res.status is Status.UNSAT and res.stats["rounds"] == 0


# -- disconnection ------------------------------------------------------------


def _scenario(clauses):
    cs = clauses("~R(X,b) | P(X,b) | S(X,b)\n~P(a,Z) | Q(a,Z)")
    t = Tableau(cs, {0: 1, 1: 0})
    leaves = t.attach(t.root, cs[0])
    return t, leaves[1]


def test_initial_path(clauses):
    cs = prepare_input(clauses(FOUR), Fresh("d"))
    assert choose_initial_path(cs) == {0: 0, 1: 0, 2: 0, 3: 0}
    assert choose_initial_path(cs, "random:4") == choose_initial_path(cs, "random:4")
    with pytest.raises(ValueError):
        choose_initial_path(cs, "best")


def test_expansion_scenario(clauses):
    t, leaf = _scenario(clauses)
    (exp,) = list(t.violations(leaf))
    assert repr(exp.first) == "~R(a,b) | P(a,b) | S(a,b)"
    assert repr(exp.second) == "~P(a,b) | Q(a,b)"
    new = t.expand(leaf, exp)
    assert [n.closed for n in new] == [False, True, False, False]
    assert t.dump().splitlines() == [
        "¬R(X,b)",
        "P(X,b)",
        "  ¬R(a,b)",
        "  P(a,b)",
        "    ¬P(a,b) *",
        "    Q(a,b)",
        "  S(a,b)",
        "S(X,b)",
    ]
    # the same expansion is refused on the branch that used it
    assert t.expand(leaf, exp) is None


def test_is_closed(clauses):
    t, leaf = _scenario(clauses)
    assert not t.is_closed(t.root)
    assert not t.is_closed(leaf)
    (exp,) = list(t.violations(leaf))
    new = t.expand(leaf, exp)
    assert t.is_closed(new[1]) and not t.is_closed(new[0])


def test_dt_prove_examples(clauses):
    assert dt_prove(clauses(FOUR)).status is Status.UNSAT
    res = dt_prove(clauses("P(a)\n~P(X)"))
    assert res.status is Status.UNSAT and res.stats["expansions"] == 1
    res = dt_prove(clauses("P(a)\nQ(b)"))
    assert res.status is Status.SAT and res.stats.get("expansions", 0) == 0
    assert dt_prove(clauses("$false")).status is Status.UNSAT
    assert dt_prove(clauses("p(X) | ~p(X)")).status is Status.SAT


def test_dt_dot_export(clauses):
    res = dt_prove(clauses(FOUR))
    assert res.dot.startswith("digraph tableau {") and "->" in res.dot


# -- FDPLL --------------------------------------------------------------------


def test_candidate_value_examples():
    branch = [ROOT, pos(P(a, y))]
    assert candidate_value(branch, P(a, b)) is True
    assert candidate_value(branch, Fn("Q", (c, c))) is False
    assert candidate_value([ROOT], P(a, a)) is False
    branch = [ROOT, pos(P(a, y)), neg(P(a, b))]
    assert candidate_value(branch, P(a, b)) is False
    assert candidate_value(branch, P(a, c)) is True


def test_find_falsified_instance_examples(clauses):
    (cl,) = clauses("P(X,b) | ~P(Z,Y) | Q(X,Y,Z)")
    f = find_falsified_instance([ROOT, pos(P(a, y))], cl)
    assert f is not None
    assert f.instance.literals[1].atom.args[0] is a
    assert f.instance.literals[2].atom.args[2] is a
    assert find_falsified_instance([ROOT], clauses("~R(U)")[0]) is None
    f = find_falsified_instance([ROOT], clauses("P(a,Y)")[0])
    assert f is not None and is_variant(f.instance, clauses("P(a,Y)")[0])


def test_split_examples():
    tree = SemanticTree([])
    left, right = tree.split(tree.root, pos(P(a, y)))
    assert left.literal == pos(P(a, y)) and right.literal == neg(P(a, y))
    with pytest.raises(ValueError):
        tree.split(left, neg(P(a, y)))
    ll, lr = tree.split(left, pos(P(x, b)))
    assert lr.literal == neg(P(x, b))


def test_close_branch_examples(clauses):
    (unit,) = clauses("P(a,Y)")
    assert close_branch([ROOT, neg(P(a, y))], unit) is not None
    assert close_branch([ROOT], unit) is None
    cs = clauses("P(a,Y)\nP(X,b) | ~P(Z,Y) | Q(X,Y,Z)")
    branch = [ROOT, pos(P(a, y)), neg(P(x, b)), pos(P(a, b))]
    assert all(close_branch(branch, cl) is None for cl in cs)


def test_fdpll_examples(clauses):
    assert fdpll_prove(clauses("P(a)\n~P(a)")).status is Status.UNSAT
    cs = clauses("P(a,Y)\nP(X,b) | ~P(Z,Y) | Q(X,Y,Z)")
    res = fdpll_prove(cs)
    assert res.status is Status.SAT and res.model.method == "branch"
    assert verify_model(cs, res.model)
    assert "¬P(a,y) ★" in res.dump or "¬P(a,Y) ★" in res.dump
    assert fdpll_prove(clauses(FOUR)).status is Status.UNSAT


def test_fdpll_explore_all(clauses):
    cs = clauses("P(a,Y)\nP(X,b) | ~P(Z,Y) | Q(X,Y,Z)")
    res = fdpll_prove(cs, Limits(explore_all=True))
    assert res.status is Status.SAT
    assert res.stats["splits"] >= fdpll_prove(cs).stats["splits"]


# -- all engines ---------------------------------------------------------------


@pytest.mark.parametrize("engine", ENGINES)
def test_engines_agree_with_oracle(engine, clauses):
    for text in (FOUR, "P(X,Y)\n~P(a,Z) | Q(a,Z)\n~P(b,Z) | R(b,Z)", "p\n~p | q\n~q", "p(X) | q(X)\n~p(a)\n~q(b)"):
        cs = clauses(text)
        want = herbrand_oracle(cs).status
        res = prove(cs, engine)
        assert res.status is want, (engine, text)
        if want is Status.SAT:
            assert verify_model(cs, res.model)
    assert prove([], engine).status is Status.SAT


@pytest.mark.parametrize("engine", ENGINES)
def test_reserved_symbol_refused(engine):
    from instantia.grounding import BOT, ReservedSymbolError
    from instantia.logic import Clause

    with pytest.raises(ReservedSymbolError):
        prove([Clause((pos(P(BOT, a)),))], engine)
