from hypothesis import given, settings

from instantia.logic import Clause, Fn, Var, apply_term, compose, const, is_variant, neg, pos
from instantia.unify import LinkIndex, find_links, is_unifier, make_link, match, mgu, unify_all

import oracles
from strategies import terms

x, y, z, u, v = (Var(n) for n in "xyzuv")
a, b, c = const("a"), const("b"), const("c")


def P(*args):
    return Fn("P", args)


def test_mgu_examples():
    assert mgu(P(x, b), P(a, z)) == {x: a, z: b}
    assert mgu(P(x, y), P(x, y)) == {}
    assert mgu(P(x), P(Fn("f", (x,)))) is None


def test_mgu_clash():
    assert mgu(P(a), P(b)) is None
    assert mgu(P(x, x), P(a, b)) is None


def test_mgu_on_literals_uses_atoms():
    assert mgu(pos(P(x, b)), neg(P(a, z))) == {x: a, z: b}


def test_unify_all_simultaneous():
    s = unify_all([(P(x, y), P(a, z)), (z, b)])
    assert s == {x: a, y: b, z: b}
    assert unify_all([(x, a), (x, b)]) is None


def test_match_examples():
    assert match(P(x, y), P(b, c)) == {x: b, y: c}
    assert match(P(a, y), P(b, c)) is None
    assert match(P(x, x), P(a, b)) is None
    assert oracles.brute_match(P(x, x), P(a, b)) is None
    assert match(P(x, y), P(z, z)) == {x: z, y: z}


def test_match_polarity():
    assert match(pos(P(x, y)), neg(P(a, b))) is None


def test_find_links_examples(clauses):
    cs = clauses("P(X,Y)\n~P(a,Z) | Q(a,Z)\n~P(b,Z) | R(b,Z)\n~R(b,c)")
    links = find_links(cs[0], cs[1:2])
    assert len(links) == 1
    X, Y = cs[0].variables()
    (Z,) = cs[1].variables()
    assert links[0].sigma == {X: a, Y: Z}
    assert find_links(cs[3], cs[1:2]) == []
    both = find_links(cs[0], cs[1:])
    assert [(l.clause2, l.index2) for l in both] == [(1, 0), (2, 0)]


def test_link_invariants(clauses):
    cs = clauses("P(X,Y)\n~P(a,Z) | Q(a,Z)\n~P(b,Z) | R(b,Z)\n~R(b,c)")
    index = LinkIndex(cs)
    for cl in cs:
        for link in index.links(cl):
            k = cs[link.clause1].literals[link.index1]
            l = cs[link.clause2].literals[link.index2]
            assert k.positive != l.positive and k.predicate == l.predicate
            assert apply_term(link.sigma, k.atom) is apply_term(link.sigma, l.atom)


def test_make_link_rejects_same_polarity():
    c1 = Clause((pos(P(x)),), 0)
    c2 = Clause((pos(P(a)),), 1)
    assert make_link(c1, 0, c2, 0) is None


@settings(max_examples=400)
@given(terms(3), terms(3))
def test_mgu_symmetry(s, t):
    one, two = mgu(s, t), mgu(t, s)
    assert (one is None) == (two is None)
    if one is not None:
        assert is_unifier(one, s, t) and is_unifier(two, s, t)
        # the two unified terms are variants of each other
        assert is_variant([pos(Fn("T", (apply_term(one, s),)))], [pos(Fn("T", (apply_term(two, s),)))])


@settings(max_examples=400)
@given(terms(3), terms(3))
def test_match_agrees_with_brute_force(s, t):
    got = match(s, t)
    want = oracles.brute_match(s, t)
    assert (got is None) == (want is None)
    if got is not None:
        assert apply_term(got, s) is t


def test_compose_idempotent_mgu():
    s = mgu(Fn("g", (x, Fn("f", (y,)))), Fn("g", (Fn("f", (z,)), x)))
    assert s is not None
    assert compose(s, s) == s
