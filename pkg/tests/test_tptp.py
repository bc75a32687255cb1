import pytest
from hypothesis import given, settings

from instantia.logic import Fn, Var, const, is_variant
from instantia.tptp import InputError, format_problem, parse_clause, parse_tptp_cnf

from strategies import epr_problems


def test_two_clauses():
    p = parse_tptp_cnf("cnf(c1, axiom, P(X,Y)). cnf(c2, axiom, ~P(a,Z) | Q(a,Z)).")
    assert len(p.clauses) == 2
    assert p.constants == [const("a")]
    assert p.is_epr
    assert p.clauses[1].literals[0].positive is False
    assert p.clauses[0].origin.name == "c1"


def test_empty_file():
    p = parse_tptp_cnf("% nothing here\n")
    assert p.clauses == [] and p.is_epr


def test_function_symbol_not_epr():
    assert not parse_tptp_cnf("cnf(c, axiom, P(f(X))).").is_epr


def test_propositional_and_comments():
    p = parse_tptp_cnf("/* block */ cnf(c, axiom, (p | ~q)). % trailing\ncnf(d, negated_conjecture, ~p).")
    assert [len(cl) for cl in p.clauses] == [2, 1]
    assert p.clauses[0].literals[0].atom is const("p")


def test_syntax_error_position():
    with pytest.raises(InputError) as err:
        parse_tptp_cnf("cnf(c1, axiom, P(X,Y)).\ncnf(c2, axiom, P(X,)).")
    assert err.value.line == 2 and err.value.column == 20


def test_arity_clash_names_symbol():
    with pytest.raises(InputError, match="p"):
        parse_tptp_cnf("cnf(a, axiom, p(X)). cnf(b, axiom, p(X,Y)).")


def test_reserved_constant_rejected():
    with pytest.raises(InputError, match="reserved"):
        parse_tptp_cnf("cnf(a, axiom, p($bot)).")


def test_fof_and_equality_rejected():
    with pytest.raises(InputError):
        parse_tptp_cnf("fof(a, axiom, p).")
    with pytest.raises(InputError):
        parse_tptp_cnf("cnf(a, axiom, X = a).")


def test_true_false_literals():
    p = parse_tptp_cnf("cnf(a, axiom, p | $false). cnf(b, axiom, q | $true).")
    assert len(p.clauses) == 1 and len(p.clauses[0]) == 1
    assert parse_tptp_cnf("cnf(a, axiom, $false).").clauses[0].is_empty


def test_annotations_skipped():
    p = parse_tptp_cnf("cnf(a, axiom, p(X), inference(res, [status(thm)], [b, c])).")
    assert len(p.clauses) == 1


def test_bare_clause():
    cl = parse_clause("~P(a,Z) | Q(a,Z)")
    assert cl.literals[0].atom is Fn("P", (const("a"), Var("Z")))


@settings(max_examples=200)
@given(epr_problems())
def test_round_trip(cs):
    back = parse_tptp_cnf(format_problem(cs)).clauses
    assert len(back) == len(cs)
    assert all(is_variant(x, y) for x, y in zip(back, cs))
