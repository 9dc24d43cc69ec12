"""CNF encodings against the exhaustive propositional oracles."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from multiteam.errors import InputError, ParseError
from multiteam.model import Multiteam
from multiteam.reductions import (CnfFormula, encode_3sat, encode_maxsat,
                                  maxsat_oracle, parse_dimacs, sat_oracle)
from multiteam.semantics import SemanticsConfig, evaluate

TWO_CLAUSES = CnfFormula(((("x1", 0), ("x2", 1), ("x3", 0)),
                          (("x1", 1), ("x2", 1), ("x3", 1))))


def test_worked_encoding_row_by_row():
    inst = encode_3sat(TWO_CLAUSES)
    assert inst.team == Multiteam(
        ("clause", "literal", "variable", "parity"),
        [("1", "1", "x1", "0"), ("1", "2", "x2", "1"), ("1", "3", "x3", "0"),
         ("2", "1", "x1", "1"), ("2", "2", "x2", "1"), ("2", "3", "x3", "1")])
    assert inst.team.size == 3 * len(TWO_CLAUSES.clauses)
    assert str(inst.formula) == "<1/3> (dep(clause ; literal) & dep(variable ; parity))"
    assert sat_oracle(TWO_CLAUSES)
    assert inst.check()


def test_degenerate_clauses():
    triple = CnfFormula(((("x", 0), ("x", 0), ("x", 0)),))
    inst = encode_3sat(triple)
    assert inst.team.size == 3
    assert inst.check()
    contradiction = CnfFormula(((("x", 0), ("x", 0), ("x", 0)),
                                (("x", 1), ("x", 1), ("x", 1))))
    assert not sat_oracle(contradiction)
    assert not encode_3sat(contradiction).check()


def test_encoders_enforce_clause_width():
    two = CnfFormula(((("x", 0), ("y", 0)),))
    three = CnfFormula(((("x", 0), ("y", 0), ("z", 0)),))
    with pytest.raises(InputError):
        encode_3sat(two)
    with pytest.raises(InputError):
        encode_maxsat(three, Fraction(1, 2))


def test_best_achievable_clause_count():
    conflict = CnfFormula(((("x", 0), ("x", 0)), (("x", 1), ("x", 1))))
    assert maxsat_oracle(conflict) == 1
    assert encode_maxsat(conflict, Fraction(1, 2)).check()
    assert not encode_maxsat(conflict, Fraction(1, 1)).check()
    satisfiable = CnfFormula(((("x", 0), ("y", 1)), (("x", 1), ("y", 1))))
    assert maxsat_oracle(satisfiable) == 2
    assert encode_maxsat(satisfiable, Fraction(1, 1)).check()


def test_zero_fraction_asks_nothing():
    conflict = CnfFormula(((("x", 0), ("x", 0)), (("x", 1), ("x", 1))))
    assert encode_maxsat(conflict, Fraction(0, 1)).check()


def test_oracle_variable_budget():
    wide = CnfFormula(tuple(
        ((f"v{i}", 0), (f"v{i}", 0)) for i in range(21)))
    with pytest.raises(InputError):
        sat_oracle(wide)


def test_cnf_validation():
    with pytest.raises(InputError):
        CnfFormula(((("x", 2),),))
    with pytest.raises(InputError):
        CnfFormula((((2, 0),),))
    with pytest.raises(InputError):
        CnfFormula(((),))


def test_dimacs_round_trip():
    text = """c two clauses over three variables
p cnf 3 2
1 -2 3 0
-1 -2
-3 0
"""
    assert parse_dimacs(text) == TWO_CLAUSES
    assert str(parse_dimacs(text)) == "(x1 | -x2 | x3) & (-x1 | -x2 | -x3)"


def test_dimacs_errors():
    with pytest.raises(ParseError):
        parse_dimacs("1 2 0\n")
    with pytest.raises(ParseError):
        parse_dimacs("p cnf 2 1\n1 two 0\n")
    with pytest.raises(ParseError):
        parse_dimacs("p cnf 2 1\n1 2\n")
    with pytest.raises(ParseError):
        parse_dimacs("p cnf 2 1\np cnf 2 1\n1 0\n")
    with pytest.raises(ParseError):
        parse_dimacs("c nothing\n")


def literals(width, variables=("a", "b")):
    lit = st.tuples(st.sampled_from(variables), st.sampled_from((0, 1)))
    return st.tuples(*[lit] * width)


@settings(max_examples=60, deadline=None)
@given(st.lists(literals(3), min_size=1, max_size=2).map(tuple))
def test_satisfiability_transfers_to_the_encoding(clauses):
    phi = CnfFormula(clauses)
    expected = sat_oracle(phi)
    inst = encode_3sat(phi)
    for team_kind in ("multi", "set"):
        for strictness in ("lax", "strict"):
            cfg = SemanticsConfig(team_kind, strictness)
            assert evaluate(inst.structure, inst.team, inst.formula, cfg) == expected


@settings(max_examples=40, deadline=None)
@given(st.lists(literals(2), min_size=1, max_size=3).map(tuple), st.data())
def test_clause_count_threshold_transfers_to_the_encoding(clauses, data):
    phi = CnfFormula(clauses)
    m = len(phi.clauses)
    k = data.draw(st.integers(min_value=0, max_value=m))
    expected = maxsat_oracle(phi) >= k
    inst = encode_maxsat(phi, Fraction(k, m))
    for strictness in ("lax", "strict"):
        cfg = SemanticsConfig("multi", strictness)
        assert evaluate(inst.structure, inst.team, inst.formula, cfg) == expected


def test_assignment_count_second_opinion():
    # independent enumeration order: bitmask integers counting down
    phi = CnfFormula(((("a", 0), ("b", 1), ("a", 1)),
                      (("b", 0), ("b", 0), ("a", 0))))
    variables = phi.variables
    found = False
    for mask in range(2 ** len(variables) - 1, -1, -1):
        a = {v: bool(mask >> i & 1) for i, v in enumerate(variables)}
        if all(any(a[var] == (parity == 0) for var, parity in clause)
               for clause in phi.clauses):
            found = True
    assert sat_oracle(phi) == found
