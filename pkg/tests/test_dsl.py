import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from refcalc import index_language as il
from refcalc.dsl import DSLSyntaxError, parse_family, parse_index_term, parse_subset
from refcalc.families import FIN, FULL, POLAR, RECT, SUMFAM
from refcalc.generators import random_family, random_index, random_subset


def test_index_examples():
    assert parse_index_term("Sum(Atom A, FinSet 3)") == il.Sum(il.Atom("A"), il.FinSet(3))
    assert parse_index_term("Prod(Atom A, Atom A)") == il.Prod(il.Atom("A"), il.Atom("A"))


def test_truncated_input_reports_column_13():
    with pytest.raises(DSLSyntaxError) as e:
        parse_index_term("Prod(Atom A,")
    assert (e.value.line, e.value.column) == (1, 13)
    assert "line 1, column 13" in str(e.value)


def test_error_positions_on_later_lines():
    with pytest.raises(DSLSyntaxError) as e:
        parse_index_term("Sum(Atom A,\n  Atom 7)")
    assert e.value.line == 2


def test_finset_must_be_nonnegative():
    with pytest.raises((DSLSyntaxError, ValueError)):
        parse_index_term("FinSet -1")


def test_subset_forms_and_aliases():
    AA = parse_index_term("Prod(Atom A, Atom A)")
    d = parse_subset("Union(Graph(1), Rect(Finite{2,1}, Cofinite{}))", AA)
    assert str(d) == "Union(Graph(1), Rect(Fin{1,2}, Cofin{}))"
    g = parse_subset("Graph(0, Cofin{3})", AA)
    assert not il.contains(g, (3, 3))


def test_family_type_error_carries_position():
    S = parse_index_term("Sum(Atom A, Atom B)")
    with pytest.raises(il.IndexTypeError) as e:
        parse_family("RECT(FIN, FULL)", S)
    assert "column 1" in str(e.value)


def test_family_parse():
    I = parse_index_term("Sum(Atom A, Prod(Atom B, Atom B))")
    F = parse_family("POLAR(SUMFAM(FULL, RECT(FIN, POLAR(FULL))))", I)
    B = il.Atom("B")
    want = POLAR(SUMFAM(FULL(il.Atom("A")), RECT(FIN(B), POLAR(FULL(B)))))
    assert F == want


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32))
def test_round_trips(seed):
    rng = random.Random(seed)
    index = random_index(rng)
    assert parse_index_term(str(index)) == index
    d = random_subset(rng, index)
    assert parse_subset(str(d), index) == d
    F = random_family(rng, index, 4)
    assert parse_family(str(F), index) == F
