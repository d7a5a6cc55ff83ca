import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from refcalc import index_language as il
from refcalc.families import (
    FIN,
    FULL,
    POLAR,
    RECT,
    SUMFAM,
    NormalFormError,
    UnsupportedFormError,
    equivalent,
    form_member,
    ideal_form,
    ideal_leq,
    member_ideal,
    member_polar,
    normalize,
    polar_depth,
    polar_form,
    polar_power,
)
from refcalc.generators import random_family, random_index, random_subset

A, B = il.Atom("A"), il.Atom("B")
AA = il.Prod(A, A)


def test_normalize_examples():
    assert normalize(polar_power(FULL(A), 3)) == FIN(A)
    assert normalize(POLAR(SUMFAM(FULL(A), FIN(B)))) == SUMFAM(FIN(A), FULL(B))
    assert normalize(FIN(A)) == FIN(A)


def test_polar_rect_normal_forms():
    R = RECT(FIN(A), FULL(A))
    assert normalize(POLAR(R)) == POLAR(R)
    assert normalize(polar_power(R, 2)) == polar_power(R, 2)
    assert normalize(polar_power(R, 3)) == POLAR(R)
    assert normalize(polar_power(R, 6)) == polar_power(R, 2)


def test_member_ideal_examples():
    assert member_ideal(il.finite([3, 5]), FIN(A))
    assert not member_ideal(il.cofinite(), FIN(A))
    assert member_ideal(il.Rect(il.cofinite(), il.finite([2])), RECT(FULL(A), FIN(A)))


def test_member_polar_examples():
    assert member_polar(il.cofinite(), FIN(A))
    assert not member_polar(il.cofinite(), FULL(A))
    assert member_polar(il.union_of([il.graph(0)]), RECT(FIN(A), FULL(A)))


def test_graph_against_rect_families():
    diag = il.union_of([il.graph(0)])
    assert not member_polar(diag, RECT(FULL(A), FULL(A)))
    assert member_polar(diag, RECT(FULL(A), FIN(A)))
    assert not member_ideal(diag, RECT(FIN(A), FULL(A)))
    assert member_ideal(diag, RECT(FULL(A), FULL(A)))


def test_unnormalized_polar_nest_is_rejected():
    with pytest.raises(NormalFormError):
        member_ideal(il.cofinite(), polar_power(RECT(FIN(A), FIN(A)), 4))


def test_nested_products_are_unsupported():
    I = il.Prod(AA, A)
    F = RECT(RECT(FIN(A), FIN(A)), FULL(A))
    with pytest.raises(UnsupportedFormError):
        member_ideal(il.union_of([il.Rect(il.union_of([]), il.cofinite())]), F)


def test_equivalent_ignores_generator_redundancy():
    assert equivalent(RECT(FIN(A), FIN(A)), FIN(AA))
    assert equivalent(RECT(FULL(A), FULL(A)), FULL(AA))
    assert not equivalent(RECT(FIN(A), FULL(A)), RECT(FULL(A), FIN(A)))
    assert equivalent(polar_power(RECT(FULL(A), FULL(A)), 2), RECT(FULL(A), FULL(A)))


def test_ideal_leq_examples():
    assert ideal_leq(FIN(AA), RECT(FIN(A), FULL(A)))
    assert ideal_leq(RECT(FIN(A), FULL(A)), FULL(AA))
    assert not ideal_leq(RECT(FIN(A), FULL(A)), RECT(FULL(A), FIN(A)))
    with pytest.raises(il.IndexTypeError):
        ideal_leq(FIN(A), FIN(B))


def _case(seed):
    rng = random.Random(seed)
    index = random_index(rng)
    F = random_family(rng, index, 4)
    return rng, index, F


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32))
def test_normal_forms_have_short_polar_runs(seed):
    _, _, F = _case(seed)
    n = normalize(F)
    assert polar_depth(n) <= 2
    assert normalize(n) == n
    assert ideal_form(n) == ideal_form(F)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32))
def test_two_routes_agree(seed):
    rng, index, F = _case(seed)
    n = normalize(F)
    fi, fp = ideal_form(F), polar_form(F)
    for _ in range(30):
        beta = random_subset(rng, index)
        assert member_ideal(beta, n) == form_member(beta, fi)
        assert member_polar(beta, n) == form_member(beta, fp)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_adding_a_union_of_members_changes_nothing(seed):
    rng, index, F = _case(seed)
    n = normalize(F)
    members = [b for b in (random_subset(rng, index) for _ in range(40)) if member_ideal(b, n)]
    if len(members) < 2:
        return
    u = il.union(members[0], members[1], index)
    assert member_ideal(u, n)
    probes = [random_subset(rng, index) for _ in range(20)]
    before = [(member_ideal(b, n), member_polar(b, n)) for b in probes]
    assert [(member_ideal(b, n), member_polar(b, n)) for b in probes] == before
