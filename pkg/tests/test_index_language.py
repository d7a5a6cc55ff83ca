import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from refcalc import index_language as il
from refcalc.generators import random_point, random_subset, sample_points

A = il.Atom("A")
AA = il.Prod(A, A)


def test_intersections_from_examples():
    assert il.intersect(il.cofinite(), il.finite([1, 2])) == il.finite([1, 2])
    assert il.intersect(il.cofinite([0, 1]), il.cofinite([1, 2])) == il.cofinite([0, 1, 2])
    got = il.intersect(il.graph(1), il.Rect(il.cofinite(), il.finite([7])))
    assert il.finiteness(got) == [(6, 7)]


def test_graph_graph_intersection():
    assert il.intersect(il.graph(2), il.graph(2)) == il.as_union(il.graph(2))
    assert il.is_empty(il.intersect(il.graph(0), il.graph(1)))


def test_finiteness_examples():
    assert il.finiteness(il.finite([5, 3])) == [3, 5]
    assert il.finiteness(il.cofinite()) is None
    assert il.finiteness(il.Rect(il.finite([1]), il.cofinite())) is None
    assert il.cardinality(il.Rect(il.finite([1, 2]), il.finite([0, 4, 9]))) == 6


def test_projection_examples():
    assert il.project(il.Rect(il.finite([1, 2]), il.cofinite()), 1) == il.finite([1, 2])
    assert il.project(il.graph(0), 2) == il.cofinite()
    assert il.project(il.Rect(il.finite([]), il.cofinite()), 2) == il.finite([])
    assert il.project(il.graph(-3), 1) == il.cofinite([0, 1, 2])
    with pytest.raises(ValueError):
        il.project(il.graph(0), 3)


def test_graph_domain_is_clamped():
    g = il.graph(-2)
    assert g.start == 2
    assert il.contains(g, (2, 0))
    assert not il.contains(g, (1, -1))


def test_cofinite_forbidden_over_finset():
    with pytest.raises(il.IndexTypeError):
        il.check_subset(il.cofinite(), il.FinSet(3))
    with pytest.raises(il.IndexTypeError):
        il.check_subset(il.finite([3]), il.FinSet(3))


def test_graph_needs_equal_atoms():
    with pytest.raises(il.IndexTypeError):
        il.check_subset(il.union_of([il.graph(0)]), il.Prod(A, il.Atom("B")))


def test_intersect_type_mismatch():
    with pytest.raises(il.IndexTypeError):
        il.intersect(il.finite([1]), il.Pair(il.finite([]), il.finite([])))


def test_empty_union_prints_as_empty_rect():
    assert str(il.union_of([])) == "Rect(Fin{}, Fin{})"


# ---------------------------------------------------------------- properties

INDEXES = [A, il.FinSet(4), AA, il.Sum(A, il.FinSet(2)), il.Prod(A, il.Atom("B")), il.Sum(AA, A)]


@st.composite
def subsets(draw, n=1):
    index = draw(st.sampled_from(INDEXES))
    seed = draw(st.integers(0, 2**32))
    rng = random.Random(seed)
    return index, [random_subset(rng, index) for _ in range(n)], rng


def _probe(index, rng, subsets_):
    pts = [random_point(rng, index) for _ in range(40)]
    for d in subsets_:
        pts += sample_points(rng, d, 12)
    return [p for p in pts if p is not None]


@settings(max_examples=250, deadline=None)
@given(subsets(3))
def test_intersection_laws(data):
    index, (a, b, c), rng = data
    ab, ba = il.intersect(a, b, index), il.intersect(b, a, index)
    abc = il.intersect(ab, c, index)
    a_bc = il.intersect(a, il.intersect(b, c, index), index)
    aa = il.intersect(a, a, index)
    for p in _probe(index, rng, (a, b, c)):
        inside = il.contains(a, p) and il.contains(b, p)
        assert il.contains(ab, p) == inside == il.contains(ba, p)
        assert il.contains(abc, p) == il.contains(a_bc, p) == (inside and il.contains(c, p))
        assert il.contains(aa, p) == il.contains(a, p)
    assert il.is_finite(ab) == il.is_finite(ba)
    assert il.is_finite(abc) == il.is_finite(a_bc)
    assert il.is_finite(aa) == il.is_finite(a)


@settings(max_examples=250, deadline=None)
@given(subsets(2))
def test_finite_side_makes_intersection_finite(data):
    index, (a, b), _ = data
    if il.is_finite(a):
        got = il.finiteness(il.intersect(a, b, index))
        assert got is not None
        assert set(got) == {p for p in il.finiteness(a) if il.contains(b, p)}


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([AA, il.Prod(A, il.FinSet(3)), il.Prod(il.Sum(A, A), A)]), st.integers(0, 2**32))
def test_projection_contains_points(index, seed):
    rng = random.Random(seed)
    d = random_subset(rng, index)
    p1, p2 = il.project(d, 1, index), il.project(d, 2, index)
    for a, b in sample_points(rng, d, 30):
        assert il.contains(p1, a)
        assert il.contains(p2, b)


@settings(max_examples=200, deadline=None)
@given(subsets(2))
def test_union_semantics(data):
    index, (a, b), rng = data
    u = il.union(a, b, index)
    for p in _probe(index, rng, (a, b)):
        assert il.contains(u, p) == (il.contains(a, p) or il.contains(b, p))


@settings(max_examples=200, deadline=None)
@given(subsets(1))
def test_finite_enumeration_is_exact(data):
    index, (a,), rng = data
    pts = il.finiteness(a)
    if pts is None:
        return
    assert pts == sorted(set(pts))
    assert all(il.contains(a, p) for p in pts)
    for p in _probe(index, rng, ()):
        assert il.contains(a, p) == (p in pts)
