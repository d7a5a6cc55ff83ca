from fractions import Fraction

import pytest

from refcalc import index_language as il
from refcalc.families import FIN, FULL, POLAR, RECT, SUMFAM, polar_power
from refcalc.fields import DomainError
from refcalc.support import (
    BuildKind,
    CoefficientMismatch,
    ModuleObject,
    build,
    catalog_modules,
    direct_product,
    direct_sum,
    dual,
    modules_equal_randomized,
    pair,
)

A, B = il.Atom("A"), il.Atom("B")
AA, AB = il.Prod(A, A), il.Prod(A, B)


def test_dual_examples():
    assert dual(direct_sum(A)).family == FIN(A)
    M = ModuleObject(il.Sum(A, B), SUMFAM(FULL(A), FIN(B)))
    assert modules_equal_randomized(dual(dual(M)), M, seed=3)
    F3 = direct_sum(il.FinSet(3))
    assert modules_equal_randomized(dual(F3), F3, seed=1)


def test_build_examples():
    H = build(BuildKind.HOM, direct_sum(A), direct_sum(B))
    assert H.index == AB and H.family == RECT(FIN(A), FULL(B))
    P = build("Product", direct_product(A), direct_product(B))
    assert P.family == SUMFAM(FIN(A), FIN(B))
    assert modules_equal_randomized(P, direct_product(il.Sum(A, B)), seed=2)
    D = build(BuildKind.DUAL_TENSOR, direct_sum(A), direct_sum(B))
    assert D.family == RECT(FIN(A), FIN(B))
    assert modules_equal_randomized(D, direct_product(AB), seed=5)


def test_build_rejects_coefficient_mismatch():
    with pytest.raises(CoefficientMismatch):
        build(BuildKind.HOM, direct_sum(A, "Q"), direct_sum(B, "Fp:5"))


def test_equality_examples():
    M = ModuleObject(AB, polar_power(RECT(FULL(A), FULL(B)), 2))
    N = ModuleObject(AB, RECT(FULL(A), FULL(B)))
    assert modules_equal_randomized(M, N, seed=0).consistent
    r = modules_equal_randomized(direct_sum(A), direct_product(A), seed=0)
    assert not r.consistent and r.witness == il.cofinite()
    with pytest.raises(il.IndexTypeError):
        modules_equal_randomized(direct_sum(A), direct_sum(B))


def test_equality_is_deterministic():
    M = ModuleObject(AA, RECT(FIN(A), FULL(A)))
    N = ModuleObject(AA, RECT(FULL(A), FIN(A)))
    assert modules_equal_randomized(M, N, seed=9) == modules_equal_randomized(M, N, seed=9)


def test_pairing_examples():
    x = direct_sum(A).element([(il.finite([1, 2]), 1)])
    w = direct_product(A).element([(il.cofinite(), 3)])
    assert pair(x, w) == 6
    x = direct_product(A).element([(il.cofinite([0]), 1)])
    w = direct_sum(A).element([(il.finite([0, 1]), 2)])
    assert pair(x, w) == 2
    M = ModuleObject(AA, RECT(FIN(A), FULL(A)))
    x = M.element([(il.union_of([il.graph(0)]), 1)])
    w = dual(M).element([(il.Rect(il.finite([2, 3]), il.cofinite()), 1)])
    assert pair(x, w) == 2


def test_pairing_is_bilinear_on_a_small_example():
    M = direct_sum(A)
    D = dual(M)
    x = M.element([(il.finite([1, 2, 3]), 2)])
    y = M.element([(il.finite([3, 9]), Fraction(1, 2))])
    w = D.element([(il.cofinite([1]), 5)])
    assert pair(x + y, w) == pair(x, w) + pair(y, w)
    assert pair(3 * x, w) == 3 * pair(x, w)
    assert pair(x - x, w) == 0


def test_elements_respect_support_ideal():
    with pytest.raises(ValueError):
        direct_sum(A).element([(il.cofinite(), 1)])


def test_pairing_requires_the_dual():
    x = direct_sum(A).element([(il.finite([1]), 1)])
    with pytest.raises(il.IndexTypeError):
        pair(x, direct_sum(A).element([]))


def test_coefficient_tags():
    assert ModuleObject(A, FULL(A), "dual:3").domain.degree == 2
    with pytest.raises(DomainError):
        ModuleObject(A, FULL(A), "R")


def test_catalog_is_reflexive():
    for ring in ("Q", "Z", "Fp:7"):
        for name, M in catalog_modules(ring).items():
            assert modules_equal_randomized(dual(dual(M)), M, seed=11, cases=100), name
