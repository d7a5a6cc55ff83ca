from fractions import Fraction

import pytest

from refcalc.bialgebra import (
    GuardExceeded,
    base_field_algebra,
    enumerate_algebra_homs,
    is_algebra_morphism,
    quotient_algebra,
    tensor_algebra,
)
from refcalc.fields import GF, QQ, DomainError, QuotientRing, dual_numbers, test_algebra_catalog
from refcalc.linalg import hankel_relation, kernel_basis, matvec, minimal_annihilator, rank


def test_kernel_rational():
    (v,) = kernel_basis([[QQ(1), QQ(1)], [QQ(1), QQ(1)]])
    assert v == [Fraction(1), Fraction(-1)]


def test_kernel_f2():
    F = GF(2)
    (v,) = kernel_basis([[F(1), F(1)]])
    assert v == [F(1), F(1)]


def test_kernel_injective_is_empty():
    F = GF(5)
    assert kernel_basis([[F(1), F(0)], [F(0), F(1)]]) == []


def test_rank_nullity_and_annihilation():
    F = GF(7)
    m = [[F(x) for x in row] for row in ([1, 2, 3, 4], [2, 4, 6, 1], [3, 6, 2, 5])]
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == 4
    for v in ker:
        assert not any(matvec(m, v, F))


def test_mixed_domains_rejected():
    with pytest.raises(DomainError):
        kernel_basis([[GF(2)(1), GF(3)(1)]])


def test_hankel_powers_of_two():
    seq = [QQ(2**n) for n in range(7)]
    assert hankel_relation(seq, 1, QQ) == [-2, 1]
    assert minimal_annihilator(seq, 3, QQ) == [-2, 1]


def test_quotient_ring_reduces():
    S = QuotientRing(GF(3), [1, 0, 1])  # t^2 = -1
    t = S.gen()
    assert t * t == S(-1)
    assert S.size == 9


def test_quotient_ring_rejects_large_degree():
    with pytest.raises(DomainError):
        QuotientRing(GF(2), [1, 0, 0, 0, 0, 1])


def test_homs_dual_numbers():
    F = GF(2)
    A = quotient_algebra([0, 0, 1], F)
    homs = enumerate_algebra_homs(A, dual_numbers(2))
    assert len(homs) == 2
    # columns are images of 1 and x
    images_of_x = sorted(tuple(int(h[r][1]) for r in range(2)) for h in homs)
    assert images_of_x == [(0, 0), (0, 1)]


def test_homs_square_roots_of_one():
    F = GF(3)
    A = quotient_algebra([-1, 0, 1], F)
    S = QuotientRing(F, [0, 1])
    homs = enumerate_algebra_homs(A, S)
    assert sorted(int(h[0][1]) for h in homs) == [1, 2]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_homs_from_base_field(p):
    A = base_field_algebra(GF(p))
    for S in test_algebra_catalog(p):
        assert len(enumerate_algebra_homs(A, S)) == 1


def test_homs_are_verified_morphisms():
    F = GF(3)
    A = quotient_algebra([0, -1, 0, 1], F)
    for S in test_algebra_catalog(3):
        SA = quotient_algebra(list(S.modulus), F)
        for h in enumerate_algebra_homs(A, S):
            assert is_algebra_morphism(h, A, SA)


def test_homs_of_tensor_multiply():
    F = GF(2)
    A = quotient_algebra([0, 1, 1], F)
    B = quotient_algebra([0, 0, 1], F)
    for S in test_algebra_catalog(2):
        n = len(enumerate_algebra_homs(tensor_algebra(A, B), S))
        assert n == len(enumerate_algebra_homs(A, S)) * len(enumerate_algebra_homs(B, S))


def test_hom_guard(monkeypatch):
    monkeypatch.setenv("REFCALC_GUARD_MAX", "10")
    A = quotient_algebra([0, 0, 0, 1], GF(3))
    with pytest.raises(GuardExceeded):
        enumerate_algebra_homs(A, dual_numbers(3))
