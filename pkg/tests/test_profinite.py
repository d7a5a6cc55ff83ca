import pytest

from refcalc.bialgebra import (
    GuardExceeded,
    check_axioms,
    dualize,
    function_algebra,
    group_algebra,
    quotient_algebra,
)
from refcalc.fields import GF, QQ, QuotientRing, dual_numbers, test_algebra_catalog
from refcalc.profinite import (
    ADDITIVE,
    MULTIPLICATIVE,
    AlgebraTower,
    adic_tower,
    bar_factorization,
    cartier_check,
    finite_dual,
    geometric,
    linrec_from_recurrence,
    linrec_product,
    nilpotents,
    ones,
    product_values,
    spec_points,
    tower_coherence,
    tower_point_values,
)

F2, F3, F5 = GF(2), GF(3), GF(5)


def test_x_adic_tower_dims():
    T = adic_tower([0, 1], 3, F2)
    assert [A.dim for A in T.levels] == [1, 2, 3]
    assert tower_coherence(T)


def test_depth_one_tower():
    T = adic_tower([0, 1], 1, F2)
    assert T.depth == 1 and T.transitions == ()


def test_quadratic_generator_tower():
    T = adic_tower([0, 1, 1], 2, F2)
    assert [A.dim for A in T.levels] == [2, 4]


def test_tower_size_guard():
    with pytest.raises(GuardExceeded):
        adic_tower([0, 0, 1], 17, F2)


def test_non_surjective_transition_rejected():
    A1 = quotient_algebra([0, 1], F2)
    A2 = quotient_algebra([0, 0, 1], F2)
    with pytest.raises(ValueError):
        AlgebraTower([A1, A2], [[[0, 0]]])


def test_tower_points():
    T = adic_tower([0, 1], 3, F2)
    assert len(spec_points(T, dual_numbers(2))) == 2
    assert len(spec_points(T, QuotientRing(F2, [0, 1]))) == 1


@pytest.mark.parametrize("p", [2, 3])
def test_adic_points_are_nilpotents(p):
    F = GF(p)
    T = adic_tower([0, 1], 3, F)
    for S in test_algebra_catalog(p):
        assert tower_point_values(T, [0, 1], S) == nilpotents(S)


def test_points_of_finite_algebra():
    A = quotient_algebra([-1, 0, 1], F3)
    assert len(spec_points(A, QuotientRing(F3, [0, 1]))) == 2


def test_bar_factorization_over_dual_numbers():
    rep = bar_factorization(dual_numbers(2))
    assert rep.equal and rep.unique_minimal and rep.direct == 4


def test_finite_dual_examples():
    B = group_algebra(2, F5)
    C = finite_dual(B.algebra)
    assert C.comult == tuple(
        tuple(tuple(B.mult[i][j][k] for j in range(2)) for i in range(2)) for k in range(2)
    )
    K = finite_dual(quotient_algebra([0, 1], F3))
    assert K.dim == 1 and K.comult == (((F3(1),),),)
    D = finite_dual(quotient_algebra([0, 0, 1], F2))
    # Delta(x*) = x* (x) 1* + 1* (x) x*
    assert [[int(c) for c in row] for row in D.comult[1]] == [[0, 1], [1, 0]]
    A = quotient_algebra([0, 0, 1], F2)
    back = dualize(D)
    assert (back.mult, back.unit) == (A.mult, A.unit)


def test_fibonacci():
    w = linrec_from_recurrence([-1, -1, 1], [0, 1])
    assert w.values(8) == [0, 1, 1, 2, 3, 5, 8, 13]
    assert w.annihilates([-1, -1, 1], upto=10)
    assert not w.annihilates([-1, 1])


def test_constant_ones():
    assert ones(QQ).values(5) == [1] * 5


def test_init_length_checked():
    with pytest.raises(ValueError, match="initial values"):
        linrec_from_recurrence([-1, -1, 1], [0])


def test_multiplicative_unit():
    fib = linrec_from_recurrence([-1, -1, 1], [0, 1], MULTIPLICATIVE)
    prod = linrec_product(ones(QQ, MULTIPLICATIVE), fib)
    assert prod.values(15) == fib.values(15)


def test_hurwitz_square_of_ones():
    prod = linrec_product(ones(QQ), ones(QQ))
    assert list(prod.modulus) == [-2, 1]
    assert prod.values(10) == [2**n for n in range(10)]


@pytest.mark.parametrize("a,b", [(2, 3), (-1, 4), (0, 5)])
def test_geometric_sum(a, b):
    prod = linrec_product(geometric(a, QQ), geometric(b, QQ))
    assert list(prod.modulus) == [-(a + b), 1]


def test_product_modulus_annihilates():
    w = linrec_from_recurrence([-1, -1, 1], [0, 1], ADDITIVE, F5)
    v = linrec_from_recurrence([2, 0, 1], [1, 3], ADDITIVE, F5)
    prod = linrec_product(w, v)
    assert prod.values(21) == product_values(w, v, 21)
    assert prod.degree <= w.degree * v.degree


def test_tag_mismatch():
    with pytest.raises(ValueError, match="structure tags"):
        linrec_product(ones(QQ, ADDITIVE), ones(QQ, MULTIPLICATIVE))


def test_cartier_z2_f3():
    rep = cartier_check(2, 3, QuotientRing(F3, [0, 1]))
    assert rep.ok and rep.points_algebra == 2


def test_cartier_z2_f2():
    rep = cartier_check(2, 2, QuotientRing(F2, [0, 1]))
    assert rep.ok and rep.points_algebra == 1


def test_double_dual_group_algebra():
    B = group_algebra((2, 2), F3)
    assert dualize(dualize(B)) == B
    assert check_axioms(function_algebra((2, 2), F3)).ok
