import pytest

from refcalc.bialgebra import (
    FdAlgebra,
    FdCoalgebra,
    alpha_p,
    base_field_algebra,
    base_field_bialgebra,
    check_axioms,
    compose,
    dual_morphism,
    dualize,
    enumerate_bialgebra_homs,
    function_algebra,
    golden_catalog,
    group_algebra,
    group_hom_count,
    is_bialgebra_morphism,
    mu_n,
    mutations,
)
from refcalc.fields import GF, QQ


def _constants(B):
    return (B.mult, B.unit, B.comult, B.counit)


@pytest.mark.parametrize("name,B", golden_catalog(), ids=lambda x: x if isinstance(x, str) else "")
def test_catalog_axioms_and_duals(name, B):
    assert check_axioms(B).ok, name
    D = dualize(B)
    assert check_axioms(D).ok, name
    assert dualize(D) == B


def test_unit_failure_has_witness():
    F = QQ
    # K[x]/(x^2) with the unit moved onto x
    mult = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    A = FdAlgebra(F, ("1", "x"), mult, [0, 1])
    rep = check_axioms(A)
    assert not rep.ok
    (bad,) = rep.failures()
    assert bad.law == "unit" and bad.witness == (0,)
    assert rep.as_dict()["unit"] == {"witness": [0]}


def test_alpha_p_is_a_bialgebra():
    for p in (2, 3, 5):
        assert check_axioms(alpha_p(p)).ok


def test_dual_of_functions_is_group_algebra():
    F = GF(5)
    assert _constants(dualize(function_algebra(2, F))) == _constants(group_algebra(2, F))
    assert _constants(dualize(group_algebra(2, F))) == _constants(function_algebra(2, F))


def test_trivial_coalgebra_dualizes_to_base_field():
    F = GF(3)
    C = FdCoalgebra(F, ("c",), [[[1]]], [1])
    A = dualize(C)
    K = base_field_algebra(F)
    assert (A.mult, A.unit) == (K.mult, K.unit)


def test_flag_swap():
    B = group_algebra(3, QQ)
    assert B.is_commutative and B.is_cocommutative
    D = dualize(function_algebra((2, 3), QQ))
    assert D.is_commutative == function_algebra((2, 3), QQ).is_cocommutative


def test_grouplike_basis_of_mu_n():
    B = mu_n(3, GF(7))
    for k in range(3):
        assert B.comult[k][k][k] == 1
        assert sum(1 for i in range(3) for j in range(3) if B.comult[k][i][j]) == 1


def test_mutations_are_detected():
    muts = mutations()
    assert len(muts) >= 6
    for name, B in muts:
        assert not check_axioms(B).ok, name


def test_dual_is_contravariant():
    F = GF(3)
    f = [[F(1), F(2)], [F(0), F(1)], [F(1), F(1)]]  # 2 -> 3
    g = [[F(2), F(0), F(1)]]  # 3 -> 1
    gf = compose(g, f, F)
    assert dual_morphism(gf) == compose(dual_morphism(f), dual_morphism(g), F)
    ident = [[F(1), F(0)], [F(0), F(1)]]
    assert dual_morphism(ident) == ident


def test_dual_morphism_dimension_mismatch():
    F = GF(2)
    with pytest.raises(ValueError, match="columns"):
        dual_morphism([[F(1), F(0)]], source_dim=3)
    with pytest.raises(ValueError, match="ragged"):
        dual_morphism([[F(1)], [F(0), F(1)]])


def test_counit_dualizes_to_unit():
    for _, B in golden_catalog()[:12]:
        assert dualize(B).unit == B.counit


def test_dual_of_bialgebra_morphism():
    F = GF(3)
    B, Bp = group_algebra(2, F), group_algebra(2, F)
    for f in enumerate_bialgebra_homs(B, Bp):
        assert is_bialgebra_morphism(dual_morphism(f), dualize(Bp), dualize(B))


def test_bialgebra_hom_counts():
    F3, F7 = GF(3), GF(7)
    assert len(enumerate_bialgebra_homs(group_algebra(2, F3), group_algebra(2, F3))) == 2
    assert len(enumerate_bialgebra_homs(group_algebra(2, F7), group_algebra(3, F7))) == 1
    B = group_algebra(3, F7)
    homs = enumerate_bialgebra_homs(B, base_field_bialgebra(F7))
    assert homs == [[list(B.counit)]]


@pytest.mark.parametrize("G,H", [(2, 2), (2, 4), (3, 6), (4, 2), ((2, 2), 2)])
def test_group_hom_counts_match(G, H):
    F = GF(7)
    n = len(enumerate_bialgebra_homs(group_algebra(G, F), group_algebra(H, F)))
    assert n == group_hom_count(G, H)


def test_mismatched_structure_sizes():
    with pytest.raises(ValueError, match="2x2x2"):
        FdAlgebra(QQ, ("1", "x"), [[[1, 0]]], [1, 0])
