import pytest

from refcalc.bialgebra import group_algebra, quotient_algebra
from refcalc.determination import (
    FdModule,
    hom_base_change_check,
    regular_module,
    submodule_stability_check,
    trivial_module,
)
from refcalc.fields import GF, test_algebra_catalog
from refcalc.linalg import identity

F2, F3 = GF(2), GF(3)


def test_regular_group_algebra_over_dual_numbers():
    A = group_algebra(2, F2).algebra
    M = regular_module(A)
    rep = hom_base_change_check(A, M, M, test_algebra_catalog(2)[1])
    assert rep.ok and rep.base_dim == 2 and rep.extended_dim == 4


@pytest.mark.parametrize("S", test_algebra_catalog(3), ids=lambda S: S.name)
def test_base_field_modules(S):
    A = quotient_algebra([0, 1], F3)
    M = FdModule(A, [identity(2, F3)])
    Mp = FdModule(A, [identity(3, F3)])
    rep = hom_base_change_check(A, M, Mp, S)
    assert rep.ok and rep.base_dim == 6 and rep.extended_dim == 6 * S.degree


@pytest.mark.parametrize("S", test_algebra_catalog(3), ids=lambda S: S.name)
def test_projection_onto_residue_field(S):
    A = quotient_algebra([0, 0, 1], F3)
    rep = hom_base_change_check(A, regular_module(A), trivial_module(A, [1, 0]), S)
    assert rep.ok and rep.base_dim == 1 and rep.extended_dim == S.degree


def test_nonhom_stays_nonhom():
    A = quotient_algebra([0, 0, 1], F3)
    M = regular_module(A)
    swap = [[0, 1], [1, 0]]
    rep = hom_base_change_check(A, M, M, test_algebra_catalog(3)[1], nonhoms=[swap])
    assert rep.nonhom_detected


def test_supplied_hom_is_rejected_as_nonhom():
    A = quotient_algebra([0, 0, 1], F3)
    M = regular_module(A)
    with pytest.raises(ValueError, match="is an A-module map"):
        hom_base_change_check(A, M, M, test_algebra_catalog(3)[0], nonhoms=[[[1, 0], [0, 1]]])


def test_ideal_is_stable_everywhere():
    A = quotient_algebra([0, 0, 1], F2)
    rep = submodule_stability_check(A, regular_module(A), [[0, 1]])
    assert rep.stable_at_base and rep.ran_base_change
    assert rep.per_probe and all(rep.per_probe.values())


def test_unit_line_is_not_a_submodule():
    A = quotient_algebra([0, 0, 1], F2)
    rep = submodule_stability_check(A, regular_module(A), [[1, 0]])
    assert not rep.stable_at_base and not rep.ran_base_change


def test_base_failure_persists_on_probes():
    A = quotient_algebra([0, 0, 1], F2)
    rep = submodule_stability_check(A, regular_module(A), [[1, 0]], probe_failures=True)
    assert rep.ran_base_change and not any(rep.per_probe.values()) and rep.consistent


def test_zero_subspace():
    A = quotient_algebra([0, 0, 1], F2)
    rep = submodule_stability_check(A, regular_module(A), [])
    assert rep.stable_at_base and all(rep.per_probe.values())


def test_bad_module_rejected():
    A = quotient_algebra([0, 0, 1], F2)
    with pytest.raises(ValueError, match="not an A-module"):
        FdModule(A, [identity(2, F2), identity(2, F2)])
