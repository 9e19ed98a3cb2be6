import pytest

from leonardkit.descent import admissible, construct_descendent, existence_probe
from leonardkit.errors import HypothesisViolated, MiddleSystemMismatch, NotADescendent, NotAdmissible
from leonardkit.fields import QQ
from leonardkit.forms import (
    BalancedForm,
    build_balanced_form,
    check_balanced,
    compose,
    dual_objects_check,
    induce_descendent,
    intersection_dimensions,
    projection_maps,
    sigma_intertwine_check,
    uniqueness_dimension,
)
from leonardkit.leonard import from_parameter_array
from leonardkit.linalg import Matrix, Subspace
from leonardkit.params import instantiate
from suite import NAMES, array, case, iic


def sys_of(cp):
    return from_parameter_array(instantiate(cp))


@pytest.fixture(scope="module")
def iic_pair():
    return sys_of(iic(3)), sys_of(iic(2))


def test_reference_gram(iic_pair):
    ls, ls2 = iic_pair
    f0 = build_balanced_form(ls, ls2, 0)
    assert f0.B == Matrix(QQ, [[1, 0, 0], [0, -4, 0], [0, 0, 4], [0, 0, 0]])
    f1 = build_balanced_form(ls, ls2, 1)
    assert f1.B == Matrix(QQ, [[0, 0, 0], [1, 0, 0], [0, -4, 0], [0, 0, 4]])


def test_not_a_descendent(iic_pair):
    ls, _ = iic_pair
    other = sys_of(iic(2, r=3))
    with pytest.raises(NotADescendent):
        build_balanced_form(ls, other, 0)


def test_report_passes_with_both_reversal_endpoints(iic_pair):
    ls, ls2 = iic_pair
    for rho in (0, 1):
        rep = check_balanced(build_balanced_form(ls, ls2, rho))
        assert rep.ok and rep.rank == 3
        assert set(rep.remark_pairs) == {"id", "↓", "⇓", "↓⇓"}


def test_off_pattern_entry_breaks_b1(iic_pair):
    ls, ls2 = iic_pair
    f = build_balanced_form(ls, ls2, 0)
    rows = [list(r) for r in f.B.rows]
    rows[3][0] = QQ(1)
    rep = check_balanced(BalancedForm(Matrix(QQ, rows), 0, ls, ls2))
    assert (3, 0) in rep.b1 and not rep.ok


def test_zero_form_rejected(iic_pair):
    ls, ls2 = iic_pair
    rep = check_balanced(BalancedForm(Matrix.zeros(QQ, 4, 3), 0, ls, ls2))
    assert not rep.nonzero and not rep.ok


def test_sigma(iic_pair):
    ls, ls2 = iic_pair
    f = build_balanced_form(ls, ls2, 1)
    assert sigma_intertwine_check(f)
    M = f.standard_matrix
    assert (ls.E_star[0].T * M).is_zero()  # E*_0 lies below the endpoint
    assert ls.E_star[1].T * M == M * ls2.E_star[0]


def test_projections_and_epsilon(iic_pair):
    ls, ls2 = iic_pair
    f = build_balanced_form(ls, ls2, 0)
    pr = projection_maps(f)
    assert pr.epsilon == 1 and pr.maps_e0 and pr.injective
    assert projection_maps(f.scaled(5)).epsilon == 5
    assert check_balanced(f.scaled(5)).ok


def test_dual_objects(iic_pair):
    ls, ls2 = iic_pair
    d0 = dual_objects_check(build_balanced_form(ls, ls2, 0))
    d1 = dual_objects_check(build_balanced_form(ls, ls2, 1))
    assert d0.ok and d0.factor == 1 and (d0.xi_star, d0.zeta_star) == (1, 0)
    assert d1.ok and d1.factor == 2 and (d1.xi_star, d1.zeta_star) == (1, -1)
    iv = from_parameter_array(array("IV"))
    iv3 = sys_of(construct_descendent(case("IV"), 3, 0))
    assert dual_objects_check(build_balanced_form(iv, iv3, 0)).factor == 1


@pytest.mark.parametrize("name", NAMES)
def test_every_suite_pair(name):
    cp = case(name)
    ls = from_parameter_array(array(name))
    for dp in range(1, cp.d + 1):
        for rho in range(cp.d - dp + 1):
            if not admissible(cp.tag, cp.d, dp, rho)[0]:
                continue
            target = sys_of(construct_descendent(cp, dp, rho))
            f = build_balanced_form(ls, target, rho)
            assert check_balanced(f).ok
            assert sigma_intertwine_check(f)
            assert dual_objects_check(f).ok
            pr = projection_maps(f)
            assert pr.epsilon == 1 and pr.maps_e0 and pr.injective
            assert uniqueness_dimension(ls, target, rho) == 1
            assert intersection_dimensions(ls, dp, rho) == [1] * (dp + 1)


def test_compose_chain():
    l4, l3, l2 = sys_of(iic(4)), sys_of(iic(3)), sys_of(iic(2))
    g = compose(build_balanced_form(l4, l3, 0), build_balanced_form(l3, l2, 0))
    assert g.rho == 0 and check_balanced(g).ok
    h = compose(build_balanced_form(l4, l3, 1), build_balanced_form(l3, l2, 1))
    assert h.rho == 2 and check_balanced(h).ok


def test_compose_with_identity_like_form(iic_pair):
    ls, ls2 = iic_pair
    ident = build_balanced_form(ls, ls, 0)
    f = build_balanced_form(ls, ls2, 1)
    g = compose(ident, f)
    ratio = next(a / b for ra, rb in zip(g.B.rows, f.B.rows) for a, b in zip(ra, rb) if b)
    assert g.B == f.B * ratio


def test_compose_mismatch(iic_pair):
    ls, ls2 = iic_pair
    with pytest.raises(MiddleSystemMismatch):
        compose(build_balanced_form(ls, ls2, 0), build_balanced_form(ls, ls2, 0))


def decompositions(target):
    n = target.d + 1
    return [target.eigenspace(i) for i in range(n)], [target.dual_eigenspace(i) for i in range(n)]


@pytest.mark.parametrize("rho", [0, 1])
def test_induce_round_trip(iic_pair, rho):
    ls, ls2 = iic_pair
    U, Us = decompositions(ls2)
    M = build_balanced_form(ls, ls2, rho).standard_matrix
    a = induce_descendent(ls, U, Us, M, rho, iic(3))
    b = induce_descendent(ls, U, Us, M, rho, iic(3), free={"s": 3, "s_star": -1})
    for i in range(3):
        assert a.eigenspace(i) == b.eigenspace(i) == U[i]
        assert a.dual_eigenspace(i) == b.dual_eigenspace(i) == Us[i]


def test_induce_case_iv():
    ls = from_parameter_array(array("IV"))
    target = sys_of(existence_probe(case("IV"), 1, 2))
    U, Us = decompositions(target)
    M = build_balanced_form(ls, target, 2).standard_matrix
    out = induce_descendent(ls, U, Us, M, 2, case("IV"))
    assert [out.eigenspace(i) for i in range(2)] == U


def test_induce_hypotheses(iic_pair):
    ls, ls2 = iic_pair
    U, Us = decompositions(ls2)
    good = build_balanced_form(ls, ls2, 0)
    # right support in the E*-bases, wrong weights: (B2) breaks
    flat = BalancedForm(Matrix(QQ, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]]), 0, ls, ls2)
    with pytest.raises(HypothesisViolated) as info:
        induce_descendent(ls, U, Us, flat.standard_matrix, 0, iic(3))
    assert info.value.which == "ii"
    with pytest.raises(HypothesisViolated) as info:
        induce_descendent(ls, U, Us, good.standard_matrix, 1, iic(3))
    assert info.value.which == "i"
    with pytest.raises(HypothesisViolated) as info:
        induce_descendent(ls, U, U[:2] + [U[0]], good.standard_matrix, 0, iic(3))
    assert info.value.which == "decomposition"


def test_induce_not_admissible():
    ls = from_parameter_array(array("IV"))
    lines = [Subspace.span(ls.field, 3, [e]) for e in ([1, 0, 0], [0, 1, 0], [0, 0, 1])]
    with pytest.raises(NotAdmissible):
        induce_descendent(ls, lines, lines, Matrix.zeros(ls.field, 4, 3), 0, case("IV"))
