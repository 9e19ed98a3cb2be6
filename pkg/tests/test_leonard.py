import pytest

from leonardkit.errors import InvalidParameterArray, ZeroScale
from leonardkit.fields import QQ
from leonardkit.leonard import (
    LeonardSystem,
    affine_transform,
    check_axioms,
    d4_apply,
    dual_switching_element,
    extract_parameter_array,
    from_parameter_array,
    nu_and_k,
    span_filtration_check,
    standard_form,
    switching_coefficients,
    switching_solution_dimension,
)
from leonardkit.linalg import Matrix, Subspace
from leonardkit.params import ParameterArray, dual_array
from suite import NAMES, array, system

D1 = ParameterArray.make(QQ, [0, 1], [0, 1], [1], [2])


def test_split_form_matrices():
    ls = system("IIC")
    A, As = ls.A, ls.A_star
    assert [str(A[i, i]) for i in range(4)] == ["0", "1", "2", "3"]
    assert [A[i + 1, i] for i in range(3)] == [1, 1, 1]
    assert [str(As[i, i + 1]) for i in range(3)] == ["-6", "-8", "-6"]
    d1 = from_parameter_array(D1)
    assert d1.A == Matrix(QQ, [[0, 0], [1, 1]])
    assert d1.A_star == Matrix(QQ, [[0, 1], [0, 1]])
    assert check_axioms(d1).ok


def test_invalid_array_refused():
    with pytest.raises(InvalidParameterArray):
        from_parameter_array(ParameterArray.make(QQ, [0, 1], [0, 1], [0], [1]))


@pytest.mark.parametrize("name", NAMES)
def test_round_trip_and_axioms(name):
    ls = system(name)
    assert check_axioms(ls).ok
    assert extract_parameter_array(ls) == array(name)


def test_axiom_failures():
    ls = system("IIC")
    reversed_only = LeonardSystem(ls.A, ls.A_star, ls.E, ls.E_star[::-1], ls.eigen, ls.eigen_star[::-1])
    assert check_axioms(reversed_only).ok
    squared = LeonardSystem(ls.A * ls.A, ls.A_star, ls.E, ls.E_star, ls.eigen, ls.eigen_star)
    assert not check_axioms(squared).ok


@pytest.mark.parametrize("name", ["IIC", "IV"])
def test_d4_relations(name):
    ls = system(name)
    same = lambda a, b: d4_apply(ls, a) == d4_apply(ls, b)  # noqa: E731
    assert same("", "**") and same("", "↓↓") and same("", "⇓⇓")
    assert same("⇓*", "*↓") and same("↓*", "*⇓") and same("↓⇓", "⇓↓")
    assert same("dD", "↓⇓")
    assert extract_parameter_array(d4_apply(ls, "⇓")).varphi == array(name).phi


def test_dual_array_matches_operator_extraction():
    for name in NAMES:
        assert extract_parameter_array(d4_apply(system(name), "*")) == dual_array(array(name))


def test_affine_transform():
    ls = system("IIC")
    assert affine_transform(ls, 1, 0, 1, 0) == ls
    moved = affine_transform(ls, 2, 1, 1, 0)
    assert [str(t) for t in moved.eigen] == ["1", "3", "5", "7"]
    assert moved.E == ls.E and check_axioms(moved).ok
    with pytest.raises(ZeroScale):
        affine_transform(ls, 0, 0, 1, 0)


def test_nu_and_k_reference():
    nu, k = nu_and_k(system("IIC"))
    assert [str(x) for x in k] == ["1", "-6", "12", "-8"] and nu == -1


@pytest.mark.parametrize("name", NAMES)
def test_k_identities(name):
    nu, k = nu_and_k(system(name))
    assert k[0] == 1
    assert sum(k[1:], k[0]) == nu


def test_switching_reference():
    assert switching_coefficients(array("IIC")) == [1, QQ("1/2"), QQ("1/4"), QQ("1/8")]
    d1 = from_parameter_array(D1)
    assert dual_switching_element(d1) == d1.E_star[0] + d1.E_star[1] * 2


@pytest.mark.parametrize("name", NAMES + ["d1"])
def test_switching_maps_e0_onto_ed(name):
    ls = from_parameter_array(D1) if name == "d1" else system(name)
    S = dual_switching_element(ls)
    assert ls.eigenspace(0).image(S) == ls.eigenspace(ls.d)
    assert switching_solution_dimension(ls) == 1


def test_standard_form():
    sf = standard_form(system("IIC"))
    assert sf.G == Matrix.diag(QQ, [1, -6, 12, -8])
    d1 = from_parameter_array(D1)
    nu, k = nu_and_k(d1)
    assert standard_form(d1).G == Matrix.diag(QQ, [1, (d1.E_star[1] * d1.E[0]).trace() * nu])


@pytest.mark.parametrize("name", NAMES)
def test_span_filtration(name):
    assert span_filtration_check(system(name))


def test_eigenspaces_are_lines():
    ls = system("IIC")
    assert all(ls.eigenspace(i).dim == 1 for i in range(4))
    assert sum((ls.dual_eigenspace(i) for i in range(1, 4)), ls.dual_eigenspace(0)) == Subspace.full(QQ, 4)
