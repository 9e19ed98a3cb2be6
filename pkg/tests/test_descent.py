import itertools

import pytest

from leonardkit.descent import (
    DescentWitness,
    admissible,
    construct_descendent,
    descendent_endpoints,
    existence_probe,
    is_descendent,
    witness_identities,
)
from leonardkit.errors import EndpointOutOfRange, FreeParameterConstraintViolated, NotAdmissible
from leonardkit.fields import QQ
from leonardkit.leonard import from_parameter_array
from leonardkit.linalg import Matrix, kernel_basis
from leonardkit.params import ParameterArray, instantiate, make_case
from suite import F4, NAMES, OMEGA, array, case, iic


def balanced_kernel_dim(ls, lsp, rho):
    """Oracle: dimension of the space of forms x^T M y obeying (B1) and (B2) directly.

    Each forbidden pair of eigenlines contributes one linear equation in the
    entries of M; a nonzero solution is a balanced form.
    """
    F, n, m = ls.field, ls.d + 1, lsp.d + 1
    line = lambda E: E.first_nonzero_column()  # noqa: E731
    rows = []
    for i, Es in enumerate(ls.E_star):
        for j, Fs in enumerate(lsp.E_star):
            if i - rho != j:
                x, y = line(Es), line(Fs)
                rows.append([x[a] * y[b] for a in range(n) for b in range(m)])
    for i, E in enumerate(ls.E):
        for j, Ep in enumerate(lsp.E):
            if not j <= i <= j + ls.d - lsp.d:
                x, y = line(E), line(Ep)
                rows.append([x[a] * y[b] for a in range(n) for b in range(m)])
    return len(kernel_basis(Matrix(F, rows, n * m)))


def test_reference_witnesses():
    pa, pa2 = array("IIC"), instantiate(iic(2))
    assert is_descendent(pa, pa2, 0) == DescentWitness(0, QQ(1), QQ(0))
    assert is_descendent(pa, pa2, 1) == DescentWitness(1, QQ(1), QQ(-1))
    assert descendent_endpoints(pa, pa2) == [0, 1]
    bent = ParameterArray(pa2.theta, (QQ(0), QQ(1), QQ(3)), pa2.varphi, pa2.phi)
    assert is_descendent(pa, bent, 0) is None
    with pytest.raises(EndpointOutOfRange):
        is_descendent(pa, pa2, 2)


def test_witness_identities():
    pa, pa2 = array("IIC"), instantiate(iic(2))
    for rho in (0, 1):
        w = is_descendent(pa, pa2, rho)
        assert witness_identities(pa, pa2, w)
        assert not witness_identities(pa, pa2, DescentWitness(rho, w.xi_star + 1, w.zeta_star))


# r = s s* makes every phi vanish, so those targets are left out
TARGETS = [c for c in itertools.product([1, 2, 4], [1, 2, -1], [1, -1], [0, 3]) if c[0] != c[1] * c[2]]


@pytest.mark.parametrize("r,s,s_star,t0", TARGETS)
def test_criterion_matches_operator_oracle(r, s, s_star, t0):
    """is_descendent agrees with the existence of a nonzero (B1)+(B2) form, both ways."""
    ls = from_parameter_array(array("IIC"))
    cp = make_case("IIC", QQ, d=2, r=r, s=s, s_star=s_star, theta0_star=t0)
    pa2 = instantiate(cp)
    ls2 = from_parameter_array(pa2)
    for rho in (0, 1):
        found = is_descendent(array("IIC"), pa2, rho) is not None
        dim = balanced_kernel_dim(ls, ls2, rho)
        assert found == (dim > 0)
        if found:
            assert dim == 1


@pytest.mark.parametrize("source", ["II", "III-4", "I"])
def test_oracle_on_other_families(source):
    cp = case(source)
    ls = from_parameter_array(array(source))
    for dp in (1, 2):
        for rho in range(cp.d - dp + 1):
            ok, _ = admissible(cp.tag, cp.d, dp, rho)
            if not ok:
                continue
            target = from_parameter_array(instantiate(construct_descendent(cp, dp, rho)))
            for r2 in range(cp.d - dp + 1):
                found = is_descendent(array(source), instantiate(construct_descendent(cp, dp, rho)), r2)
                assert (found is not None) == (balanced_kernel_dim(ls, target, r2) > 0)


def test_admissibility_table():
    allowed_iv = {(1, 0), (1, 2), (3, 0)}
    for dp in range(1, 4):
        for rho in range(3 - dp + 1):
            assert admissible("IV", 3, dp, rho)[0] == ((dp, rho) in allowed_iv)
    for d in (4, 5, 6, 7):
        for dp in range(1, d + 1):
            for rho in range(d - dp + 1):
                ok = admissible("III", d, dp, rho)[0]
                expect = (dp == 1 or dp % 2 == 0) if d % 2 == 0 else (dp % 2 == 1 and rho % 2 == 0)
                assert ok == expect
    ok, reason = admissible("III", 4, 3, 0)
    assert not ok and "d'=1 or d' even" in reason
    assert admissible("III", 5, 3, 1)[0] is False
    assert admissible("IIC", 3, 2, 1) == (True, "")


@pytest.mark.parametrize("name", NAMES)
def test_every_admissible_pair_is_constructed(name):
    cp = case(name)
    pa = array(name)
    for dp in range(1, cp.d + 1):
        for rho in range(cp.d - dp + 1):
            if admissible(cp.tag, cp.d, dp, rho)[0]:
                target = construct_descendent(cp, dp, rho)
                w = is_descendent(pa, instantiate(target), rho)
                assert w is not None and witness_identities(pa, instantiate(target), w)
            else:
                with pytest.raises(NotAdmissible):
                    construct_descendent(cp, dp, rho)


def test_construct_iic_with_free_values():
    out = construct_descendent(iic(3), 2, 1, {"s": 1, "s_star": 1})
    assert out.tag == "IIC" and out.d == 2
    v = out.values
    assert v["s"] * v["s_star"] / v["r"] == QQ("1/2")


def test_construct_case_iv():
    out = construct_descendent(case("IV"), 3, 0, {"h": OMEGA})
    v = out.values
    assert out.tag == "IV"
    assert (v["h"], v["h_star"], v["r"], v["s"], v["s_star"]) == (OMEGA, F4.one, OMEGA, OMEGA, OMEGA)
    assert v["theta0"] == 0 and v["theta0_star"] == 0


def test_existence_probe():
    assert existence_probe(iic(3), 2, 0) is not None
    out = existence_probe(case("IV"), 1, 2)
    assert out.tag == "IIC"
    v = out.values
    pa = array("IV")
    ratio = 1 - pa.phi[2] / pa.varphi[2]
    assert v["s"] * v["s_star"] / v["r"] == ratio == OMEGA + 1
    with pytest.raises(NotAdmissible):
        existence_probe(case("IV"), 2, 0)


def test_inconsistent_free_values():
    with pytest.raises(FreeParameterConstraintViolated):
        construct_descendent(iic(3), 2, 0, {"r": 2, "s": 1, "s_star": 2})
