import math

import pytest
from hypothesis import given, strategies as st

from kgosc.errors import ThetaOutOfRange, ZeroAngularMomentumInGUP
from kgosc.model import Mode, QuantumNumbers, Source, Variant, params_from_dimensionless
from kgosc.spectrum import (gup_energy_chain, gup_energy_chain_sq, gup_energy_eq70_printed,
                            limit_offset, no_gup_energy, pt_eigenvalue, pt_parameters,
                            sigma_factor, spectrum_table)

LATTICE = [(r, n, j) for r in (0.1, 0.5, 1.0) for n in range(4) for j in (-3, -2, -1, 1, 2, 3)]


def naive_chain_sq(r, theta, qn, variant=Variant.EQ60):
    pt = pt_parameters(theta, qn.j, variant)
    return 1 + r * theta * (pt.zeta1 + pt.zeta2 + 2 * qn.n) ** 2 - r / theta


@pytest.mark.parametrize("r,n,j,expected", [(0.5, 1, 1, 2.0), (0.37, 0, 0, 1.0), (1.0, 2, 0, 3.0)])
def test_no_gup_examples(r, n, j, expected):
    assert no_gup_energy(r, QuantumNumbers(n, j)) == (expected, -expected)


def test_pt_parameters_examples():
    pt = pt_parameters(0.5, 1)
    assert pt.zeta1 == 1.5
    assert pt.Sigma == pytest.approx(math.sqrt(2), rel=1e-15)
    assert pt.zeta2 == pytest.approx(0.5 + math.sqrt(2), rel=1e-15)
    pt = pt_parameters(0.5, 2)
    assert pt.zeta1 == 2.5
    assert pt.Sigma == pytest.approx(math.sqrt(5), rel=1e-15)
    assert pt.zeta2 == pytest.approx(0.5 + math.sqrt(5), rel=1e-15)


@pytest.mark.parametrize("j", [1, 2, 5])
def test_pt_parameters_small_theta(j):
    theta = 1e-6
    pt = pt_parameters(theta, j)
    assert pt.Sigma == pytest.approx(1.0, abs=1e-10)
    assert pt.zeta2 - (1 / theta - 0.5) == pytest.approx(0.0, abs=10 * theta * j * j)


def test_pt_parameters_errors():
    with pytest.raises(ThetaOutOfRange):
        pt_parameters(1.2, 1)
    with pytest.raises(ThetaOutOfRange):
        pt_parameters(0.0, 1)
    with pytest.raises(ZeroAngularMomentumInGUP):
        pt_parameters(0.3, 0)
    assert pt_parameters(0.3, 0, allow_extrapolation=True).zeta1 == 0.5


def test_chain_examples():
    ep, em = gup_energy_chain(0.5, 1e-9, QuantumNumbers(1, 1))
    assert ep == pytest.approx(2.0, abs=1e-6) and em == -ep
    ep, _ = gup_energy_chain(0.1, 0.5, QuantumNumbers(0, 1))
    assert ep == pytest.approx(math.sqrt(1 + 0.05 * (2 + math.sqrt(2)) ** 2 - 0.2), rel=1e-14)


@pytest.mark.parametrize("theta", [0.05, 0.2, 0.5, 0.9])
@pytest.mark.parametrize("variant", list(Variant))
def test_expanded_chain_equals_naive_form(theta, variant):
    for n in range(4):
        for j in (1, 2, 3):
            qn = QuantumNumbers(n, j)
            assert gup_energy_chain_sq(0.3, theta, qn, variant) == pytest.approx(
                naive_chain_sq(0.3, theta, qn, variant), rel=1e-12)


def test_chain_is_pt_eigenvalue_shifted():
    qn = QuantumNumbers(2, 3)
    pt = pt_parameters(0.4, 3)
    e_sq = 1 + 0.7 * (pt_eigenvalue(pt, 2) - 1 / 0.4)
    assert gup_energy_chain_sq(0.7, 0.4, qn) == pytest.approx(e_sq, rel=1e-13)


def test_eq70_examples():
    qn = QuantumNumbers(1, 2)
    r, theta = 0.2, 0.25
    sig = math.sqrt(1 + 4 / 9)
    expected = math.sqrt(1 - 2 * r + 2 * sig * r * 5 + r * theta * (16 - 2 * sig * 5 + 4))
    assert gup_energy_eq70_printed(r, theta, qn)[0] == pytest.approx(expected, rel=1e-14)
    assert gup_energy_eq70_printed(r, 1e-12, qn)[0] == pytest.approx(
        no_gup_energy(r, qn)[0], rel=1e-10)


@pytest.mark.parametrize("r,theta,n,j", [(0.2, 0.25, 1, 2), (0.2, 0.3, 0, 1), (0.7, 0.6, 3, 3)])
def test_eq70_discrepancy_is_r_theta_2N_plus_2(r, theta, n, j):
    # expanding the chain gives (N+1)^2 + 1 where the printed bracket has N^2
    qn = QuantumNumbers(n, j)
    gap = gup_energy_chain_sq(r, theta, qn) - gup_energy_eq70_printed(r, theta, qn)[0] ** 2
    assert gap == pytest.approx(r * theta * (2 * qn.N + 2), rel=1e-10)
    assert gap > 0


@pytest.mark.parametrize("r,n,j", LATTICE)
def test_limit_property(r, n, j):
    qn = QuantumNumbers(n, j)
    ref = no_gup_energy(r, qn)[0]
    assert abs(gup_energy_chain(r, 1e-9, qn)[0] - ref) / ref <= 1e-6
    assert abs(limit_offset(r, qn, Variant.EQ60)) <= 1e-6 * ref ** 2
    assert limit_offset(r, qn, Variant.EQ69) == pytest.approx(r, rel=1e-6)


def test_degeneracy_breaking():
    for r in (0.1, 0.5, 1.0):
        for theta in (0.1, 0.3, 0.5):
            # N = 4 from (n, |j|) = (0, 4), (1, 2); N = 3 from (0, 3), (1, 1)
            for a, b in [((0, 4), (1, 2)), ((0, 3), (1, 1)), ((0, 6), (2, 2))]:
                qa, qb = QuantumNumbers(*a), QuantumNumbers(*b)
                assert qa.N == qb.N
                assert no_gup_energy(r, qa) == no_gup_energy(r, qb)
                assert gup_energy_chain(r, theta, qa)[0] != gup_energy_chain(r, theta, qb)[0]


@given(r=st.floats(0.01, 5), theta=st.floats(1e-6, 0.99), j=st.integers(-6, 6).filter(bool),
       n=st.integers(0, 20))
def test_monotone_in_n_and_branch_symmetric(r, theta, j, n):
    lo = gup_energy_chain(r, theta, QuantumNumbers(n, j))
    hi = gup_energy_chain(r, theta, QuantumNumbers(n + 1, j))
    assert hi[0] > lo[0]
    assert lo[0] + lo[1] == 0
    ep, em = gup_energy_eq70_printed(r, theta, QuantumNumbers(n, j))
    assert ep + em == 0


@given(theta=st.floats(1e-4, 0.99), j=st.integers(-10, 10).filter(bool))
def test_pt_identities(theta, j):
    pt = pt_parameters(theta, j)
    assert pt.sin_strength == pytest.approx(j * j - 0.25, rel=1e-12)
    eq56 = j * j + 0.75 - 2 / theta + 1 / theta ** 2
    assert pt.cos_strength == pytest.approx(eq56, rel=1e-12)
    assert pt.Sigma >= 1.0
    assert pt.Sigma == pytest.approx(math.sqrt(1 + j * j / (1 / theta - 1) ** 2), rel=1e-12)
    bad = pt_parameters(theta, j, Variant.EQ69)
    assert bad.sin_strength == pytest.approx(j * j - 0.25, rel=1e-12)
    assert abs(bad.cos_strength - eq56) > 1e-6 * abs(eq56)


def test_table_single_row():
    table = spectrum_table(params_from_dimensionless(0.5), 0, 0)
    assert len(table.rows) == 1
    row = table.rows[0]
    assert (row.N, row.E_plus, row.E_minus, row.source) == (0, 1.0, -1.0, Source.NOGUP_CLOSED)


def test_table_enumeration():
    table = spectrum_table(params_from_dimensionless(0.5), 1, 1)
    assert [r.N for r in table.rows] == [0, 1, 1, 2, 3, 3]
    expected = [1, math.sqrt(2), math.sqrt(2), math.sqrt(3), 2, 2]
    assert [r.E_plus for r in table.rows] == pytest.approx(expected, rel=1e-15)


def test_table_gup_counting():
    table = spectrum_table(params_from_dimensionless(0.2, 0.3), 2, 2, Mode.GUP)
    assert len(table.rows) == 12
    assert all(r.j != 0 and r.source is Source.GUP_CHAIN for r in table.rows)
    keys = [(r.N, abs(r.j), r.n) for r in table.rows]
    assert keys == sorted(keys)
    assert all(r.E_plus == -r.E_minus for r in table.rows)


def test_table_is_deterministic():
    p = params_from_dimensionless(0.2, 0.3)
    assert spectrum_table(p, 3, 3, Mode.GUP) == spectrum_table(p, 3, 3, Mode.GUP)


def test_sigma_factor_at_zero():
    assert sigma_factor(0.0, 5) == 1.0
