import math

import pytest

import magcrit


def test_constants():
    assert magcrit.ALPHA_INVERSE == 137.037
    assert magcrit.TESLA_FACTOR == 4.414e9


def test_coefficients_at_origin():
    c = magcrit.coefficients(0.0)
    assert c["a"] == pytest.approx(math.sqrt(math.pi / 2), rel=1e-14)
    assert c["b"] == c["a"]
    assert c["a_prime"] == pytest.approx(-1.0, rel=1e-14)


def test_coefficient_identities():
    for z in (0.1, 1.0, 7.3, 42.0):
        c = magcrit.coefficients(z)
        assert c["b"] == pytest.approx(c["a"] + z, rel=1e-14)
        assert c["a_prime"] == pytest.approx(z * c["a"] - 1.0, rel=1e-13, abs=1e-15)


def test_moment_specializes_to_a():
    for z in (0.0, 2.0, 10.0):
        a = magcrit.coefficients(z)["a"]
        assert magcrit.landau_moment(0, z, "inverse_radius") == pytest.approx(a, abs=1e-11)


def test_landau_eigenvalue_reference_row():
    mu = magcrit.landau_eigenvalue(0.5)
    assert mu == pytest.approx(-0.0887408, abs=1e-6)
    B = magcrit.critical_field_from_mu(mu)
    assert B == pytest.approx(507.941, abs=1e-2)
    assert magcrit.to_tesla_log10(B) == pytest.approx(12.3506, abs=1e-3)


def test_bound_ordering_single_nu():
    lo = magcrit.landau_eigenvalue(0.7, variant="lower")
    mid = magcrit.landau_eigenvalue(0.7, variant="main")
    hi = magcrit.landau_eigenvalue(0.7, variant="upper")
    assert lo <= mid + 1e-10 <= hi + 2e-10


def test_unconstrained_eigenvalue_below_landau():
    mu_l = magcrit.landau_eigenvalue(1.0)
    mu = magcrit.unconstrained_eigenvalue(1.0)
    assert mu < mu_l  # wider variational class
    assert mu == pytest.approx(-0.573221, rel=0.02)


def test_build_table_and_record_identity():
    rows = magcrit.build_table([0.5, 0.9], source="landau")
    assert [r["ok"] for r in rows] == [True, True]
    for r in rows:
        assert r["B"] * r["mu"] ** 2 == pytest.approx(4.0, rel=1e-14)


def test_invalid_inputs_raise():
    with pytest.raises(ValueError):
        magcrit.landau_eigenvalue(0.0)
    with pytest.raises(ValueError):
        magcrit.critical_field_from_mu(0.1)
    with pytest.raises(ValueError):
        magcrit.build_table([], source="landau")
