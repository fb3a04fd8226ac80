import math

import numpy as np
import pytest

from conftest import draw_params
from oscillator_entanglement.entropy import (
    DISCREPANT,
    FAIL,
    PASS,
    ROUTES,
    entropy_report,
    exponent_sign,
    linear_entropy_paper,
    paper_separable_root,
    paper_terms,
    purity_gaussian_closed,
    purity_quadrature,
    condition_report,
)
from oscillator_entanglement.errors import ComplexRegime, DivisionByZeroB, NegativeRadicand
from oscillator_entanglement.kernel import KernelCoefficients, kernel_coefficients
from oscillator_entanglement.oracle import linear_entropy_oracle
from oscillator_entanglement.params import SystemParams, omega_max_entangled, omega_separable


def cancelled_purity(params):
    """A/B with the common factor (E^2 - 2 omega E + k) divided out by hand."""
    e = math.sqrt(params.omega_eff_sq)
    k = params.kappa / params.m
    w = params.omega
    return math.sqrt(w * (e * e + k + 2 * w * e) / ((e + w) * (k + w * e)))


def test_paper_terms_symmetric(symmetric):
    # E^2 = 2, k = 1, omega = 1
    e = math.sqrt(2.0)
    a, b = paper_terms(symmetric)
    assert a == pytest.approx((9 - 8) * e, rel=1e-14)
    assert b == pytest.approx(e * 1 - (3 + 2 * e) * (2 - 2), abs=1e-14)


def test_closed_form_matches_cancelled_ratio(rng):
    for _ in range(50):
        p = draw_params(rng, real_z=True)
        if p.kappa < 1e-3:
            continue
        try:
            value = linear_entropy_paper(p)
        except (DivisionByZeroB, NegativeRadicand):
            continue
        assert value == pytest.approx(1 - cancelled_purity(p), abs=1e-10)


def test_a_and_b_vanish_together_at_omega_m(rng):
    for _ in range(20):
        p = draw_params(rng)
        at_m = p.with_(omega=omega_max_entangled(p))
        a, b = paper_terms(at_m)
        scale = (at_m.omega_eff_sq + at_m.kappa / at_m.m) ** 2 * at_m.omega * math.sqrt(at_m.omega_eff_sq)
        assert abs(a) <= 1e-12 * scale
        with pytest.raises(DivisionByZeroB):
            linear_entropy_paper(at_m)


def test_limit_at_omega_m_is_not_one(symmetric):
    w_m = omega_max_entangled(symmetric)
    at_m = symmetric.with_(omega=w_m)
    limit = 1 - cancelled_purity(at_m)
    near = linear_entropy_paper(symmetric.with_(omega=w_m * (1 - 1e-4)))
    assert near == pytest.approx(limit, abs=1e-4)
    assert limit < 0.5
    # the kernel route is finite at the tie and lands on the same limit
    kernel = entropy_report(at_m, ("kernel",)).s_l_kernel
    assert kernel == pytest.approx(limit, abs=1e-8)


def test_complex_regime_raises(symmetric):
    with pytest.raises(ComplexRegime):
        linear_entropy_paper(symmetric.with_(kappa=0.0))


def test_unknown_mode(symmetric):
    with pytest.raises(ValueError):
        linear_entropy_paper(symmetric, mode="other")


def test_exponent_is_negative(rng):
    for _ in range(50):
        p = draw_params(rng, real_z=True)
        assert exponent_sign(p) < 0


def test_literal_form_saturates_at_large_beta(symmetric):
    w = 0.9
    values = [linear_entropy_paper(symmetric.with_(omega=w, beta=b), "literal") for b in (1, 10, 100, 1e4)]
    assert values[-1] == 1.0
    assert np.all(np.diff(values) > 0) or values[-2] == 1.0


def test_separable_locus_of_closed_form(rng):
    for _ in range(10):
        p = draw_params(rng, real_z=True)
        if p.kappa < 0.05:
            continue
        root = paper_separable_root(p)
        assert root == pytest.approx(math.sqrt(p.kappa / p.m), rel=1e-8)
        assert root != pytest.approx(omega_separable(p), rel=1e-3)


def test_gaussian_purity_examples():
    assert purity_gaussian_closed(KernelCoefficients.from_exponents(2.0, 2.0)) == 1.0
    assert purity_gaussian_closed(KernelCoefficients.from_exponents(4.0, 1.0)) == 0.5


def test_quadrature_on_examples():
    assert purity_quadrature(KernelCoefficients.from_exponents(0.7, 0.7)) == pytest.approx(1.0, abs=1e-9)
    assert purity_quadrature(KernelCoefficients.from_exponents(4.0, 1.0)) == pytest.approx(0.5, abs=1e-9)


def test_kernel_route_equals_algebraic_form(rng):
    checked = 0
    for _ in range(40):
        p = draw_params(rng, real_z=True)
        r = entropy_report(p, ("paper_algebraic", "kernel", "quadrature"))
        if r.s_l_paper_algebraic is None:
            continue
        checked += 1
        assert r.s_l_kernel == pytest.approx(r.s_l_paper_algebraic, abs=1e-8)
        assert r.s_l_kernel == pytest.approx(r.s_l_quadrature, abs=1e-8)
    assert checked >= 20


def test_out_of_range_values_are_flagged_not_clamped(rng):
    for _ in range(60):
        p = draw_params(rng, real_z=True)
        r = entropy_report(p)
        for route in ROUTES:
            v = r.value(route)
            if v is not None and not 0 <= v <= 1:
                assert f"{route}:OutOfRange" in r.flags
                assert not r.failed(route)
    # uncoupled points give a negative kernel-route entropy
    r = entropy_report(SystemParams(1, 1, 1, 3, 0), ("kernel",))
    assert r.s_l_kernel == pytest.approx(1 - math.sqrt(5 / 4), rel=1e-10)
    assert r.flags == ["kernel:OutOfRange"]


def test_failed_routes_become_flags(symmetric):
    r = entropy_report(symmetric.with_(kappa=0.0))
    assert r.s_l_oracle == pytest.approx(0.0, abs=1e-15)
    for route in ("paper_literal", "paper_algebraic", "kernel", "quadrature"):
        assert f"{route}:ComplexRegime" in r.flags
        assert r.failed(route)
    assert not r.failed("oracle")
    assert r.deviation == 0.0


def test_oracle_monotone_in_omega(rng):
    for _ in range(5):
        p = draw_params(rng)
        e = math.sqrt(p.omega_eff_sq)
        grid = np.geomspace(0.1 * e, 10 * e, 60)
        s = [linear_entropy_oracle(p.with_(omega=w)) for w in grid]
        assert np.all(np.diff(s) < 0)


def test_oracle_monotone_in_kappa(rng):
    for _ in range(5):
        p = draw_params(rng)
        grid = np.linspace(0, 10 * p.m * p.omega**2, 60)
        s = [linear_entropy_oracle(p.with_(kappa=k)) for k in grid]
        assert s[0] == pytest.approx(0.0, abs=1e-15)
        assert np.all(np.diff(s) > 0)


def test_condition_report_verdicts(symmetric):
    claims = {c.key: c for c in condition_report(symmetric)}
    assert claims["max_entangled.A_vanishes"].verdict == PASS
    assert claims["max_entangled.B_nonzero"].verdict == FAIL
    assert claims["max_entangled.paper_algebraic"].verdict == FAIL
    assert "DivisionByZeroB" in claims["max_entangled.paper_algebraic"].detail
    assert claims["max_entangled.oracle"].verdict == DISCREPANT
    assert claims["separable.paper_root"].verdict == FAIL
    assert claims["separable.paper_root"].measured == pytest.approx(1.0, rel=1e-8)
    assert claims["separable.oracle"].verdict == DISCREPANT
    for key in ("large_Omega.omega_M", "large_Omega.omega_S", "small_Omega.omega_M", "small_Omega.omega_S"):
        assert claims[f"asymptotic.{key}"].verdict == PASS
    assert claims["uncoupled.oracle"].verdict == PASS
    assert claims["uncoupled.kernel"].verdict == FAIL
    assert all(c.verdict in (PASS, FAIL, DISCREPANT) for c in claims.values())


def test_condition_report_survives_random_params(rng):
    for _ in range(5):
        p = draw_params(rng)
        claims = condition_report(p)
        assert len({c.key for c in claims}) == len(claims)
        assert all(c.verdict in (PASS, FAIL, DISCREPANT) for c in claims)
