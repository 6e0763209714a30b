"""Inner-outer factorization and the unwinding recursions."""

import numpy as np
import pytest

from afd import (
    CircularSignal,
    HardyFunction,
    circle_grid,
    factorize,
    front_loading_defect,
    inner_factor,
    mobius,
    outer_factor,
    unwinding_reconstruct,
    uwa_decompose,
    uwafd_decompose,
)
from afd.errors import DegenerateModulus

from conftest import kernel_sum, random_hardy


def _boundary(coeffs, n=1024):
    return HardyFunction(np.asarray(coeffs, dtype=complex)).boundary(n)


def test_outer_factor_of_outer_function():
    # (2 + z)/2 is already outer with positive mean
    o = outer_factor(_boundary([1.0, 0.5]))
    np.testing.assert_allclose(o.coefficients[:2], [1.0, 0.5], atol=1e-10)
    assert np.abs(o.coefficients[2:]).max() < 1e-10
    assert o.coefficients[0].imag == pytest.approx(0.0, abs=1e-12)
    assert o.coefficients[0].real > 0.0


def test_factorize_monomial():
    n = 1024
    t = circle_grid(n)
    for m in (1, 3, 7):
        fac = factorize(CircularSignal(np.exp(1j * m * t)))
        np.testing.assert_allclose(fac.inner.samples, np.exp(1j * m * t), atol=1e-8)
        assert fac.outer.coefficients[0] == pytest.approx(1.0, abs=1e-8)
        assert fac.consistency(CircularSignal(np.exp(1j * m * t))) < 1e-10


def test_factorize_blaschke_times_outer():
    n = 2048
    z = np.exp(1j * circle_grid(n))
    inner_true = z * mobius(0.5, z) * mobius(-0.3 + 0.2j, z)
    outer_true = 1.0 + 0.4 * z  # zero at -2.5, safely outside
    s = CircularSignal(inner_true * outer_true)
    fac = factorize(s)
    np.testing.assert_allclose(np.abs(fac.inner.samples), 1.0, atol=1e-6)
    # outer factor is positive at the origin, matching outer_true(0) = 1
    np.testing.assert_allclose(fac.outer.coefficients[:2], [1.0, 0.4], atol=1e-6)
    assert fac.consistency(s) < 1e-8


def test_inner_factor_unimodular():
    n = 1024
    f, _, _ = kernel_sum(np.random.default_rng(51), terms=2, r=0.6)
    # shift to keep the boundary modulus away from zero
    c = f.coefficients.copy()
    c[0] += 5.0
    s = HardyFunction(c).boundary(n)
    i = inner_factor(s, outer_factor(s))
    np.testing.assert_allclose(np.abs(i.samples), 1.0, atol=1e-8)


def test_factorize_rejects_vanishing_modulus():
    with pytest.raises(DegenerateModulus):
        factorize(CircularSignal(np.zeros(64, dtype=complex)))
    # more than one percent of samples numerically zero
    s = np.exp(1j * circle_grid(1024))
    s[:100] = 0.0
    with pytest.raises(DegenerateModulus):
        factorize(CircularSignal(s))


def test_uwa_hand_computed_example():
    # f = z(2 + z)/2 peels as 1*z + (1/2)*z^2 with nothing left
    f = HardyFunction(np.array([0.0, 1.0, 0.5], dtype=complex))
    u = uwa_decompose(f, 3)
    np.testing.assert_allclose(u.coefficients, [1.0, 0.5], atol=1e-12)
    np.testing.assert_allclose(u.residual_energy, [1.25, 0.25, 0.0], atol=1e-12)
    t = circle_grid(u.terms[0].cumulative_inner.size)
    np.testing.assert_allclose(u.terms[0].cumulative_inner, np.exp(1j * t), atol=1e-8)
    np.testing.assert_allclose(u.terms[1].cumulative_inner, np.exp(2j * t), atol=1e-8)
    u.validate()


def test_uwa_cumulative_inners_are_unimodular_and_nested():
    rng = np.random.default_rng(52)
    f = random_hardy(rng, m=31)
    u = uwa_decompose(f, 3)
    prev = np.ones_like(u.terms[0].cumulative_inner)
    for k, term in enumerate(u.terms):
        phi = term.cumulative_inner
        np.testing.assert_allclose(np.abs(phi), 1.0, atol=1e-8)
        step = phi / prev
        if k >= 1:
            # every inner factor after the first vanishes at the origin
            assert abs(np.mean(step)) < 1e-8
        prev = phi


def test_uwa_energy_identity_and_meta():
    rng = np.random.default_rng(53)
    for _ in range(3):
        f = random_hardy(rng, m=63)
        u = uwa_decompose(f, 3)
        u.validate()
        drop = -np.diff(u.residual_energy)
        np.testing.assert_allclose(
            drop, np.abs(u.coefficients) ** 2, atol=1e-12 * f.energy()
        )
        assert max(u.meta["factor_consistency"]) < 1e-6
        assert max(u.meta["front_loading"]) <= 1e-10 * f.energy()


def test_uwa_reconstruct():
    rng = np.random.default_rng(55)
    f = random_hardy(rng, m=63)
    u = uwa_decompose(f, 3)
    rec = unwinding_reconstruct(u)
    err = rec.samples - f.boundary(rec.n).samples
    assert np.mean(np.abs(err) ** 2) == pytest.approx(
        u.residual_energy[-1], abs=1e-10 * f.energy()
    )


def test_uwa_late_terms_degrade_gracefully():
    # remainders eventually develop zeros close to the boundary; the
    # log-modulus spikes then exceed the work grid and the identities
    # loosen from machine precision to roughly the grid resolution,
    # while the factorization product itself stays exact
    rng = np.random.default_rng(53)
    f = random_hardy(rng, m=63)
    u = uwa_decompose(f, 5)
    u.validate()  # built-in 1e-8 relative gate still holds
    assert max(u.meta["factor_consistency"]) < 1e-10
    rec = unwinding_reconstruct(u)
    err = rec.samples - f.boundary(rec.n).samples
    defect = abs(np.mean(np.abs(err) ** 2) - u.residual_energy[-1])
    assert defect < 1e-4 * f.energy()


def test_uwafd_peels_inner_then_selects():
    # z^2 e_{0.3}: unwinding removes z^2, the selection then lands on 0.3
    k = np.arange(64)
    c = np.zeros(66, dtype=complex)
    c[2:] = np.sqrt(1 - 0.09) * 0.3**k
    f = HardyFunction(c)
    u = uwafd_decompose(f, max_terms=5)
    assert len(u.terms) == 1
    assert abs(u.terms[0].a - 0.3) < 1e-6
    assert abs(u.terms[0].c - 1.0) < 1e-6
    assert u.residual_energy[-1] < 1e-10
    assert u.kind == "uwafd"
    u.validate()


def test_uwafd_single_line():
    # analytic signal of cos(3t) is (1/2) z^3: one unwinding term, done
    c = np.zeros(4, dtype=complex)
    c[3] = 0.5
    u = uwafd_decompose(HardyFunction(c), max_terms=4)
    assert len(u.terms) == 1
    assert abs(u.terms[0].c - 0.5) < 1e-12
    assert u.residual_energy[-1] < 1e-20


def test_uwafd_random_signals():
    rng = np.random.default_rng(55)
    f = random_hardy(rng, m=63)
    u = uwafd_decompose(f, max_terms=5, energy_tol=0.0)
    u.validate()
    assert np.all(np.diff(u.residual_energy) <= 1e-12 * f.energy())
    assert max(u.meta["factor_consistency"]) < 1e-6
    rec = unwinding_reconstruct(u)
    err = rec.samples - f.boundary(rec.n).samples
    assert np.mean(np.abs(err) ** 2) == pytest.approx(
        u.residual_energy[-1], abs=1e-8 * f.energy()
    )


def test_front_loading_defect_hand_case():
    f = HardyFunction(np.array([0.0, 1.0, 0.5], dtype=complex))
    outer = HardyFunction(np.array([1.0, 0.5], dtype=complex))
    # outer tail mass sits strictly below the source tail mass
    assert front_loading_defect(f, outer) == pytest.approx(-0.25)


def test_front_loading_on_factorizations():
    rng = np.random.default_rng(56)
    for _ in range(3):
        f = random_hardy(rng, m=31)
        c = f.coefficients.copy()
        c[0] += 4.0  # keep the modulus bounded away from zero
        f = HardyFunction(c)
        fac = factorize(f.boundary(1024))
        assert front_loading_defect(f, fac.outer) <= 1e-10 * f.energy()
