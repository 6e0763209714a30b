"""Greedy one-at-a-time decomposition: selection, sifting, energy bookkeeping."""

import numpy as np
import pytest

from afd import (
    HardyFunction,
    coefficient,
    core_afd_decompose,
    maximal_selection,
    objective,
    reconstruct,
    sift,
)
from afd.errors import ZeroResidual

from conftest import kernel_sum, random_hardy, random_params, residual_at


def test_objective_and_coefficient_formulas():
    f = HardyFunction(np.array([1.0, -0.5, 0.25j], dtype=complex))
    a = 0.3 - 0.2j
    val = f(a)
    assert coefficient(f, a) == pytest.approx(np.sqrt(1 - abs(a) ** 2) * val)
    assert objective(f, a) == pytest.approx((1 - abs(a) ** 2) * abs(val) ** 2)
    # vectorized over parameter arrays
    pts = np.array([0.1, 0.2 + 0.3j, -0.5j])
    np.testing.assert_allclose(
        objective(f, pts), [objective(f, complex(p)) for p in pts]
    )


def test_selection_recovers_kernel_parameter():
    rng = np.random.default_rng(31)
    f, params, _ = kernel_sum(rng, terms=1, r=0.7)
    a = maximal_selection(f)
    assert abs(a - params[0]) < 1e-6


def test_selection_on_monomial_hits_known_radius():
    # for f = z^m the objective is (1-r^2) r^(2m), maximized at sqrt(m/(m+1))
    for m in (1, 3, 6):
        c = np.zeros(m + 1, dtype=complex)
        c[m] = 1.0
        a = maximal_selection(HardyFunction(c))
        assert abs(a) == pytest.approx(np.sqrt(m / (m + 1.0)), abs=1e-5)


def test_selection_include_keeps_better_candidate():
    rng = np.random.default_rng(32)
    f, params, _ = kernel_sum(rng, terms=1, r=0.7)
    a = maximal_selection(f, include=(params[0],))
    assert abs(a - params[0]) < 1e-12


def test_selection_rejects_zero():
    with pytest.raises(ZeroResidual):
        maximal_selection(HardyFunction(np.zeros(4, dtype=complex)))


def test_sift_energy_identity_is_exact():
    rng = np.random.default_rng(33)
    for _ in range(20):
        f = random_hardy(rng, m=63)
        a = complex(rng.uniform(0, 0.95) * np.exp(2j * np.pi * rng.uniform()))
        g = sift(f, a)
        c = coefficient(f, a)
        assert g.order <= f.order
        # one-step energy split holds to machine precision
        assert abs(f.energy() - abs(c) ** 2 - g.energy()) < 1e-13 * f.energy()


def test_sift_annihilates_its_own_kernel():
    rng = np.random.default_rng(34)
    f, params, _ = kernel_sum(rng, terms=1, r=0.8)
    g = sift(f, params[0])
    assert g.energy() < 1e-20 * f.energy()


def test_decompose_single_kernel():
    rng = np.random.default_rng(35)
    f, params, coeffs = kernel_sum(rng, terms=1, r=0.7)
    d = core_afd_decompose(f, max_terms=5)
    assert len(d.components) == 1
    assert abs(d.params[0] - params[0]) < 1e-6
    assert abs(d.coefficients[0] - coeffs[0]) < 1e-6
    assert residual_at(d, 1) < 1e-10 * f.energy()
    d.validate()


def test_decompose_forced_zeros_is_fourier():
    rng = np.random.default_rng(36)
    f = random_hardy(rng, m=15)
    d = core_afd_decompose(f, forced_params=(0,) * 8, energy_tol=0.0)
    np.testing.assert_allclose(d.coefficients, f.coefficients[:8], atol=1e-12)
    tail = np.cumsum(np.abs(f.coefficients) ** 2)
    np.testing.assert_allclose(
        d.residual_energy, f.energy() - np.concatenate([[0.0], tail[:8]]), atol=1e-12
    )


def test_decompose_energy_identity_and_monotone_trace():
    rng = np.random.default_rng(37)
    for _ in range(3):
        f = random_hardy(rng, m=127)
        d = core_afd_decompose(f, max_terms=6, energy_tol=0.0)
        d.validate()
        assert np.all(np.diff(d.residual_energy) <= 1e-12 * f.energy())
        total = np.sum(np.abs(d.coefficients) ** 2) + d.residual_energy[-1]
        assert total == pytest.approx(f.energy(), rel=1e-10)
        assert d.meta["triple_defect"] < 1e-10


def test_greedy_first_term_beats_fourier_first_term():
    rng = np.random.default_rng(38)
    for _ in range(10):
        f, _, _ = kernel_sum(rng, terms=3, r=0.8)
        greedy = core_afd_decompose(f, max_terms=1, energy_tol=0.0)
        fourier = core_afd_decompose(f, forced_params=(0,), energy_tol=0.0)
        assert residual_at(greedy, 1) <= residual_at(fourier, 1) + 1e-12 * f.energy()


def test_decompose_respects_stopping_rules():
    rng = np.random.default_rng(39)
    f = random_hardy(rng, m=63)
    d = core_afd_decompose(f, max_terms=3, energy_tol=0.0)
    assert len(d.components) == 3
    d2 = core_afd_decompose(f, max_terms=50, energy_tol=0.3)
    assert d2.residual_energy[-1] / f.energy() < 0.3
    assert len(d2.components) < 50


def test_decompose_rejects_zero_signal():
    with pytest.raises(ZeroResidual):
        core_afd_decompose(HardyFunction(np.zeros(8, dtype=complex)))


def test_reconstruct_matches_partial_sums():
    rng = np.random.default_rng(40)
    f = random_hardy(rng, m=63)
    d = core_afd_decompose(f, max_terms=4, energy_tol=0.0)
    n = 512
    rec = reconstruct(d, n)
    err = f.boundary(n).samples - rec.samples
    assert np.mean(np.abs(err) ** 2) == pytest.approx(
        d.residual_energy[-1], rel=1e-8
    )


def test_forced_params_validation():
    rng = np.random.default_rng(41)
    f = random_hardy(rng, m=15)
    params = random_params(rng, 3, r=0.6)
    d = core_afd_decompose(f, forced_params=params, energy_tol=0.0)
    assert tuple(d.params) == params
    d.validate()
