"""Pre-orthogonalized greedy selection in reproducing-kernel spaces."""

import numpy as np
import pytest

from afd import (
    HardyFunction,
    bergman_space,
    core_afd_decompose,
    gram_schmidt,
    kernel,
    maximal_selection,
    multiplicity_limit_check,
    poafd_decompose,
    poafd_select,
    reconstruct,
    tm_system_boundary,
)
from afd.errors import DegenerateGram, InputError, ZeroResidual
from afd import hardy_space

from conftest import kernel_sum, random_hardy, random_params


def _spaces():
    return hardy_space(m=63), bergman_space(m=63)


def test_reproducing_property():
    rng = np.random.default_rng(71)
    f = random_hardy(rng, m=40).coefficients
    f = np.pad(f, (0, 23))
    for space in _spaces():
        for a in (0.0, 0.35, -0.2 + 0.5j):
            k = kernel(space, a, 1)
            lhs = space.inner(f, k.sequence)
            rhs = np.polyval(f[::-1], a)
            assert lhs == pytest.approx(rhs, abs=1e-10)


def test_kernel_norms_closed_form():
    hardy, bergman = _spaces()
    for a in (0.0, 0.4, 0.6j):
        r2 = abs(a) ** 2
        assert hardy.norm(kernel(hardy, a, 1).sequence) ** 2 == pytest.approx(
            1.0 / (1.0 - r2), rel=1e-10
        )
        assert bergman.norm(kernel(bergman, a, 1).sequence) ** 2 == pytest.approx(
            1.0 / (1.0 - r2) ** 2, rel=1e-10
        )


def test_kernel_guards():
    hardy, _ = _spaces()
    with pytest.raises(InputError):
        kernel(hardy, 0.96, 1)  # beyond the selection cap
    with pytest.raises(InputError):
        kernel(hardy, 0.3, 0)


def test_derivative_kernel_reproduces_derivatives():
    rng = np.random.default_rng(72)
    f = np.pad(random_hardy(rng, m=20).coefficients, (0, 43))
    fh = HardyFunction(f)
    for space in _spaces():
        for a in (0.3, -0.1 + 0.4j):
            k2 = kernel(space, a, 2)
            assert space.inner(f, k2.sequence) == pytest.approx(
                np.polyval(fh.derivative().coefficients[::-1], a), abs=1e-8
            )
    # hand value: d/dz z^2 at 0.3
    hardy, _ = _spaces()
    zsq = np.zeros(64, dtype=complex)
    zsq[2] = 1.0
    assert hardy.inner(zsq, kernel(hardy, 0.3, 2).sequence) == pytest.approx(0.6)


def test_gram_schmidt_matches_tm_system_in_hardy_space():
    params = (0.4 + 0.1j, -0.3, 0.2 - 0.5j)
    space = hardy_space(m=255)
    system = gram_schmidt(space, params)
    n = 2048
    rows = tm_system_boundary(params, n)
    ref = (np.fft.fft(rows, axis=1) / n)[:, :256]
    np.testing.assert_allclose(system.vectors, ref, atol=1e-8)


def test_gram_schmidt_orthonormal_with_repeats():
    for space in _spaces():
        for params in ((0.5, 0.5, -0.2j), (0.3, 0.3, 0.3)):
            system = gram_schmidt(space, params)
            assert system.gram_defect(space) < 1e-9


def test_gram_schmidt_degenerate_pair():
    hardy, _ = _spaces()
    # separated by more than the coincidence width but numerically parallel
    with pytest.raises(DegenerateGram):
        gram_schmidt(hardy, (0.4, 0.4 + 1.5e-9))


def test_select_finds_kernel_parameter():
    for space in _spaces():
        b = 0.4 - 0.2j
        f = kernel(space, b, 1).sequence
        system = gram_schmidt(space, ())
        a = poafd_select(space, f, system)
        assert abs(a - b) < 1e-5


def test_select_agrees_with_core_in_hardy_space():
    rng = np.random.default_rng(73)
    f, _, _ = kernel_sum(rng, terms=3, m=63, r=0.7)
    space = hardy_space(m=63)
    a_poafd = poafd_select(space, f.coefficients, gram_schmidt(space, ()))
    a_core = maximal_selection(f)
    assert abs(a_poafd - a_core) < 1e-5


def test_select_dominates_random_probes():
    rng = np.random.default_rng(74)
    for space in _spaces():
        f, _, _ = kernel_sum(rng, terms=2, m=63, r=0.6)
        d_best = poafd_decompose(space, f, max_terms=1, energy_tol=0.0)
        best = d_best.residual_energy[-1]
        for _ in range(25):
            probe = random_params(rng, 1, r=0.9)
            d = poafd_decompose(
                space, f, max_terms=1, energy_tol=0.0, forced_params=probe
            )
            assert best <= d.residual_energy[-1] + 1e-10 * f.energy()


def test_multiplicity_limit_ratios():
    hardy, bergman = _spaces()
    h_seq = 2.0 ** -np.arange(4, 11)
    for space, params, a_n in (
        (hardy, (0.4,), 0.4),
        (bergman, (0.3, 0.3), 0.3),
    ):
        errors = multiplicity_limit_check(space, params, a_n, h_seq)
        ratios = errors[1:] / errors[:-1]
        # once h is small the probe vector converges linearly in h
        assert np.all(ratios[h_seq[:-1] < 1e-2] <= 0.6)
        assert errors[-1] < 1e-2


def test_poafd_decompose_bergman_kernel_signal():
    space = bergman_space(m=63)
    k = np.arange(64)
    f = (k + 1.0) * 0.7**k  # coefficients of 1/(1 - 0.7 z)^2
    d = poafd_decompose(space, f, max_terms=3)
    assert len(d.components) == 1
    assert abs(d.params[0] - 0.7) < 1e-6
    assert d.residual_energy[-1] < 1e-10 * d.source_energy
    assert d.meta["space"] == "bergman"
    d.validate()
    with pytest.raises(InputError):
        reconstruct(d, 256)


def test_poafd_matches_core_coefficients_on_shared_params():
    rng = np.random.default_rng(75)
    f, _, _ = kernel_sum(rng, terms=3, m=63, r=0.7)
    params = random_params(rng, 3, r=0.6)
    space = hardy_space(m=63)
    dp = poafd_decompose(space, f.coefficients, forced_params=params, energy_tol=0.0)
    dc = core_afd_decompose(f, forced_params=params, energy_tol=0.0)
    np.testing.assert_allclose(dp.coefficients, dc.coefficients, atol=1e-10)
    np.testing.assert_allclose(dp.residual_energy, dc.residual_energy, atol=1e-10)


def test_poafd_energy_identity():
    rng = np.random.default_rng(76)
    for space in _spaces():
        f = random_hardy(rng, m=63)
        d = poafd_decompose(space, f.coefficients, max_terms=4, energy_tol=0.0)
        d.validate()
        assert np.all(np.diff(d.residual_energy) <= 1e-10 * d.source_energy)
        total = np.sum(np.abs(d.coefficients) ** 2) + d.residual_energy[-1]
        assert total == pytest.approx(d.source_energy, rel=1e-8)


def test_poafd_rejects_zero():
    space = hardy_space(m=15)
    with pytest.raises(ZeroResidual):
        poafd_decompose(space, np.zeros(8, dtype=complex))
