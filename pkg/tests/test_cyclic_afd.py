"""Cyclic coordinate search for the best n-Blaschke approximation."""

import numpy as np
import pytest

from afd import (
    HardyFunction,
    cmp_check,
    coordinate_optimize,
    core_afd_decompose,
    cyclic_afd,
    cyclic_decomposition,
    cyclic_restarts,
    n_blaschke_objective,
)
from afd.config import SearchConfig
from afd.errors import InputError, ZeroSignal

from conftest import kernel_sum, planted_tm, random_params, residual_at

PLANTED = (0.5, -0.3 + 0.2j)
PLANTED_C = (1.0, 0.8 - 0.3j)


def _planted():
    return planted_tm(PLANTED, PLANTED_C)


def test_objective_vanishes_on_planted_form():
    f = _planted()
    assert n_blaschke_objective(f, PLANTED) < 1e-20 * f.energy()
    assert n_blaschke_objective(f, (0.5, 0.6j)) > 1e-3 * f.energy()


def test_objective_closed_form_single_param():
    # for f = z the reduced remainder energy is 1 - (1-|a|^2)|a|^2
    f = HardyFunction(np.array([0.0, 1.0], dtype=complex))
    for a in (0.0, 0.3, 0.5 + 0.4j):
        expect = 1.0 - (1.0 - abs(a) ** 2) * abs(a) ** 2
        assert n_blaschke_objective(f, (a,)) == pytest.approx(expect, abs=1e-14)


def test_objective_permutation_invariance():
    rng = np.random.default_rng(61)
    for _ in range(5):
        f, _, _ = kernel_sum(rng, terms=3, r=0.8)
        params = random_params(rng, 3, r=0.85)
        perm = tuple(np.array(params)[rng.permutation(3)])
        base = n_blaschke_objective(f, params)
        other = n_blaschke_objective(f, perm)
        assert abs(base - other) < 1e-10 * f.energy()


def test_coordinate_optimize_repairs_wrong_entry():
    f = _planted()
    fixed = coordinate_optimize(f, (0.5, 0.6j), 2)
    assert abs(fixed[0] - 0.5) < 1e-12  # untouched coordinate
    assert abs(fixed[1] - PLANTED[1]) < 1e-3
    assert n_blaschke_objective(f, fixed) < 1e-6 * f.energy()


def test_coordinate_optimize_index_is_one_based():
    f = _planted()
    with pytest.raises(InputError):
        coordinate_optimize(f, PLANTED, 0)
    with pytest.raises(InputError):
        coordinate_optimize(f, PLANTED, 3)


def test_coordinate_steps_never_increase_objective(coarse_search):
    rng = np.random.default_rng(62)
    for _ in range(3):
        f, _, _ = kernel_sum(rng, terms=3, r=0.8)
        params = random_params(rng, 2, r=0.85)
        current = n_blaschke_objective(f, params)
        for step in range(6):
            index = 1 + step % 2
            params = coordinate_optimize(f, params, index, coarse_search)
            new = n_blaschke_objective(f, params)
            assert new <= current + 1e-12 * f.energy()
            current = new


def test_cyclic_recovers_planted_parameters():
    f = _planted()
    tr = cyclic_afd(f, 2)
    assert tr.converged
    assert tr.objective < 1e-6 * f.energy()
    got = sorted(tr.params, key=lambda a: a.real)
    want = sorted(PLANTED, key=lambda a: a.real)
    for g, w in zip(got, want):
        assert abs(g - w) < 1e-3
    # the stored objective trace never moves up
    assert np.all(np.diff(tr.d) <= 0.0)
    assert tr.d[0] >= tr.objective


def test_cyclic_accepts_explicit_init():
    f = _planted()
    tr = cyclic_afd(f, 2, init=PLANTED, max_cycles=5)
    assert tr.converged
    assert tr.cycles <= 2
    assert tr.objective < 1e-10 * f.energy()
    with pytest.raises(InputError):
        cyclic_afd(f, 2, init=(0.5,))


def test_cyclic_rejects_zero_signal():
    with pytest.raises(ZeroSignal):
        cyclic_afd(HardyFunction(np.zeros(4, dtype=complex)), 1)


def test_cyclic_beats_greedy_on_planted_form():
    # greedy pays for its first myopic pick; the cyclic search does not
    f = _planted()
    greedy = core_afd_decompose(f, max_terms=2, energy_tol=0.0)
    tr = cyclic_afd(f, 2)
    assert tr.objective <= residual_at(greedy, 2) + 1e-9
    assert residual_at(greedy, 2) > 1e-3 * f.energy()


def test_cyclic_restarts_sorted(coarse_search):
    rng = np.random.default_rng(63)
    f = _planted()
    inits = [random_params(rng, 2, r=0.8) for _ in range(3)]
    traces = cyclic_restarts(f, 2, inits, max_cycles=10, search=coarse_search)
    objectives = [tr.objective for tr in traces]
    assert objectives == sorted(objectives)


def test_cmp_check_accepts_optimum_rejects_random():
    f = _planted()
    assert cmp_check(f, PLANTED)
    assert not cmp_check(f, (0.9j, -0.9j))


def test_cyclic_decomposition_matches_objective():
    f = _planted()
    d = cyclic_decomposition(f, PLANTED)
    assert [comp.kind for comp in d.components] == ["cyclic", "cyclic"]
    assert d.residual_energy[-1] == pytest.approx(
        n_blaschke_objective(f, PLANTED), abs=1e-12 * f.energy()
    )
    d.validate()
