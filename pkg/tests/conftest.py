"""Shared generators for the test suite.

Everything random is seeded through numpy Generators so reruns are
bit-identical.  Signals come in three shapes: real band-limited
boundary samples, Hardy functions with decaying random coefficients,
and planted sums of Szego kernels or TM-system terms whose exact
decomposition is known in advance.
"""

import numpy as np
import pytest

from afd import (
    CircularSignal,
    HardyFunction,
    circle_grid,
    tm_system_boundary,
    to_hardy,
)
from afd.config import SearchConfig


def residual_at(d, n):
    """Residual energy of d after n terms (trace saturates at its end)."""
    trace = d.residual_energy
    return float(trace[min(n, len(trace) - 1)])


def band_limited_real(rng, n=1024, kmax=None):
    """Random real signal with spectrum confined strictly below Nyquist."""
    if kmax is None:
        kmax = n // 4
    t = circle_grid(n)
    s = np.zeros(n)
    for k in range(1, kmax + 1):
        amp = rng.standard_normal() / k
        phase = rng.uniform(0.0, 2.0 * np.pi)
        s += amp * np.cos(k * t + phase)
    s += rng.standard_normal()
    return CircularSignal(s)


def random_hardy(rng, m=255, decay=1.5):
    """Hardy function with random coefficients decaying like k^-decay."""
    k = np.arange(1, m + 2, dtype=float)
    c = (rng.standard_normal(m + 1) + 1j * rng.standard_normal(m + 1)) / k**decay
    return HardyFunction(c)


def random_params(rng, length, r=0.8, repeat_frac=0.0):
    """Tuple of disc parameters; repeat_frac of the lists get one repeat."""
    a = rng.uniform(0.05, r, size=length) * np.exp(
        2j * np.pi * rng.uniform(size=length)
    )
    a = list(a)
    if length > 1 and rng.uniform() < repeat_frac:
        a[rng.integers(1, length)] = a[0]
    return tuple(complex(v) for v in a)


def kernel_sum(rng, terms=3, m=255, r=0.8):
    """f = sum_j c_j e_{b_j} as a coefficient array; returns (f, params, coeffs).

    e_b has coefficients sqrt(1-|b|^2) conj(b)^k, so with |b| <= r the
    truncation at order m carries r^(2m+2) energy, far below test tolerances.
    """
    k = np.arange(m + 1)
    c = np.zeros(m + 1, dtype=complex)
    params = random_params(rng, terms, r=r)
    coeffs = rng.standard_normal(terms) + 1j * rng.standard_normal(terms)
    for b, w in zip(params, coeffs):
        c += w * np.sqrt(1.0 - abs(b) ** 2) * np.conj(b) ** k
    return HardyFunction(c), params, coeffs


def planted_tm(params, coeffs, m=511, n=4096):
    """f = sum_k c_k B_k for the TM system of params, truncated at order m."""
    rows = tm_system_boundary(params, n)
    s = np.zeros(n, dtype=complex)
    for w, row in zip(coeffs, rows):
        s = s + w * row
    f, _leak = to_hardy(CircularSignal(s), m=m)
    return f


@pytest.fixture
def coarse_search():
    """Cheap grid for tests that only need qualitative selections."""
    return SearchConfig(n_angles=24, n_radii=12, refine=True, refine_maxiter=60)
