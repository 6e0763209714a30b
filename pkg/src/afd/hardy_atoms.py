"""Szego kernels, Mobius factors, and Takenaka-Malmquist systems.

The TM system generated by parameters a_1, a_2, ... inside the disc is

    B_k(z) = sqrt(1 - |a_k|^2)/(1 - conj(a_k) z) * prod_{l<k} (z - a_l)/(1 - conj(a_l) z),

orthonormal in H^2 even when parameters repeat.  With all parameters
zero it degenerates to the monomials z^{k-1}, so everything built on
it contains ordinary Fourier series as the special case.

Boundary evaluation always uses the closed-form product; quadrature
never enters these formulas.
"""

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL
from .errors import InputError, ParamOutOfDisc
from .signal_core import (
    CircularSignal,
    analytic_signal,
    circle_grid,
    phase_derivative,
    to_hardy,
)

__all__ = [
    "validate_param",
    "multiplicities",
    "szego_kernel",
    "mobius",
    "tm_eval",
    "tm_system_boundary",
    "blaschke_phase_derivative",
    "MonocompReport",
    "monocomp_check",
]


def validate_param(a, tol=None):
    """Require a strictly inside the disc; returns a as complex.

    Raises ParamOutOfDisc when |a| > 1 - tol (default 1e-9 margin).
    """
    if tol is None:
        tol = DEFAULT_TOL.param_boundary
    a = complex(a)
    if abs(a) > 1.0 - tol:
        raise ParamOutOfDisc(f"|a| = {abs(a):.12f} too close to the circle")
    return a


def multiplicities(params, tol=None):
    """Occurrence count of each parameter among its predecessors and itself.

    Parameters closer than tol are treated as coincident.  Returns an
    integer array l with l[n] = #{ m <= n : |a_m - a_n| <= tol }.
    """
    if tol is None:
        tol = DEFAULT_TOL.coincidence
    params = [complex(a) for a in params]
    out = np.empty(len(params), dtype=int)
    for n, a in enumerate(params):
        out[n] = sum(1 for b in params[: n + 1] if abs(b - a) <= tol)
    return out


def szego_kernel(a, z):
    """Normalized Szego kernel e_a(z) = sqrt(1-|a|^2)/(1 - conj(a) z)."""
    a = validate_param(a)
    z = np.asarray(z, dtype=complex)
    val = np.sqrt(1.0 - abs(a) ** 2) / (1.0 - np.conj(a) * z)
    return val if val.ndim else complex(val)


def mobius(a, z):
    """Disc automorphism (z - a)/(1 - conj(a) z); unimodular for |z| = 1."""
    a = validate_param(a)
    z = np.asarray(z, dtype=complex)
    val = (z - a) / (1.0 - np.conj(a) * z)
    return val if val.ndim else complex(val)


def tm_eval(params, k, z):
    """Value of the k-th TM function (1-based) at z.

    B_k is the Szego factor of a_k times the Mobius factors of the
    preceding parameters.
    """
    if not 1 <= k <= len(params):
        raise InputError(f"k = {k} outside 1..{len(params)}")
    val = szego_kernel(params[k - 1], z)
    for a in params[: k - 1]:
        val = val * mobius(a, z)
    return val


def tm_system_boundary(params, n):
    """Boundary samples of B_1..B_len(params) on the n-point grid.

    Returns an array of shape (len(params), n).  Computed by one sweep
    that reuses the accumulated Blaschke prefix.
    """
    z = np.exp(1j * circle_grid(n))
    out = np.empty((len(params), n), dtype=complex)
    prefix = np.ones(n, dtype=complex)
    for i, a in enumerate(params):
        out[i] = szego_kernel(a, z) * prefix
        prefix = prefix * mobius(a, z)
    return out


def blaschke_phase_derivative(params, t):
    """Boundary phase derivative of the Blaschke product with the given zeros.

    Each Mobius factor contributes the Poisson kernel of its parameter,

        P_a(t) = (1 - |a|^2) / |e^{it} - a|^2,

    so the result is sum_k P_{a_k}(t): pointwise positive, with mean 1
    per factor.
    """
    if len(params) == 0:
        raise InputError("empty parameter list")
    t = np.asarray(t, dtype=float)
    z = np.exp(1j * t)
    out = np.zeros_like(t)
    for a in params:
        a = validate_param(a)
        out += (1.0 - abs(a) ** 2) / np.abs(z - a) ** 2
    return out


@dataclass(frozen=True)
class MonocompReport:
    """Phase-derivative screening of a real signal across radii.

    min_phase_derivative and fraction_negative refer to the largest
    radius probed; min_per_radius records the whole sweep so the
    approach to the boundary can be inspected.
    """

    radii: np.ndarray
    min_per_radius: np.ndarray
    min_phase_derivative: float
    fraction_negative: float

    @property
    def passed(self):
        return self.fraction_negative == 0.0


def monocomp_check(s: CircularSignal, r_seq=None) -> MonocompReport:
    """Probe whether s behaves like a mono-component.

    Evaluates the phase derivative of the analytic signal of s on
    circles approaching the boundary (default radii 1 - 2^{-m},
    m = 4..12) and reports the minimum on the outermost circle plus
    the fraction of samples below -1e-6 there.  A mono-component has
    fraction zero; an outer-type signal shows genuinely negative
    values whose integral cancels.  Complex samples (a Blaschke
    product on the boundary, say) are projected onto their Hardy part
    instead of going through the analytic-signal map.
    """
    if r_seq is None:
        r_seq = 1.0 - 2.0 ** (-np.arange(4, 13))
    r_seq = np.sort(np.asarray(r_seq, dtype=float))
    if s.is_real():
        f = analytic_signal(s)
    else:
        f, _ = to_hardy(s)
    mins = np.empty(r_seq.size)
    for i, r in enumerate(r_seq):
        mins[i] = float(np.min(phase_derivative(f, r, s.n)))
    outer = phase_derivative(f, r_seq[-1], s.n)
    frac = float(np.mean(outer < -1e-6))
    return MonocompReport(
        radii=r_seq,
        min_per_radius=mins,
        min_phase_derivative=float(outer.min()),
        fraction_negative=frac,
    )
