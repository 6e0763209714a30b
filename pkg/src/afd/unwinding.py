"""Numerical inner/outer factorization and the unwinding expansions.

A Hardy function factors as f = I * O with I unimodular on the
boundary (inner) and O zero-free in the disc (outer).  The outer
factor is recovered from boundary data alone:

    O = exp(u + iHu),   u = log|f|,

since the modulus of an outer function determines it up to the
canonical positive value at the origin.  The inner factor is then the
boundary quotient f/O; no zeros or singular measures are ever located.

Unwinding expansions peel inner factors before extracting energy.
UWA is the pure recursion: factor f_k = phi_k * psi_k, take the mean
c_k = psi_k(0), and recurse on psi_k - c_k, which vanishes at 0, so
every later inner factor does too; the terms c_k phi_1...phi_k come
out mutually orthogonal.  UWAFD interleaves one maximal sifting step
on each outer factor instead, giving terms (prod I_l) c_k B_k over a
growing TM chain.
"""

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_SEARCH, DEFAULT_TOL
from .errors import AFDError, DegenerateModulus, ZeroSignal
from .core_afd import coefficient, maximal_selection, sift
from .hardy_atoms import mobius, szego_kernel
from .signal_core import (
    CircularSignal,
    HardyFunction,
    circle_grid,
    hilbert_transform,
    to_hardy,
)

__all__ = [
    "Factorization",
    "UnwindingTerm",
    "UnwindingDecomposition",
    "outer_factor",
    "inner_factor",
    "factorize",
    "uwa_decompose",
    "uwafd_decompose",
    "unwinding_reconstruct",
    "front_loading_defect",
]


@dataclass(frozen=True)
class Factorization:
    """Inner boundary samples and outer coefficients with f = I*O."""

    inner: CircularSignal
    outer: HardyFunction

    def consistency(self, f_boundary: CircularSignal):
        """Relative norm of I*O - f on the boundary."""
        prod = self.inner.samples * self.outer.boundary(self.inner.n).samples
        return float(
            np.sqrt(np.mean(np.abs(prod - f_boundary.samples) ** 2))
            / max(f_boundary.norm(), 1e-300)
        )


@dataclass(frozen=True)
class UnwindingTerm:
    """One unwinding term c * (cumulative inner) * B.

    a is None for pure UWA terms (no kernel parameter involved);
    cumulative_inner holds boundary samples of phi_1 ... phi_k.
    """

    c: complex
    a: complex | None
    cumulative_inner: np.ndarray


@dataclass
class UnwindingDecomposition:
    terms: list
    residual_energy: np.ndarray
    source_energy: float
    kind: str  # "uwa" | "uwafd"
    meta: dict = field(default_factory=dict)

    @property
    def coefficients(self):
        return np.array([t.c for t in self.terms], dtype=complex)

    def __len__(self):
        return len(self.terms)

    def validate(self, tol=None):
        if tol is None:
            tol = DEFAULT_TOL.energy_total
        scale = max(self.source_energy, 1e-300)
        steps = np.diff(self.residual_energy)
        if steps.size and steps.max() > 1e-12 * scale:
            raise AFDError("residual energy trace increased")
        captured = float(np.sum(np.abs(self.coefficients) ** 2))
        defect = abs(self.source_energy - captured - self.residual_energy[-1])
        if defect > tol * scale:
            raise AFDError(f"energy identity defect {defect/scale:.3e}")


def outer_factor(f_boundary: CircularSignal) -> HardyFunction:
    """Outer factor from boundary moduli, normalized with O(0) > 0.

    Clamps |f| below at 1e-8 * max|f| before taking logs; boundary
    zeros have measure zero and do not affect the outer integral in
    exact arithmetic, but the discrete log must not blow up.

    Raises
    ------
    DegenerateModulus
        If the signal is numerically zero, or more than 1% of samples
        sit below the clamp floor (the log integral is then dominated
        by the regularization, not the data).
    """
    mod = np.abs(f_boundary.samples)
    peak = float(mod.max())
    if peak < 1e-10:
        raise DegenerateModulus("signal is numerically zero")
    floor = DEFAULT_TOL.log_clamp * peak
    clamped = np.maximum(mod, floor)
    if np.mean(mod < floor) > 0.01:
        raise DegenerateModulus("modulus below floor on more than 1% of samples")
    u = np.log(clamped)
    hu = hilbert_transform(CircularSignal(u)).samples.real
    boundary = np.exp(u + 1j * hu)
    out, _leak = to_hardy(CircularSignal(boundary))
    return out


def inner_factor(f_boundary: CircularSignal, outer: HardyFunction) -> CircularSignal:
    """Boundary quotient I = f / O; unimodular where the data is honest."""
    o = outer.boundary(f_boundary.n).samples
    small = np.abs(o) < DEFAULT_TOL.near_zero
    if small.any():
        raise DegenerateModulus("outer factor vanishes on the boundary grid")
    return CircularSignal(f_boundary.samples / o)


def factorize(f_boundary: CircularSignal) -> Factorization:
    """Inner/outer split of boundary data; see outer_factor for errors."""
    o = outer_factor(f_boundary)
    return Factorization(inner=inner_factor(f_boundary, o), outer=o)


def front_loading_defect(f: HardyFunction, outer: HardyFunction):
    """Worst tail-energy excess of the outer factor over the signal.

    Minimum-phase energy front loading says every coefficient tail of
    the outer factor is no heavier than the same tail of f:
    sum_{k>=n} |d_k|^2 <= sum_{k>=n} |c_k|^2 for all n >= 1.  Returns
    max_n (outer tail - f tail); at or below rounding scale when the
    property holds.  The n = 0 tails are whole norms and compare
    factorization accuracy rather than front loading, so they are
    skipped.
    """
    c = f.coefficients
    d = outer.truncated(f.order).coefficients
    tail_c = np.cumsum(np.abs(c[::-1]) ** 2)[::-1]
    tail_d = np.cumsum(np.abs(d[::-1]) ** 2)[::-1]
    return float(np.max(tail_d[1:] - tail_c[1:]))


def uwa_decompose(f: HardyFunction, n_terms) -> UnwindingDecomposition:
    """Pure unwinding recursion, n_terms factorization steps.

    Step k: factor f_k = phi_k psi_k, record c_k = psi_k(0) computed
    as the mean of boundary samples, recurse on psi_k - c_k.  The
    partial sums sum c_k phi_1...phi_k are orthogonal because every
    inner factor after the first vanishes at 0, so the residual energy
    equals ||f||^2 - sum |c_k|^2 up to factorization error.

    Stops early with a diagnostic if a residual becomes degenerate
    (numerically zero or massively clamped).
    """
    source = f.energy()
    if source <= 0.0:
        raise ZeroSignal("zero signal")
    # log|f| is not band limited even for polynomial f, so the whole
    # recursion runs on a padded grid; sampling f there is exact.
    n = max(4 * f.boundary().n, 4096)
    f_k = f
    terms = []
    residuals = [source]
    cumulative = np.ones(n, dtype=complex)
    consistency = []
    front_loading = []
    stopped = None
    for _ in range(n_terms):
        boundary = f_k.boundary(n)
        if boundary.norm() ** 2 < DEFAULT_TOL.residual_floor * source:
            break
        try:
            fac = factorize(boundary)
        except DegenerateModulus as exc:
            stopped = str(exc)
            break
        consistency.append(fac.consistency(boundary))
        front_loading.append(front_loading_defect(f_k, fac.outer))
        # outer factor of an order-M polynomial free of boundary zeros
        # is again order M; truncation only sheds alias noise
        psi = fac.outer.truncated(f.order)
        c = complex(np.mean(psi.boundary(n).samples))
        cumulative = cumulative * fac.inner.samples
        terms.append(UnwindingTerm(c=c, a=None, cumulative_inner=cumulative.copy()))
        next_coeffs = psi.coefficients.copy()
        next_coeffs[0] -= c
        f_k = HardyFunction(next_coeffs, f.r_max)
        residuals.append(f_k.energy())
    return UnwindingDecomposition(
        terms=terms,
        residual_energy=np.array(residuals),
        source_energy=source,
        kind="uwa",
        meta={
            "n": n,
            "factor_consistency": consistency,
            "front_loading": front_loading,
            "stopped": stopped,
        },
    )


def uwafd_decompose(
    f: HardyFunction, max_terms=50, energy_tol=1e-6, search=DEFAULT_SEARCH
) -> UnwindingDecomposition:
    """Unwinding interleaved with maximal sifting.

    Step k: factor f_k = I_k O_k, select a_k maximally on O_k, extract
    c_k = <O_k, e_{a_k}>, and recurse on the reduced remainder of O_k.
    The k-th term is (prod_{l<=k} I_l) c_k B_k with B_k the TM chain
    over a_1..a_k; the residual norm equals the remainder norm because
    all the accumulated factors are unimodular.
    """
    source = f.energy()
    if source <= 0.0:
        raise ZeroSignal("zero signal")
    n = max(4 * f.boundary().n, 4096)  # see uwa_decompose
    f_k = f
    terms = []
    residuals = [source]
    cumulative = np.ones(n, dtype=complex)
    consistency = []
    front_loading = []
    stopped = None
    for _ in range(max_terms):
        resid = f_k.energy()
        if resid / source < max(energy_tol, DEFAULT_TOL.residual_floor):
            break
        boundary = f_k.boundary(n)
        try:
            fac = factorize(boundary)
        except DegenerateModulus as exc:
            stopped = str(exc)
            break
        consistency.append(fac.consistency(boundary))
        front_loading.append(front_loading_defect(f_k, fac.outer))
        o_k = fac.outer.truncated(f.order)
        a = maximal_selection(o_k, search)
        c = coefficient(o_k, a)
        cumulative = cumulative * fac.inner.samples
        terms.append(UnwindingTerm(c=c, a=a, cumulative_inner=cumulative.copy()))
        f_k = sift(o_k, a)
        residuals.append(f_k.energy())
    return UnwindingDecomposition(
        terms=terms,
        residual_energy=np.array(residuals),
        source_energy=source,
        kind="uwafd",
        meta={
            "n": n,
            "factor_consistency": consistency,
            "front_loading": front_loading,
            "stopped": stopped,
        },
    )


def unwinding_reconstruct(u: UnwindingDecomposition, n=None) -> CircularSignal:
    """Boundary samples of the unwinding partial sum.

    UWA terms are c_k * cumulative inner; UWAFD terms additionally
    carry the TM factor built from the selected parameters.
    """
    if n is None:
        n = u.meta["n"]
    if n != u.meta["n"]:
        raise AFDError("inner factors are stored on the decomposition grid")
    z = np.exp(1j * circle_grid(n))
    out = np.zeros(n, dtype=complex)
    prefix = np.ones(n, dtype=complex)  # Mobius chain over selected params
    for term in u.terms:
        if term.a is None:
            out = out + term.c * term.cumulative_inner
        else:
            b = szego_kernel(term.a, z) * prefix
            out = out + term.c * term.cumulative_inner * b
            prefix = prefix * mobius(term.a, z)
    return CircularSignal(out)
