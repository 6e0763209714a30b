"""Sampled signals on the unit circle and their basic transforms.

A signal lives on the uniform grid t_j = 2*pi*j/N.  Discrete Fourier
analysis uses the 1/N convention, so the coefficient array of a signal
matches the integral coefficients c_k = (1/2pi) int s(t) e^{-ikt} dt
and the squared circle norm is the plain mean of |s|^2.

The circular Hilbert transform is the Fourier multiplier -i*sgn(k) with
sgn(0) = 0.  That convention makes the transform blind to means, which
shows up in two places: the Hardy-space test compares against the
mean-removed signal, and the Bedrosian residual is computed modulo the
mean of rho*sin(theta).
"""

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOL
from .errors import (
    InputError,
    NearZeroModulus,
    NonRealInput,
    PhaseUnresolved,
)

__all__ = [
    "CircularSignal",
    "Spectrum",
    "HardyFunction",
    "circle_grid",
    "analyze",
    "synthesize",
    "hilbert_transform",
    "analytic_signal",
    "to_hardy",
    "hardy_check",
    "phase_amplitude",
    "phase_derivative",
    "bedrosian_check",
]


def circle_grid(n):
    """Uniform angles t_j = 2*pi*j/n, j = 0..n-1."""
    return 2.0 * np.pi * np.arange(n) / n


def _check_pow2(n):
    if n < 8 or (n & (n - 1)) != 0:
        raise InputError(f"sample count must be a power of two >= 8, got {n}")


@dataclass(frozen=True)
class CircularSignal:
    """Complex samples on the uniform circular grid.

    Parameters
    ----------
    samples : array_like
        Values s(t_j) at t_j = 2*pi*j/N.  N must be a power of two,
        at least 8.  Stored as complex128.
    """

    samples: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=complex)
        _check_pow2(arr.size)
        object.__setattr__(self, "samples", arr)

    @property
    def n(self):
        return self.samples.size

    @property
    def t(self):
        return circle_grid(self.n)

    def energy(self):
        """Squared circle norm, (1/N) sum |s_j|^2."""
        return float(np.mean(np.abs(self.samples) ** 2))

    def norm(self):
        return float(np.sqrt(self.energy()))

    def mean(self):
        """The coefficient c_0."""
        return complex(np.mean(self.samples))

    def is_real(self, tol=1e-12):
        scale = max(np.max(np.abs(self.samples)), 1.0)
        return float(np.max(np.abs(self.samples.imag))) <= tol * scale

    def __sub__(self, other):
        return CircularSignal(self.samples - other.samples)

    def __add__(self, other):
        return CircularSignal(self.samples + other.samples)


@dataclass(frozen=True)
class Spectrum:
    """Discrete Fourier coefficients c_k for k = -N/2 .. N/2-1.

    ``coefficients`` is stored in increasing-k order; ``k`` gives the
    matching index array.
    """

    coefficients: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coefficients, dtype=complex)
        _check_pow2(arr.size)
        object.__setattr__(self, "coefficients", arr)

    @property
    def n(self):
        return self.coefficients.size

    @property
    def k(self):
        return np.arange(-self.n // 2, self.n // 2)

    def coefficient(self, k):
        """Single c_k, with k in [-N/2, N/2)."""
        n = self.n
        if not -n // 2 <= k < n // 2:
            raise InputError(f"index {k} outside [-{n//2}, {n//2})")
        return complex(self.coefficients[k + n // 2])

    def energy(self):
        return float(np.sum(np.abs(self.coefficients) ** 2))


class HardyFunction:
    """Truncated power series sum_{k=0}^{M} c_k z^k on the unit disc.

    Represents a Hardy-space function by its Taylor coefficients; all
    negative-frequency content is zero by construction.  Interior
    values come from Horner evaluation, stable for |z| <= r_max.
    Boundary values come from FFT synthesis on a power-of-two grid.

    Parameters
    ----------
    coefficients : array_like
        Taylor coefficients c_0 .. c_M.
    r_max : float, optional
        Interior evaluation radius bound.
    """

    __slots__ = ("coefficients", "r_max")

    def __init__(self, coefficients, r_max=1.0 - 1e-6):
        self.coefficients = np.atleast_1d(np.asarray(coefficients, dtype=complex))
        self.r_max = float(r_max)

    @property
    def order(self):
        """Truncation order M."""
        return self.coefficients.size - 1

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z) > self.r_max * (1 + 1e-12)):
            raise InputError(
                f"interior evaluation limited to |z| <= {self.r_max}; "
                "use boundary() for circle samples"
            )
        # Horner on the reversed coefficient array.
        out = np.zeros_like(z)
        for c in self.coefficients[::-1]:
            out = out * z + c
        return out if out.ndim else complex(out)

    def derivative(self):
        """Coefficientwise derivative series."""
        c = self.coefficients
        if c.size == 1:
            return HardyFunction(np.zeros(1), self.r_max)
        k = np.arange(1, c.size)
        return HardyFunction(k * c[1:], self.r_max)

    def boundary(self, n=None):
        """Synthesize boundary samples on an n-point circular grid.

        n defaults to the smallest power of two >= 2*(M+1) and must be
        at least M+1 so no coefficient is discarded.
        """
        m1 = self.coefficients.size
        if n is None:
            n = 1 << max(3, int(np.ceil(np.log2(2 * m1))))
        _check_pow2(n)
        if n < m1:
            raise InputError(f"grid {n} cannot carry {m1} coefficients")
        padded = np.zeros(n, dtype=complex)
        padded[:m1] = self.coefficients
        return CircularSignal(np.fft.ifft(padded) * n)

    def circle(self, r, n=None):
        """Samples of f(r e^{it}) on an n-point grid, r <= r_max."""
        if r > self.r_max * (1 + 1e-12):
            raise InputError(f"radius {r} exceeds r_max {self.r_max}")
        damped = self.coefficients * (r ** np.arange(self.coefficients.size))
        return HardyFunction(damped, self.r_max).boundary(n).samples

    def energy(self):
        return float(np.sum(np.abs(self.coefficients) ** 2))

    def norm(self):
        return float(np.sqrt(self.energy()))

    def truncated(self, m):
        """Copy with exactly m+1 coefficients (pad or cut)."""
        c = np.zeros(m + 1, dtype=complex)
        take = min(m + 1, self.coefficients.size)
        c[:take] = self.coefficients[:take]
        return HardyFunction(c, self.r_max)

    def _aligned(self, other):
        m = max(self.coefficients.size, other.coefficients.size)
        a = np.zeros(m, dtype=complex)
        b = np.zeros(m, dtype=complex)
        a[: self.coefficients.size] = self.coefficients
        b[: other.coefficients.size] = other.coefficients
        return a, b

    def __add__(self, other):
        a, b = self._aligned(other)
        return HardyFunction(a + b, min(self.r_max, other.r_max))

    def __sub__(self, other):
        a, b = self._aligned(other)
        return HardyFunction(a - b, min(self.r_max, other.r_max))

    def __mul__(self, scalar):
        return HardyFunction(self.coefficients * scalar, self.r_max)

    __rmul__ = __mul__

    def __repr__(self):
        return f"HardyFunction(order={self.order})"


def analyze(s: CircularSignal) -> Spectrum:
    """Discrete Fourier coefficients, c_k = (1/N) sum_j s_j e^{-ik t_j}.

    Returned in increasing-k order, k = -N/2 .. N/2-1.
    """
    c = np.fft.fft(s.samples) / s.n
    return Spectrum(np.fft.fftshift(c))


def synthesize(spec: Spectrum) -> CircularSignal:
    """Inverse of analyze: s_j = sum_k c_k e^{ik t_j}."""
    c = np.fft.ifftshift(spec.coefficients)
    return CircularSignal(np.fft.ifft(c) * spec.n)


def hilbert_transform(s: CircularSignal) -> CircularSignal:
    """Circular Hilbert transform, the Fourier multiplier -i*sgn(k).

    sgn(0) = 0, so constants map to zero and H*H = -(id - mean).
    For a real signal without Nyquist content the output is real up to
    rounding.
    """
    c = np.fft.fft(s.samples)
    k = np.fft.fftfreq(s.n, d=1.0 / s.n)
    c *= -1j * np.sign(k)
    return CircularSignal(np.fft.ifft(c))


def analytic_signal(s: CircularSignal, tol=1e-12) -> HardyFunction:
    """Hardy projection s+ = (s + iHs + c_0)/2 of a real signal.

    On coefficients: keeps c_0 and c_k for k >= 1, zeroes the rest
    (including the unpaired Nyquist bin, which the formula cancels).
    For s = cos(nt) this gives e^{int}/2; the identity
    s = 2 Re(s+) - c_0 then recovers the signal whenever s has no
    Nyquist-bin content.

    Raises
    ------
    NonRealInput
        If imaginary parts exceed tol relative to the signal scale.
    """
    if not s.is_real(tol):
        raise NonRealInput("analytic_signal expects a real-valued signal")
    c = np.fft.fft(s.samples.real) / s.n
    coeffs = c[: s.n // 2].copy()
    return HardyFunction(coeffs)


def to_hardy(s: CircularSignal, m=None):
    """Project boundary samples onto nonnegative frequencies.

    Returns (HardyFunction, leak) where leak is the norm of the
    discarded negative-frequency part.  For samples of an actual Hardy
    function the leak is rounding noise; a sizable leak means the
    samples were not Hardy to begin with.
    """
    c = np.fft.fft(s.samples) / s.n
    half = s.n // 2
    pos = c[:half]
    neg = c[half:]
    leak = float(np.sqrt(np.sum(np.abs(neg) ** 2)))
    if m is not None:
        return HardyFunction(pos).truncated(m), leak
    return HardyFunction(pos), leak


def hardy_check(s: CircularSignal, tol=None) -> bool:
    """Test the Hilbert characterization of Hardy boundary values.

    True iff ||Hs - (-i)(s - mean(s))|| / ||s|| < tol.  The mean is
    removed because sgn(0) = 0 makes H blind to constants: boundary
    values of a Hardy function satisfy Hs = -is only modulo the mean.
    A numerically zero signal passes vacuously.
    """
    if tol is None:
        tol = DEFAULT_TOL.hardy
    nrm = s.norm()
    if nrm < DEFAULT_TOL.near_zero:
        return True
    h = hilbert_transform(s).samples
    target = -1j * (s.samples - s.mean())
    defect = np.sqrt(np.mean(np.abs(h - target) ** 2))
    return bool(defect / nrm < tol)


def phase_amplitude(f: HardyFunction, r, n=None):
    """Polar form of f on the circle of radius r.

    Returns (rho, theta): moduli and the unwrapped continuous phase
    with theta[0] in (-pi, pi].

    Raises
    ------
    NearZeroModulus
        If min |f| <= 1e-12 on the circle (phase undefined).
    PhaseUnresolved
        If the phase moves by >= pi between adjacent samples, so the
        unwrapping is not trustworthy.
    """
    values = f.circle(r, n)
    rho = np.abs(values)
    if rho.min() <= DEFAULT_TOL.near_zero:
        raise NearZeroModulus(f"f vanishes on the circle r={r}")
    theta = np.unwrap(np.angle(values))
    if np.max(np.abs(np.diff(theta))) >= np.pi * (1 - 1e-9):
        raise PhaseUnresolved("phase step of size >= pi; refine the grid")
    return rho, theta


def phase_derivative(f: HardyFunction, r, n=None):
    """Instantaneous frequency Re{ r e^{it} f'(r e^{it}) / f(r e^{it}) }.

    Uses the coefficientwise derivative series; no phase unwrapping is
    involved.  Requires f nonvanishing on the circle of radius r.
    """
    values = f.circle(r, n)
    if np.min(np.abs(values)) <= DEFAULT_TOL.near_zero:
        raise NearZeroModulus(f"f vanishes on the circle r={r}")
    dvalues = f.derivative().circle(r, n)
    if n is None:
        n = values.size
    z = r * np.exp(1j * circle_grid(n))
    return np.real(z * dvalues / values)


def bedrosian_check(rho, theta):
    """Residual of the Bedrosian identity for an amplitude-phase pair.

    Computes ||H(rho cos theta) - (rho sin theta - mean)|| / ||rho||
    on the common grid.  The mean of rho*sin(theta) is removed before
    comparing: it is the imaginary part of the analytic mean, which
    the mean-blind discrete H cannot reproduce.  A residual at
    rounding level certifies that rho * e^{i theta} extends to a Hardy
    function, the working form of the Bedrosian condition.
    """
    rho = np.asarray(rho, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if rho.shape != theta.shape:
        raise InputError("rho and theta grids differ")
    s = CircularSignal(rho * np.cos(theta))
    h = hilbert_transform(s).samples
    target = rho * np.sin(theta)
    target = target - np.mean(target)
    resid = np.sqrt(np.mean(np.abs(h - target) ** 2))
    rho_norm = np.sqrt(np.mean(rho**2))
    if rho_norm < DEFAULT_TOL.near_zero:
        raise InputError("rho is numerically zero")
    return float(resid / rho_norm)
