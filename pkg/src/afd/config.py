"""Central numerical tolerances and search-grid configuration.

Every tolerance used by more than one function lives here, so tests and
the command line tool agree on what "close enough" means.  Individual
operations take an override where a caller may legitimately want one.
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Tolerances:
    """Package-wide numerical thresholds.

    Attributes
    ----------
    grid_uniform : float
        Max deviation of sample times from 2*pi*j/N before the grid is
        rejected as non-uniform.
    parseval : float
        Relative slack for energy bookkeeping of a single transform.
    hardy : float
        Default relative threshold for the Hardy-space boundary test.
    near_zero : float
        Modulus floor below which a phase is considered undefined.
    param_boundary : float
        Pole parameters must satisfy abs(a) <= 1 - param_boundary.
    energy_step : float
        Relative slack for the one-step energy split of a sift.
    energy_total : float
        Relative slack for the full decomposition energy identity.
    residual_floor : float
        Relative residual energy below which iteration stops cleanly.
    zero_residual : float
        Relative residual norm below which selection refuses to run.
    log_clamp : float
        Boundary modulus is clamped at log_clamp * max before taking
        logs in the outer-factor computation.
    coincidence : float
        Two pole parameters closer than this are treated as equal
        (kernel multiplicities).
    gram : float
        Norm of a normalized kernel after projection must exceed this,
        or the Gram-Schmidt step is declared degenerate.
    cmp_rel : float
        Relative single-coordinate improvement below which a cyclic
        search is accepted as conditionally optimal.
    chain_slack : float
        Absolute slack for uncertainty-product chain comparisons.
    """

    grid_uniform: float = 1e-9
    parseval: float = 1e-10
    hardy: float = 1e-8
    near_zero: float = 1e-12
    param_boundary: float = 1e-9
    energy_step: float = 1e-9
    energy_total: float = 1e-8
    residual_floor: float = 1e-14
    zero_residual: float = 1e-12
    log_clamp: float = 1e-8
    coincidence: float = 1e-9
    gram: float = 1e-6
    cmp_rel: float = 1e-8
    chain_slack: float = 1e-6


@dataclass(frozen=True)
class SearchConfig:
    """Controls for the argmax search over the open unit disc.

    The search first scans a polar grid (Chebyshev-spaced radii so the
    crowded region near the boundary is resolved), then polishes the
    best cell with a Nelder-Mead simplex.  The returned point is never
    worse than the best grid point.

    Attributes
    ----------
    n_angles, n_radii : int
        Polar grid resolution.
    r_max : float
        Radius cap for candidate parameters.  Residual truncation error
        of a sift grows like abs(a)**(2M), so the cap keeps selections
        where the fixed truncation order is trustworthy.
    refine : bool
        Run the simplex polish after the grid scan.
    refine_xatol : float
        Simplex convergence tolerance in the parameter plane.
    refine_maxiter : int
        Iteration cap for the polish.
    threads : int
        Worker threads for the grid scan.  1 means the scan runs as a
        single vectorized sweep, which is usually fastest.
    """

    n_angles: int = 64
    n_radii: int = 32
    r_max: float = 1.0 - 1e-3
    refine: bool = True
    refine_xatol: float = 1e-4
    refine_maxiter: int = 200
    threads: int = 1


DEFAULT_TOL = Tolerances()
DEFAULT_SEARCH = SearchConfig()
