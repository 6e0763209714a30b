"""n-best Blaschke-form approximation by cyclic coordinate descent.

The n-Blaschke objective

    A(f; a_1, ..., a_n) = ||f||^2 - sum_k |<f, B_k>|^2

is the energy of f left outside the span of the TM system built on
the parameter tuple.  It depends only on the spanned subspace, hence
is invariant under permutations of the tuple, and the sifting chain
computes it directly as the energy of the n-fold reduced remainder.

A full n-best search over the polydisc is out of reach (and a good
starting point is itself hard to certify), so the solver cycles:
freeze all coordinates but one, sift through the frozen ones, and
replace the free coordinate by a maximal selection on the resulting
remainder.  The incumbent value is always among the candidates, so
the objective never increases; the iteration settles at a coordinate
minimum point (CMP), a tuple no single such move can improve.  The
limit depends on the initialization; callers who care run several
restarts and keep the best trace.
"""

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_SEARCH, DEFAULT_TOL
from .errors import AFDError, InputError, ZeroResidual, ZeroSignal
from .core_afd import core_afd_decompose, maximal_selection, sift
from .hardy_atoms import validate_param
from .signal_core import HardyFunction

__all__ = [
    "CyclicTrace",
    "n_blaschke_objective",
    "coordinate_optimize",
    "cyclic_afd",
    "cyclic_restarts",
    "cmp_check",
    "cyclic_decomposition",
]


@dataclass
class CyclicTrace:
    """History of one cyclic run: tuple and objective after each step.

    tuples[0] is the initialization and d[0] its objective; every
    coordinate step appends one entry to each.  d is nonincreasing by
    construction (a genuine increase raises during the run).
    """

    tuples: list
    d: np.ndarray
    converged: bool
    cycles: int
    meta: dict = field(default_factory=dict)

    @property
    def params(self):
        return self.tuples[-1]

    @property
    def objective(self):
        return float(self.d[-1])

    def __len__(self):
        return len(self.tuples)


def n_blaschke_objective(f: HardyFunction, params) -> float:
    """Energy of f outside the span of the TM system on params.

    Forms the Gram-Schmidt chain implicitly by sifting through the
    parameters in order; each sift removes exactly the energy of one
    TM coefficient, so the final remainder energy equals
    ||f||^2 - sum |<f, B_k>|^2.  Repeated parameters are fine, the
    division handles multiplicity on its own.
    """
    g = f
    for a in params:
        g = sift(g, validate_param(a))
    return max(float(g.energy()), 0.0)


def _reduced_without(f, params, skip):
    # remainder after sifting every coordinate except `skip`, in order
    g = f
    for i, a in enumerate(params):
        if i == skip:
            continue
        g = sift(g, a)
    return g


def coordinate_optimize(f: HardyFunction, params, index, search=DEFAULT_SEARCH):
    """One coordinate move: re-select entry `index` (1-based) maximally.

    Sifts through the other n-1 parameters in tuple order, runs a
    maximal selection on the remainder with the incumbent included in
    the candidate set, and returns the tuple with that entry replaced.
    Including the incumbent makes the objective nonincreasing by
    construction.  If the other parameters already span f to rounding
    depth, the coordinate is free and the incumbent is kept.
    """
    params = tuple(validate_param(a) for a in params)
    if not 1 <= index <= len(params):
        raise InputError(f"coordinate index {index} outside 1..{len(params)}")
    i = index - 1
    g = _reduced_without(f, params, i)
    try:
        a_new = maximal_selection(g, search, include=(params[i],))
    except ZeroResidual:
        a_new = params[i]
    return params[:i] + (a_new,) + params[i + 1 :]


def cyclic_afd(
    f: HardyFunction,
    n,
    init=None,
    max_cycles=200,
    delta_tol=1e-10,
    search=DEFAULT_SEARCH,
) -> CyclicTrace:
    """Round-robin coordinate descent on the n-Blaschke objective.

    Parameters
    ----------
    f : HardyFunction
    n : int
        Number of Blaschke parameters.
    init : sequence of complex, optional
        Starting tuple.  Default is a warm start from the first n
        one-by-one greedy selections (zero-padded if the greedy run
        terminates early).
    max_cycles, delta_tol :
        The run stops once every step of a full cycle improves the
        objective by less than delta_tol * ||f||^2, or after
        max_cycles cycles.

    Returns
    -------
    CyclicTrace
        With d[0] the objective at init; `converged` records which
        stopping rule fired.

    Notes
    -----
    The limit is a CMP, not a certified global n-best tuple; different
    inits may settle at different objective values.  Each recorded d
    is clamped to the previous one when the difference is below the
    order-swap rounding floor, so the stored trace is exactly
    nonincreasing; an increase beyond that floor raises AFDError.
    """
    source = f.energy()
    if source <= 0.0:
        raise ZeroSignal("zero signal")
    scale = max(source, 1e-300)
    if init is None:
        warm = core_afd_decompose(f, max_terms=n, energy_tol=0.0, search=search)
        init = tuple(warm.params) + (0j,) * (n - len(warm))
    init = tuple(validate_param(a) for a in init)
    if len(init) != n:
        raise InputError(f"init supplies {len(init)} parameters, expected {n}")

    tuples = [init]
    d = [n_blaschke_objective(f, init)]
    converged = False
    cycles = 0
    for cycles in range(1, max_cycles + 1):
        worst_step = 0.0
        for index in range(1, n + 1):
            new = coordinate_optimize(f, tuples[-1], index, search)
            val = n_blaschke_objective(f, new)
            if val > d[-1]:
                if val - d[-1] > 1e-12 * scale:
                    raise AFDError(
                        f"objective increased by {val - d[-1]:.3e} "
                        f"at coordinate {index}"
                    )
                val = d[-1]
            worst_step = max(worst_step, d[-1] - val)
            tuples.append(new)
            d.append(val)
        if worst_step < delta_tol * scale:
            converged = True
            break
    return CyclicTrace(
        tuples=tuples,
        d=np.array(d),
        converged=converged,
        cycles=cycles,
        meta={"delta_tol": delta_tol, "max_cycles": max_cycles},
    )


def cyclic_restarts(f, n, inits, max_cycles=200, delta_tol=1e-10, search=DEFAULT_SEARCH):
    """Independent cyclic runs from several inits, best objective first.

    Restarts share nothing, so they are safe to run concurrently; this
    helper keeps them sequential and just sorts the traces by final
    objective.
    """
    traces = [
        cyclic_afd(f, n, init=init, max_cycles=max_cycles, delta_tol=delta_tol, search=search)
        for init in inits
    ]
    return sorted(traces, key=lambda tr: tr.objective)


def cmp_check(f: HardyFunction, params, search=DEFAULT_SEARCH) -> bool:
    """True when no single coordinate move improves A noticeably.

    The threshold is 1e-8 * ||f||^2, matching the convergence floor of
    the cyclic iteration rather than machine precision: selection-grid
    polish can always shave dust off the objective.
    """
    base = n_blaschke_objective(f, params)
    floor = DEFAULT_TOL.cmp_rel * max(f.energy(), 1e-300)
    for index in range(1, len(params) + 1):
        new = coordinate_optimize(f, params, index, search)
        if base - n_blaschke_objective(f, new) >= floor:
            return False
    return True


def cyclic_decomposition(f: HardyFunction, params):
    """Decomposition with the given tuple consumed in order.

    Coefficients come from the sifting chain, so the residual trace
    ends at the n-Blaschke objective of the tuple.
    """
    d = core_afd_decompose(
        f,
        max_terms=len(params),
        energy_tol=0.0,
        forced_params=tuple(params),
        kind="cyclic",
    )
    return d
