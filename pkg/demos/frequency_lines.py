#!/usr/bin/env python3
"""Sparse frequency lines and how tight the uncertainty chain sits.

A decomposition into parameterized kernels carries its own
time-frequency picture: every component contributes one line
(t, theta_k'(t)) weighted by its boundary energy, with no window and
no quadratic cross terms.  The script decomposes a two-tone signal
with a modulated envelope, summarizes the lines, and then evaluates
the variance product, the covariance-free lower bound, and the
covariance bound for a plain Gaussian (everything collapses to 1/4)
and for a chirped Gaussian (the covariance-free bound pulls ahead).
"""

import numpy as np

from afd import (
    CircularSignal,
    analytic_signal,
    circle_grid,
    core_afd_decompose,
    dirac_tfd,
    uncertainty_report,
)


def main():
    n = 1024
    t = circle_grid(n)
    s = (1.0 + 0.5 * np.cos(t)) * np.cos(7 * t) + 0.6 * np.cos(13 * t + 1.1)
    f = analytic_signal(CircularSignal(s))
    d = core_afd_decompose(f, max_terms=6, energy_tol=0.0)

    comps = dirac_tfd(d, grid=n)
    print("frequency lines of the decomposition:")
    print(f"{'k':>3} {'mean omega':>11} {'omega span':>22} {'mean weight':>12}")
    for comp in comps:
        span = f"[{comp.omega.min():7.3f}, {comp.omega.max():7.3f}]"
        print(f"{comp.index:>3} {np.mean(comp.omega):>11.3f} {span:>22} "
              f"{np.mean(comp.weight):>12.4e}")
    total = sum(np.mean(c.weight) for c in comps)
    print(f"sum of mean weights {total:.6f} = extracted energy "
          f"{np.sum(np.abs(np.array(d.coefficients))**2):.6f}\n")

    tt = np.linspace(0, 2 * np.pi, n, endpoint=False)
    env = np.exp(-((tt - np.pi) ** 2) / (2 * 0.45**2))
    cases = [
        ("gaussian", env),
        ("gaussian * cos(8t)", env * np.cos(8 * tt)),
        ("chirped gaussian", env * np.cos(5 * tt + 2.5 * (tt - np.pi) ** 2)),
    ]
    print("uncertainty chain, sigma_t^2 sigma_w^2 >= extra >= cohen >= 1/4:")
    print(f"{'signal':>20} {'product':>10} {'extra':>10} {'cohen':>10} {'chain':>6}")
    for name, sig in cases:
        rep = uncertainty_report(sig, tt)
        print(f"{name:>20} {rep.product:>10.4f} {rep.extra_bound:>10.4f} "
              f"{rep.cohen_bound:>10.4f} {'ok' if rep.chain_ok else 'FAIL':>6}")
    print("\nthe chirp separates the two bounds: its envelope-frequency "
          "covariance vanishes while |t||phi'| correlation does not")


if __name__ == "__main__":
    main()
