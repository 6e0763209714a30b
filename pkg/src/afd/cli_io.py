"""Command line front end and the file formats behind it.

Subcommands
-----------
decompose   run one of the five algorithms on a CSV signal, write a
            JSON result record, print the per-step energy table
tfd         turn a saved result into (t, omega, weight) atom rows,
            optionally binned to a raster
check       mono-component / Bedrosian / uncertainty screening
info        defaults, formats and exit codes

Signals arrive as CSV with a header, either `t,value` (real) or
`t,re,im`; t must be the uniform circle grid 2*pi*j/N except for
`check --mode uncertainty`, which takes any uniform real-line grid.
Results are JSON with a `schema: 1` marker; complex numbers are
{re, im} pairs.  Wall time is printed, never stored, so reruns with
the same inputs produce byte-identical result files.

Exit codes: 0 ok, 2 input error, 3 check failed, 4 numerical
degeneracy.
"""

import argparse
import csv
import json
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import DEFAULT_SEARCH
from .core_afd import Component, Decomposition, core_afd_decompose
from .cyclic_afd import cyclic_afd, cyclic_decomposition
from .errors import (
    AFDError,
    InputError,
    NonRealInput,
    NonUniformGrid,
    NumericalDegeneracy,
    ParseError,
    ZeroSignal,
)
from .hardy_atoms import monocomp_check
from .poafd import bergman_space, hardy_space, poafd_decompose
from .signal_core import (
    CircularSignal,
    analytic_signal,
    bedrosian_check,
    phase_amplitude,
    to_hardy,
)
from .tfd_uncertainty import dirac_tfd, uncertainty_report, unwinding_tfd
from .unwinding import (
    UnwindingDecomposition,
    UnwindingTerm,
    uwa_decompose,
    uwafd_decompose,
)

__all__ = [
    "main",
    "read_signal_csv",
    "read_line_csv",
    "load_result",
    "save_result",
]

SCHEMA = 1
ALGORITHMS = ("core", "uwa", "uwafd", "cyclic", "poafd")
EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CHECK = 3
EXIT_DEGENERATE = 4


# ---------------------------------------------------------------- input

def read_signal_csv(path, allow_complex=False) -> CircularSignal:
    """CSV -> CircularSignal, validating grid and realness.

    Header `t,value` or `t,re,im`; times must equal 2*pi*j/N within
    1e-9.  Without allow_complex the imaginary column, if present,
    must be numerically zero.
    """
    t, cols = _read_csv(path, {"t,value": 2, "t,re,im": 3})
    n = len(t)
    expected = 2.0 * np.pi * np.arange(n) / n
    if n == 0:
        raise ParseError(f"{path}: no data rows")
    if np.max(np.abs(t - expected)) > 1e-9:
        raise NonUniformGrid(
            f"{path}: time column is not the uniform circle grid 2*pi*j/{n}"
        )
    if len(cols) == 1:
        samples = cols[0].astype(complex)
    else:
        samples = cols[0] + 1j * cols[1]
        if not allow_complex and np.max(np.abs(cols[1])) > 1e-12 * max(
            1.0, np.max(np.abs(cols[0]))
        ):
            raise NonRealInput(
                f"{path}: imaginary column is nonzero; pass --complex to keep it"
            )
    return CircularSignal(samples)


def read_line_csv(path):
    """CSV `t,value` on any uniform real-line grid -> (t, values)."""
    t, cols = _read_csv(path, {"t,value": 2})
    if len(t) < 2:
        raise ParseError(f"{path}: need at least two samples")
    dt = t[1] - t[0]
    if dt <= 0 or np.max(np.abs(np.diff(t) - dt)) > 1e-9 * abs(dt):
        raise NonUniformGrid(f"{path}: time column is not uniform")
    return t, cols[0]


def _read_csv(path, headers):
    try:
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from exc
    if not rows:
        raise ParseError(f"{path}: empty file")
    header = ",".join(c.strip().lower() for c in rows[0])
    if header not in headers:
        raise ParseError(
            f"{path}: header '{header}' not one of {sorted(headers)}"
        )
    width = headers[header]
    data = rows[1:]
    if not data:
        raise ParseError(f"{path}: no data rows")
    try:
        arr = np.array([[float(c) for c in row] for row in data])
    except ValueError as exc:
        raise ParseError(f"{path}: non-numeric cell ({exc})") from exc
    if arr.shape[1] != width:
        raise ParseError(f"{path}: expected {width} columns, found {arr.shape[1]}")
    return arr[:, 0], [arr[:, j] for j in range(1, width)]


def _ingest(args):
    s = read_signal_csv(args.input, allow_complex=args.complex)
    if args.complex:
        f, _leak = to_hardy(s)
    else:
        f = analytic_signal(s)
    if f.energy() <= 0.0:
        raise ZeroSignal(f"{args.input}: signal is identically zero")
    return s, f


# ---------------------------------------------------------------- records

def _c2j(z):
    return {"re": float(np.real(z)), "im": float(np.imag(z))}


def _j2c(d):
    return complex(d["re"], d["im"])


def _record(args, algorithm, n_input, result, extra_meta=None):
    components = []
    if isinstance(result, UnwindingDecomposition):
        for term in result.terms:
            components.append(
                {
                    "a": None if term.a is None else _c2j(term.a),
                    "c": _c2j(term.c),
                    "kind": result.kind,
                }
            )
        meta = {
            "inner_n": int(result.meta["n"]),
            "inner": [
                [term.cumulative_inner.real.tolist(), term.cumulative_inner.imag.tolist()]
                for term in result.terms
            ],
            "factor_consistency": [float(x) for x in result.meta["factor_consistency"]],
            "front_loading": [float(x) for x in result.meta["front_loading"]],
            "stopped": result.meta["stopped"],
        }
    else:
        for comp in result.components:
            components.append({"a": _c2j(comp.a), "c": _c2j(comp.c), "kind": comp.kind})
        meta = {k: v for k, v in result.meta.items() if _json_safe(v)}
    if extra_meta:
        meta.update(extra_meta)
    return {
        "schema": SCHEMA,
        "algorithm": algorithm,
        "config": {
            "n": int(n_input),
            "terms": args.terms,
            "tol": args.tol,
            "order_n": args.n,
            "space": args.space,
            "grid": args.grid,
            "init": args.init,
            "seed": args.seed,
            "threads": args.threads,
            "complex": bool(args.complex),
        },
        "source_energy": float(result.source_energy),
        "residual_trace": [float(x) for x in result.residual_energy],
        "components": components,
        "meta": meta,
    }


def _json_safe(v):
    return isinstance(v, (int, float, str, bool, type(None)))


def save_result(record, path):
    with open(path, "w") as fh:
        json.dump(record, fh, sort_keys=True, indent=1)
        fh.write("\n")


def load_result(path):
    """JSON result file -> (record dict, rebuilt decomposition object)."""
    try:
        with open(path) as fh:
            rec = json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(rec, dict) or rec.get("schema") != SCHEMA:
        raise ParseError(f"{path}: missing or unsupported schema marker")
    algo = rec.get("algorithm")
    trace = np.array(rec["residual_trace"], dtype=float)
    source = float(rec["source_energy"])
    if algo in ("uwa", "uwafd"):
        inner = rec["meta"]["inner"]
        terms = [
            UnwindingTerm(
                c=_j2c(comp["c"]),
                a=None if comp["a"] is None else _j2c(comp["a"]),
                cumulative_inner=np.array(re_part) + 1j * np.array(im_part),
            )
            for comp, (re_part, im_part) in zip(rec["components"], inner)
        ]
        obj = UnwindingDecomposition(
            terms=terms,
            residual_energy=trace,
            source_energy=source,
            kind=algo,
            meta={
                "n": int(rec["meta"]["inner_n"]),
                "factor_consistency": rec["meta"]["factor_consistency"],
                "front_loading": rec["meta"]["front_loading"],
                "stopped": rec["meta"]["stopped"],
            },
        )
    else:
        comps = [
            Component(a=_j2c(c["a"]), c=_j2c(c["c"]), kind=c["kind"])
            for c in rec["components"]
        ]
        obj = Decomposition(
            components=comps,
            residual_energy=trace,
            source_energy=source,
            meta=dict(rec["meta"], n=rec["config"]["n"]),
        )
    return rec, obj


# ---------------------------------------------------------------- commands

def _search_from_args(args):
    try:
        angles, radii = (int(x) for x in args.grid.lower().split("x"))
    except ValueError as exc:
        raise InputError(f"--grid wants ANGLESxRADII, got '{args.grid}'") from exc
    if angles < 1 or radii < 1:
        raise InputError("--grid counts must be positive")
    if args.threads < 1:
        raise InputError("--threads must be >= 1")
    return replace(
        DEFAULT_SEARCH, n_angles=angles, n_radii=radii, threads=args.threads
    )


def _parse_init(text, n):
    if text == "auto":
        return None
    try:
        vals = tuple(complex(part.replace("i", "j")) for part in text.split(","))
    except ValueError as exc:
        raise InputError(f"--init wants 'auto' or comma-separated complex numbers") from exc
    if len(vals) != n:
        raise InputError(f"--init supplies {len(vals)} values, --n is {n}")
    return vals


def cmd_decompose(args):
    search = _search_from_args(args)
    s, f = _ingest(args)
    extra = None
    t0 = time.perf_counter()
    if args.algo == "core":
        result = core_afd_decompose(
            f, max_terms=args.terms, energy_tol=args.tol, search=search
        )
    elif args.algo == "uwa":
        result = uwa_decompose(f, n_terms=args.terms)
    elif args.algo == "uwafd":
        result = uwafd_decompose(
            f, max_terms=args.terms, energy_tol=args.tol, search=search
        )
    elif args.algo == "cyclic":
        trace = cyclic_afd(
            f, args.n, init=_parse_init(args.init, args.n), search=search
        )
        result = cyclic_decomposition(f, trace.params)
        extra = {
            "objective": trace.objective,
            "cycles": trace.cycles,
            "converged": trace.converged,
        }
    elif args.algo == "poafd":
        make = hardy_space if args.space == "hardy" else bergman_space
        space = make(len(f.coefficients) - 1)
        result = poafd_decompose(
            space, f.coefficients, max_terms=args.terms, energy_tol=args.tol,
            search=search,
        )
    else:  # argparse choices make this unreachable
        raise InputError(f"unknown algorithm {args.algo}")
    elapsed = time.perf_counter() - t0

    record = _record(args, args.algo, s.n, result, extra)
    out = args.output or str(Path(args.input).with_suffix(".afd.json"))
    save_result(record, out)
    _print_energy_table(args.algo, record)
    # wall time stays on the console so reruns stay byte-identical
    print(f"result written to {out} ({elapsed:.3f}s)")
    return EXIT_OK


def _print_energy_table(algo, record):
    source = record["source_energy"]
    trace = record["residual_trace"]
    print(f"algorithm {algo}, N={record['config']['n']}, energy {source:.6e}")
    print(f"{'step':>4}  {'a':>24}  {'|c|':>12}  {'residual':>13}  {'relative':>10}")
    for k, comp in enumerate(record["components"], start=1):
        if comp["a"] is None:
            a_txt = "-"
        else:
            a = _j2c(comp["a"])
            a_txt = f"{a.real:+.6f}{a.imag:+.6f}j"
        c_mod = abs(_j2c(comp["c"]))
        resid = trace[min(k, len(trace) - 1)]
        print(
            f"{k:>4}  {a_txt:>24}  {c_mod:>12.6e}  {resid:>13.6e}  "
            f"{resid / source:>10.3e}"
        )
    if record["meta"].get("stopped"):
        print(f"stopped early: {record['meta']['stopped']}")


def cmd_tfd(args):
    rec, obj = load_result(args.result)
    if rec["algorithm"] in ("uwa", "uwafd"):
        comps = unwinding_tfd(obj)
    else:
        comps = dirac_tfd(obj, grid=rec["config"]["n"])
    out = args.output or str(Path(args.result).with_suffix(".tfd.csv"))
    n_atoms = 0
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "t", "omega", "weight"])
        for comp in comps:
            for tj, oj, pj in zip(comp.t, comp.omega, comp.weight):
                w.writerow([comp.index, repr(float(tj)), repr(float(oj)), repr(float(pj))])
                n_atoms += 1
    print(f"{n_atoms} atoms over {len(comps)} components written to {out}")
    if args.bins:
        raster = _rasterize(comps, args.bins)
        rout = out[:-4] + ".raster.csv" if out.endswith(".csv") else out + ".raster.csv"
        with open(rout, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t"] + [repr(float(c)) for c in raster["centers"]])
            for tj, row in zip(raster["t"], raster["grid"]):
                w.writerow([repr(float(tj))] + [repr(float(x)) for x in row])
        print(f"raster ({args.bins} frequency bins) written to {rout}")
    return EXIT_OK


def _rasterize(comps, bins):
    t = comps[0].t
    omegas = np.concatenate([c.omega for c in comps])
    lo, hi = float(omegas.min()), float(omegas.max())
    if hi <= lo:
        hi = lo + 1.0
    edges = np.linspace(lo, hi, bins + 1)
    centers = 0.5 * (edges[:-1] + edges[1:])
    grid = np.zeros((len(t), bins))
    for comp in comps:
        idx = np.clip(np.searchsorted(edges, comp.omega, side="right") - 1, 0, bins - 1)
        for j, (b, wgt) in enumerate(zip(idx, comp.weight)):
            grid[j, b] += wgt
    return {"t": t, "centers": centers, "grid": grid}


def cmd_check(args):
    if args.mode == "mono":
        s = read_signal_csv(args.input)
        rep = monocomp_check(s)
        print(f"radii probed: {', '.join(f'{r:.6f}' for r in rep.radii)}")
        print(f"min phase derivative per radius: "
              f"{', '.join(f'{m:+.3e}' for m in rep.min_per_radius)}")
        print(f"outermost minimum {rep.min_phase_derivative:+.6e}, "
              f"negative fraction {rep.fraction_negative:.4f}")
        print("mono-component check:", "pass" if rep.passed else "FAIL")
        return EXIT_OK if rep.passed else EXIT_CHECK
    if args.mode == "bedrosian":
        s = read_signal_csv(args.input)
        f = analytic_signal(s)
        rho, theta = phase_amplitude(f, 1.0 - 2.0**-12, s.n)
        resid = bedrosian_check(rho, theta)
        ok = resid < 1e-6
        print(f"amplitude-phase split at r=1-2^-12; H(rho cos theta) residual "
              f"{resid:.6e}")
        print("bedrosian check:", "pass" if ok else "FAIL")
        return EXIT_OK if ok else EXIT_CHECK
    # uncertainty
    t, vals = read_line_csv(args.input)
    rep = uncertainty_report(vals, t)
    print(f"<t> = {rep.mean_t:+.6f}   <omega> = {rep.mean_w:+.6f}")
    print(f"sigma_t^2 = {rep.sigma_t2:.6f}   sigma_omega^2 = {rep.sigma_w2:.6f}")
    print(f"product     {rep.product:.6f}")
    print(f"extra bound {rep.extra_bound:.6f}")
    print(f"cohen bound {rep.cohen_bound:.6f}")
    print("uncertainty chain:", "pass" if rep.chain_ok else "FAIL")
    return EXIT_OK if rep.chain_ok else EXIT_CHECK


def cmd_info(args):
    from . import __version__

    print(f"afd {__version__}")
    print(f"algorithms: {', '.join(ALGORITHMS)}   spaces: hardy, bergman")
    print("input: CSV `t,value` or `t,re,im`, t = 2*pi*j/N, N a power of two >= 8")
    print("       (check --mode uncertainty: any uniform real-line `t,value`)")
    print("results: JSON, schema 1, complex numbers as {re, im}")
    print("defaults: --terms 10, --tol 1e-06, --grid 64x32, --n 2, --space hardy")
    print("exit codes: 0 ok, 2 input error, 3 check failed, 4 numerical degeneracy")
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _build_parser():
    p = argparse.ArgumentParser(
        prog="afd",
        description="adaptive Fourier decompositions on the unit circle",
    )
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", help="decompose a CSV signal")
    d.add_argument("input")
    d.add_argument("--algo", choices=ALGORITHMS, default="core")
    d.add_argument("--terms", type=int, default=10,
                   help="maximum number of terms (default 10)")
    d.add_argument("--tol", type=float, default=1e-6,
                   help="relative residual-energy stop (default 1e-6)")
    d.add_argument("--n", type=int, default=2,
                   help="tuple order for --algo cyclic (default 2)")
    d.add_argument("--init", default="auto",
                   help="cyclic init: 'auto' or comma-separated complex values")
    d.add_argument("--space", choices=("hardy", "bergman"), default="hardy",
                   help="kernel space for --algo poafd")
    d.add_argument("--grid", default="64x32",
                   help="selection grid ANGLESxRADII (default 64x32)")
    d.add_argument("--seed", type=int, default=0,
                   help="recorded in the result for audit reruns")
    d.add_argument("--threads", type=int, default=1)
    d.add_argument("--output", help="result path (default: input with .afd.json)")
    d.add_argument("--complex", action="store_true",
                   help="accept complex input as Hardy boundary data")
    d.set_defaults(func=cmd_decompose)

    t = sub.add_parser("tfd", help="emit time-frequency atoms for a result")
    t.add_argument("result")
    t.add_argument("--bins", type=int, default=0,
                   help="also write a raster with this many frequency bins")
    t.add_argument("--output", help="atom CSV path (default: result with .tfd.csv)")
    t.set_defaults(func=cmd_tfd)

    c = sub.add_parser("check", help="screen a signal")
    c.add_argument("input")
    c.add_argument("--mode", choices=("mono", "bedrosian", "uncertainty"),
                   required=True)
    c.set_defaults(func=cmd_check)

    i = sub.add_parser("info", help="versions, formats, exit codes")
    i.set_defaults(func=cmd_info)
    return p


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalDegeneracy as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except AFDError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
