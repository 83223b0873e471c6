"""``gasp``: command-line access to every capability of the library.

Exit codes: 0 on success; 2 on validation failure, with a machine-readable
JSON error object on stderr; 3 on numerical nonconvergence, same shape.

Parameter precedence: explicit flags override values from ``--config`` (a
JSON object keyed by the parameter names below, hyphens spelled as
underscores), which override the defaults.  One table, one source of truth
("-" marks a required parameter, auto = computed at run time):

    kernel eval            alpha=-  n=-  x=-  y=1
    kernel mass            alpha=-  n=-  y=1
    kernel residual        alpha=-  n=-  x=-  y=1  h=auto
    fourier compare        alpha=-  n=-  y=1  xi=-
    extend                 data=-  y=-  origin=-  spacing=-  shape=-
    converge               data=-  y_list=1,0.25,0.0625,0.015625
    hitting kernel         alpha=-  n=-  y=-  eta=-  r=-
    hitting semigroup      alpha=-  n=-  y=-  eta2=-  eta1=-  origin=-
                           spacing=-  shape=-  tol=1e-3
    simulate boundary      alpha=-  n=1  y=1  paths=-  dt=1e-3  floor=auto
                           seed=GASP_SEED/0  samples=off
    simulate hitting       alpha=-  n=1  y=2  eta=1  paths=-  dt=1e-3
                           seed=GASP_SEED/0  samples=off
    growth scan            data=-  r=-  theta_count=64
    growth counterexample  alpha=-  n=-  case=subcritical  beta=0  gamma=0
                           k_max=10

Every subcommand also accepts ``--config``, ``--output`` (primary document
to a file instead of stdout), ``--format {json,csv}`` (default json for
reports, csv for tables), and ``--workers N`` (parallelism cap; results
never depend on it).  ``--seed`` falls back to the GASP_SEED environment
variable, then to 0.  Identical configuration and seed give byte-identical
documents; floats are printed with 17 significant digits in JSON and 9 in
CSV.  The three ``kernel`` subcommands print a single human-readable line
to stdout and write their document only when ``--output`` is given.
"""

import functools
import json
import math
import os
import sys

import click
import numpy as np

from ._jsonio import csv_document, format_float, json_document
from ._quadrature import QuadratureError
from .boundary_data import CriticalCase, Grid, SubcriticalCase, case_exponents, load_data
from .extension import boundary_convergence, extend_grid
from .growth import counterexample_track, l1_data_scan, u_tilde
from .hbm_sim import (SimConfig, simulate_paths, validate_boundary_law,
                      validate_hitting_law)
from .hitting import LevelPair, hitting_kernel, semigroup_check
from .kernel import (HalfSpacePoint, ModelParams, dalpha_residual, kernel_mass,
                     poisson_kernel)
from .special_functions import EvalAccuracy
from .spectral import ft_closed_form, ft_direct, ft_integral_rep


class _Required:
    def __repr__(self):
        return "<required>"


_REQ = _Required()

# shared by every subcommand; "output": None means stdout
_COMMON = {"format": None, "output": None, "workers": 1}

_DEFAULTS = {
    "kernel eval": {"alpha": _REQ, "n": _REQ, "x": _REQ, "y": 1.0},
    "kernel mass": {"alpha": _REQ, "n": _REQ, "y": 1.0},
    "kernel residual": {"alpha": _REQ, "n": _REQ, "x": _REQ, "y": 1.0, "h": None},
    "fourier compare": {"alpha": _REQ, "n": _REQ, "y": 1.0, "xi": _REQ},
    "extend": {"data": _REQ, "alpha": None, "n": None, "y": _REQ,
               "origin": _REQ, "spacing": _REQ, "shape": _REQ},
    "converge": {"data": _REQ, "alpha": None, "n": None,
                 "y_list": "1,0.25,0.0625,0.015625"},
    "hitting kernel": {"alpha": _REQ, "n": _REQ, "y": _REQ, "eta": _REQ, "r": _REQ},
    "hitting semigroup": {"alpha": _REQ, "n": _REQ, "y": _REQ, "eta2": _REQ,
                          "eta1": _REQ, "origin": _REQ, "spacing": _REQ,
                          "shape": _REQ, "tol": 1e-3},
    "simulate boundary": {"alpha": _REQ, "n": 1, "y": 1.0, "paths": _REQ,
                          "dt": 1e-3, "floor": None, "seed": None, "samples": None},
    "simulate hitting": {"alpha": _REQ, "n": 1, "y": 2.0, "eta": 1.0,
                         "paths": _REQ, "dt": 1e-3, "seed": None, "samples": None},
    "growth scan": {"data": _REQ, "alpha": None, "n": None, "r": _REQ,
                    "theta_count": 64},
    "growth counterexample": {"alpha": _REQ, "n": _REQ, "case": "subcritical",
                              "beta": 0.0, "gamma": 0.0, "k_max": 10},
}

# tables default to csv, reports and single values to json
_FORMAT_DEFAULT = {
    "fourier compare": "csv",
    "extend": "csv",
    "converge": "csv",
    "hitting kernel": "csv",
    "growth scan": "csv",
}


def _die(code, kind, message):
    sys.stderr.write(json_document({"error": kind, "message": message}))
    sys.exit(code)


def _guard(fn):
    """Map library exceptions onto the exit-code contract."""
    @functools.wraps(fn)
    def run(**kw):
        try:
            fn(**kw)
        except QuadratureError as exc:
            _die(3, "nonconvergence", str(exc))
        except (ValueError, OSError) as exc:
            _die(2, "validation", str(exc))
    return run


def _settings(command, config_path, flags):
    """Merge defaults, config-file values, and explicit flags (in that order)."""
    merged = dict(_DEFAULTS[command])
    merged.update(_COMMON)
    if config_path is not None:
        with open(config_path) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValueError("config file %s: not valid JSON (%s)"
                                 % (config_path, exc))
        if not isinstance(doc, dict):
            raise ValueError("config file %s: expected a JSON object" % config_path)
        for key, value in doc.items():
            if key not in merged:
                raise ValueError("config file %s: unknown parameter %r for %r"
                                 % (config_path, key, command))
            merged[key] = value
    for key, value in flags.items():
        if value is not None:
            merged[key] = value
    missing = sorted(k for k, v in merged.items() if v is _REQ)
    if missing:
        raise ValueError("%r is missing required parameter(s): %s"
                         % (command, ", ".join(missing)))
    if merged["format"] is None:
        merged["format"] = _FORMAT_DEFAULT.get(command, "json")
    merged["workers"] = int(merged["workers"])
    if merged["workers"] < 1:
        raise ValueError("workers must be >= 1, got %d" % merged["workers"])
    return merged


def _params(settings):
    alpha = float(settings["alpha"])
    if not (alpha > -1.0 and math.isfinite(alpha)):
        raise ValueError(
            "alpha = %r is outside the admissible range alpha > -1: at "
            "alpha = -1 the kernel normalization diverges, and below it the "
            "weighted problem admits only the zero solution, so every "
            "subcommand refuses to run" % (settings["alpha"],))
    return ModelParams(alpha, int(settings["n"]))


def _seed(settings):
    value = settings.get("seed")
    if value is None:
        env = os.environ.get("GASP_SEED")
        if env is None:
            return 0
        try:
            value = int(env)
        except ValueError:
            raise ValueError("GASP_SEED must be an integer, got %r" % env)
    value = int(value)
    if not (0 <= value < 2**64):
        raise ValueError("seed must be a 64-bit unsigned integer, got %d" % value)
    return value


def _floats(value, name):
    if isinstance(value, str):
        parts = [p.strip() for p in value.split(",") if p.strip()]
    elif isinstance(value, (list, tuple)):
        parts = list(value)
    else:
        raise ValueError("%s: expected a comma-separated list of numbers" % name)
    try:
        out = tuple(float(p) for p in parts)
    except (TypeError, ValueError):
        raise ValueError("%s: expected numbers, got %r" % (name, value))
    if not out:
        raise ValueError("%s: empty list" % name)
    return out


def _ints(value, name):
    vals = _floats(value, name)
    out = tuple(int(v) for v in vals)
    if any(o != v for o, v in zip(out, vals)):
        raise ValueError("%s: expected integers, got %r" % (name, value))
    return out


def _load_data(settings):
    """Read a boundary-data file; flags may restate alpha/n but not change them."""
    data = load_data(settings["data"])
    p = data.params_hint
    if settings.get("alpha") is not None and float(settings["alpha"]) != p.alpha:
        raise ValueError("--alpha %s disagrees with the data file (alpha = %s)"
                         % (settings["alpha"], p.alpha))
    if settings.get("n") is not None and int(settings["n"]) != p.n:
        raise ValueError("--n %s disagrees with the data file (n = %d)"
                         % (settings["n"], p.n))
    return data, p


def _write(text, output):
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w") as fh:
            fh.write(text)


def _emit(settings, json_obj, csv_header, csv_rows):
    if settings["format"] == "json":
        _write(json_document(json_obj), settings["output"])
    else:
        _write(csv_document(csv_header, csv_rows), settings["output"])


def _emit_report(settings, report):
    """A flat dict as a JSON object or a one-row CSV."""
    _emit(settings, report, tuple(report), [tuple(report.values())])


def _common_options(fn):
    for deco in (
        click.option("--workers", type=int, default=None,
                     help="Parallelism cap; never changes results."),
        click.option("--format", "fmt", type=click.Choice(("json", "csv")),
                     default=None, help="Primary document format."),
        click.option("--output", type=click.Path(dir_okay=False), default=None,
                     help="Write the primary document here instead of stdout."),
        click.option("--config", "config_path",
                     type=click.Path(exists=True, dir_okay=False), default=None,
                     help="JSON object of parameter values; flags override it."),
    ):
        fn = deco(fn)
    return fn


@click.group()
def main():
    """Weighted half-space kernels, extensions, hitting laws, growth scans."""


# ----------------------------------------------------------------- kernel


@main.group("kernel")
def kernel_group():
    """Pointwise kernel values, total mass, and the PDE residual."""


@kernel_group.command("eval")
@click.option("--alpha", type=float, default=None, help="Weight exponent, > -1.")
@click.option("--n", type=int, default=None, help="Boundary dimension.")
@click.option("--x", default=None, help="Boundary point, n comma-separated values.")
@click.option("--y", type=float, default=None, help="Height above the boundary.")
@_common_options
@_guard
def kernel_eval(alpha, n, x, y, config_path, output, fmt, workers):
    s = _settings("kernel eval", config_path,
                  {"alpha": alpha, "n": n, "x": x, "y": y,
                   "format": fmt, "output": output, "workers": workers})
    p = _params(s)
    pt = HalfSpacePoint(x=_floats(s["x"], "x"), y=float(s["y"]))
    value = poisson_kernel(p, pt)
    click.echo(format_float(value, 17))
    if s["output"] is not None:
        _emit(s,
              {"alpha": p.alpha, "n": p.n, "x": list(pt.x), "y": pt.y,
               "value": value},
              tuple("x%d" % (i + 1) for i in range(p.n)) + ("y", "value"),
              [pt.x + (pt.y, value)])


@kernel_group.command("mass")
@click.option("--alpha", type=float, default=None, help="Weight exponent, > -1.")
@click.option("--n", type=int, default=None, help="Boundary dimension.")
@click.option("--y", type=float, default=None, help="Height (the mass is 1 at every height).")
@_common_options
@_guard
def kernel_mass_cmd(alpha, n, y, config_path, output, fmt, workers):
    s = _settings("kernel mass", config_path,
                  {"alpha": alpha, "n": n, "y": y,
                   "format": fmt, "output": output, "workers": workers})
    p = _params(s)
    mass = kernel_mass(p, float(s["y"]))
    # sequence-difference estimate: same quadrature at a coarser tolerance,
    # floored at roundoff for when the two levels coincide exactly
    est = max(abs(mass - kernel_mass(p, float(s["y"]), EvalAccuracy(rel_tol=1e-7))),
              abs(mass) * 2.0**-52)
    click.echo("%.6f ± %s" % (mass, format_float(est, 2)))
    if s["output"] is not None:
        _emit(s,
              {"alpha": p.alpha, "n": p.n, "y": float(s["y"]), "mass": mass,
               "error_estimate": est},
              ("alpha", "n", "y", "mass", "error_estimate"),
              [(p.alpha, p.n, float(s["y"]), mass, est)])


@kernel_group.command("residual")
@click.option("--alpha", type=float, default=None, help="Weight exponent, > -1.")
@click.option("--n", type=int, default=None, help="Boundary dimension.")
@click.option("--x", default=None, help="Boundary point, n comma-separated values.")
@click.option("--y", type=float, default=None, help="Height above the boundary.")
@click.option("--h", type=float, default=None, help="Stencil step (default y/100).")
@_common_options
@_guard
def kernel_residual(alpha, n, x, y, h, config_path, output, fmt, workers):
    s = _settings("kernel residual", config_path,
                  {"alpha": alpha, "n": n, "x": x, "y": y, "h": h,
                   "format": fmt, "output": output, "workers": workers})
    p = _params(s)
    pt = HalfSpacePoint(x=_floats(s["x"], "x"), y=float(s["y"]))
    step = None if s["h"] is None else float(s["h"])
    value = dalpha_residual(lambda q: poisson_kernel(p, q), p, pt, h=step)
    click.echo(format_float(value, 17))
    if s["output"] is not None:
        _emit(s,
              {"alpha": p.alpha, "n": p.n, "x": list(pt.x), "y": pt.y,
               "h": pt.y / 100.0 if step is None else step, "residual": value},
              tuple("x%d" % (i + 1) for i in range(p.n)) + ("y", "residual"),
              [pt.x + (pt.y, value)])


# ---------------------------------------------------------------- fourier


@main.group("fourier")
def fourier_group():
    """Fourier transform of the kernel, three independent routes."""


@fourier_group.command("compare")
@click.option("--alpha", type=float, default=None, help="Weight exponent, > -1.")
@click.option("--n", type=int, default=None, help="Boundary dimension.")
@click.option("--y", type=float, default=None, help="Height above the boundary.")
@click.option("--xi", default=None,
              help="Frequency magnitudes |xi| > 0, comma-separated.")
@_common_options
@_guard
def fourier_compare(alpha, n, y, xi, config_path, output, fmt, workers):
    s = _settings("fourier compare", config_path,
                  {"alpha": alpha, "n": n, "y": y, "xi": xi,
                   "format": fmt, "output": output, "workers": workers})
    p = _params(s)
    height = float(s["y"])
    rows = []
    for t in _floats(s["xi"], "xi"):
        if not t > 0.0:
            raise ValueError("xi values must be > 0, got %g" % t)
        closed = float(ft_closed_form(p, height, t))
        integral = ft_integral_rep(p, height, t)
        if p.n <= 2:
            vec = np.zeros(p.n)
            vec[0] = t
            direct = ft_direct(p, height, vec)
        else:
            direct = None  # brute-force oracle is n <= 2 only
        rows.append((t, closed, integral, direct))
    _emit(s,
          {"alpha": p.alpha, "n": p.n, "y": height,
           "rows": [{"xi": r[0], "closed_form": r[1], "integral_rep": r[2],
                     "direct": r[3]} for r in rows]},
          ("xi", "closed_form", "integral_rep", "direct"),
          rows)


# ----------------------------------------------------------------- extend


@main.command("extend")
@click.option("--data", default=None,
              help="Boundary-data JSON file (see the data-file schema).")
@click.option("--alpha", type=float, default=None,
              help="Optional; must match the data file.")
@click.option("--n", type=int, default=None,
              help="Optional; must match the data file.")
@click.option("--y", type=float, default=None, help="Evaluation height, > 0.")
@click.option("--origin", default=None, help="Output grid origin, n values.")
@click.option("--spacing", type=float, default=None, help="Output grid spacing.")
@click.option("--shape", default=None, help="Output grid shape, n integers.")
@_common_options
@_guard
def extend_cmd(data, alpha, n, y, origin, spacing, shape, config_path, output,
               fmt, workers):
    """Evaluate the extension u on a grid at one height."""
    s = _settings("extend", config_path,
                  {"data": data, "alpha": alpha, "n": n, "y": y,
                   "origin": origin, "spacing": spacing, "shape": shape,
                   "format": fmt, "output": output, "workers": workers})
    bdata, p = _load_data(s)
    grid = Grid(origin=_floats(s["origin"], "origin"),
                spacing=float(s["spacing"]),
                shape=_ints(s["shape"], "shape"))
    height = float(s["y"])
    result = extend_grid(bdata, p, height, grid)
    est = result.quadrature_error_estimate
    rows = []
    for idx in np.ndindex(grid.shape):
        point = tuple(grid.origin[a] + grid.spacing * idx[a] for a in range(p.n))
        rows.append(point + (height, float(result.values[idx]), est))
    _emit(s,
          {"alpha": p.alpha, "n": p.n, "y": height,
           "origin": list(grid.origin), "spacing": grid.spacing,
           "shape": list(grid.shape),
           "values": [float(v) for v in result.values.reshape(-1)],
           "quadrature_error_estimate": est,
           "notes": list(result.notes)},
          tuple("x%d" % (i + 1) for i in range(p.n)) + ("y", "u", "err_estimate"),
          rows)


# --------------------------------------------------------------- converge


@main.command("converge")
@click.option("--data", default=None, help="Boundary-data JSON file.")
@click.option("--alpha", type=float, default=None,
              help="Optional; must match the data file.")
@click.option("--n", type=int, default=None,
              help="Optional; must match the data file.")
@click.option("--y-list", "y_list", default=None,
              help="Strictly decreasing heights, comma-separated.")
@_common_options
@_guard
def converge_cmd(data, alpha, n, y_list, config_path, output, fmt, workers):
    """Weighted-L1 distance of the extension to its boundary data."""
    s = _settings("converge", config_path,
                  {"data": data, "alpha": alpha, "n": n, "y_list": y_list,
                   "format": fmt, "output": output, "workers": workers})
    bdata, p = _load_data(s)
    ys = _floats(s["y_list"], "y-list")
    errors = boundary_convergence(bdata, p, list(ys))
    _emit(s,
          {"alpha": p.alpha, "n": p.n,
           "rows": [{"y": h, "error": e} for h, e in zip(ys, errors)],
           "decreasing": bool(all(b < a for a, b in zip(errors, errors[1:])))},
          ("y", "error"),
          list(zip(ys, errors)))


# ---------------------------------------------------------------- hitting


@main.group("hitting")
def hitting_group():
    """Two-level hitting density and its semigroup identity."""


@hitting_group.command("kernel")
@click.option("--alpha", type=float, default=None, help="Weight exponent, > -1.")
@click.option("--n", type=int, default=None, help="Boundary dimension.")
@click.option("--y", type=float, default=None, help="Start level.")
@click.option("--eta", type=float, default=None, help="Absorbing level, 0 < eta < y.")
@click.option("--r", default=None, help="Radii |x| >= 0, comma-separated.")
@_common_options
@_guard
def hitting_kernel_cmd(alpha, n, y, eta, r, config_path, output, fmt, workers):
    s = _settings("hitting kernel", config_path,
                  {"alpha": alpha, "n": n, "y": y, "eta": eta, "r": r,
                   "format": fmt, "output": output, "workers": workers})
    p = _params(s)
    lv = LevelPair(y=float(s["y"]), eta=float(s["eta"]))
    rows = [(radius, hitting_kernel(p, lv, radius))
            for radius in _floats(s["r"], "r")]
    _emit(s,
          {"alpha": p.alpha, "n": p.n, "y": lv.y, "eta": lv.eta,
           "rows": [{"r": a, "G": b} for a, b in rows]},
          ("r", "G"),
          rows)


@hitting_group.command("semigroup")
@click.option("--alpha", type=float, default=None, help="Weight exponent, > -1.")
@click.option("--n", type=int, default=None, help="Boundary dimension.")
@click.option("--y", type=float, default=None, help="Top level.")
@click.option("--eta2", type=float, default=None, help="Middle level.")
@click.option("--eta1", type=float, default=None, help="Bottom level.")
@click.option("--origin", default=None, help="Check-grid origin, n values.")
@click.option("--spacing", type=float, default=None, help="Check-grid spacing.")
@click.option("--shape", default=None, help="Check-grid shape, n integers.")
@click.option("--tol", type=float, default=None, help="Pass threshold on the deviation.")
@_common_options
@_guard
def hitting_semigroup(alpha, n, y, eta2, eta1, origin, spacing, shape, tol,
                      config_path, output, fmt, workers):
    s = _settings("hitting semigroup", config_path,
                  {"alpha": alpha, "n": n, "y": y, "eta2": eta2, "eta1": eta1,
                   "origin": origin, "spacing": spacing, "shape": shape,
                   "tol": tol, "format": fmt, "output": output,
                   "workers": workers})
    p = _params(s)
    grid = Grid(origin=_floats(s["origin"], "origin"),
                spacing=float(s["spacing"]),
                shape=_ints(s["shape"], "shape"))
    deviation = semigroup_check(p, float(s["y"]), float(s["eta2"]),
                                float(s["eta1"]), grid)
    _emit_report(s, {
        "alpha": p.alpha, "n": p.n, "y": float(s["y"]),
        "eta2": float(s["eta2"]), "eta1": float(s["eta1"]),
        "deviation": deviation, "tolerance": float(s["tol"]),
        "passed": bool(deviation <= float(s["tol"])),
    })


# --------------------------------------------------------------- simulate


@main.group("simulate")
def simulate_group():
    """Monte Carlo sampling of the stopped diffusion, with KS reports."""


def _dump_samples(path, run):
    n = run.samples.shape[1]
    header = ("stop_time",) + tuple("x%d" % (i + 1) for i in range(n))
    rows = [(float(t),) + tuple(float(v) for v in x)
            for t, x in zip(run.stop_times, run.samples)]
    with open(path, "w") as fh:
        fh.write(csv_document(header, rows))


@simulate_group.command("boundary")
@click.option("--alpha", type=float, default=None, help="Weight exponent, > -1.")
@click.option("--n", type=int, default=None, help="Boundary dimension (KS report needs 1).")
@click.option("--y", type=float, default=None, help="Start height.")
@click.option("--paths", type=int, default=None, help="Number of paths.")
@click.option("--dt", type=float, default=None, help="Time step, <= 1e-2.")
@click.option("--floor", type=float, default=None,
              help="Stopping floor standing in for the boundary (default 1e-4*y).")
@click.option("--seed", type=int, default=None, help="Master seed (GASP_SEED, then 0).")
@click.option("--samples", "samples_path", type=click.Path(dir_okay=False),
              default=None, help="Also dump the per-path samples to this CSV.")
@_common_options
@_guard
def simulate_boundary(alpha, n, y, paths, dt, floor, seed, samples_path,
                      config_path, output, fmt, workers):
    """Run to the boundary and KS-test X against the kernel law."""
    s = _settings("simulate boundary", config_path,
                  {"alpha": alpha, "n": n, "y": y, "paths": paths, "dt": dt,
                   "floor": floor, "seed": seed, "samples": samples_path,
                   "format": fmt, "output": output, "workers": workers})
    p = _params(s)
    cfg = SimConfig(p=p, start=HalfSpacePoint(x=(0.0,) * p.n, y=float(s["y"])),
                    dt=float(s["dt"]), y_stop=0.0, n_paths=int(s["paths"]),
                    master_seed=_seed(s),
                    y_floor=None if s["floor"] is None else float(s["floor"]))
    run = simulate_paths(cfg, workers=s["workers"])
    if s["samples"] is not None:
        _dump_samples(s["samples"], run)
    report = validate_boundary_law(cfg, workers=s["workers"], samples=run)
    _emit_report(s, report)


@simulate_group.command("hitting")
@click.option("--alpha", type=float, default=None, help="Weight exponent, > -1.")
@click.option("--n", type=int, default=None, help="Boundary dimension (KS report needs 1).")
@click.option("--y", type=float, default=None, help="Start level.")
@click.option("--eta", type=float, default=None, help="Absorbing level, 0 < eta < y.")
@click.option("--paths", type=int, default=None, help="Number of paths.")
@click.option("--dt", type=float, default=None, help="Time step, <= 1e-2.")
@click.option("--seed", type=int, default=None, help="Master seed (GASP_SEED, then 0).")
@click.option("--samples", "samples_path", type=click.Path(dir_okay=False),
              default=None, help="Also dump the per-path samples to this CSV.")
@_common_options
@_guard
def simulate_hitting(alpha, n, y, eta, paths, dt, seed, samples_path,
                     config_path, output, fmt, workers):
    """Run to a positive level and KS-test X against the hitting law."""
    s = _settings("simulate hitting", config_path,
                  {"alpha": alpha, "n": n, "y": y, "eta": eta,
                   "paths": paths, "dt": dt, "seed": seed,
                   "samples": samples_path, "format": fmt, "output": output,
                   "workers": workers})
    p = _params(s)
    lv = LevelPair(y=float(s["y"]), eta=float(s["eta"]))
    cfg = SimConfig(p=p, start=HalfSpacePoint(x=(0.0,) * p.n, y=lv.y),
                    dt=float(s["dt"]), y_stop=lv.eta, n_paths=int(s["paths"]),
                    master_seed=_seed(s))
    run = simulate_paths(cfg, workers=s["workers"])
    if s["samples"] is not None:
        _dump_samples(s["samples"], run)
    report = validate_hitting_law(cfg, lv, samples=run)
    _emit_report(s, report)


# ----------------------------------------------------------------- growth


@main.group("growth")
def growth_group():
    """Hemisphere growth scans and the sharpness construction."""


@growth_group.command("scan")
@click.option("--data", default=None, help="Boundary-data JSON file (beta = 0 terms).")
@click.option("--alpha", type=float, default=None,
              help="Optional; must match the data file.")
@click.option("--n", type=int, default=None,
              help="Optional; must match the data file.")
@click.option("--r", default=None, help="Radii, comma-separated, increasing.")
@click.option("--theta-count", "theta_count", type=int, default=None,
              help="Angular resolution of the scan.")
@_common_options
@_guard
def growth_scan(data, alpha, n, r, theta_count, config_path, output, fmt, workers):
    s = _settings("growth scan", config_path,
                  {"data": data, "alpha": alpha, "n": n, "r": r,
                   "theta_count": theta_count, "format": fmt,
                   "output": output, "workers": workers})
    bdata, p = _load_data(s)
    scan = l1_data_scan(bdata, p, _floats(s["r"], "r"),
                        theta_count=int(s["theta_count"]))
    rows = [(rv, float(th), float(m)) for rv, th, m in
            zip(scan.r_values, scan.argmax_theta, scan.sup_values)]
    sup = scan.sup_values
    _emit(s,
          {"alpha": p.alpha, "n": p.n, "theta_count": scan.theta_count,
           "rows": [{"r": a, "theta_argmax": b, "M": c} for a, b, c in rows],
           "monotone_decreasing": bool(all(sup[1:] < sup[:-1]))},
          ("r", "theta_argmax", "M"),
          rows)


@growth_group.command("counterexample")
@click.option("--alpha", type=float, default=None, help="Weight exponent, > -1.")
@click.option("--n", type=int, default=None, help="Boundary dimension.")
@click.option("--case", type=click.Choice(("subcritical", "critical")),
              default=None, help="Exponent regime of the construction.")
@click.option("--beta", type=float, default=None,
              help="Radial exponent (subcritical only; implied on the critical line).")
@click.option("--gamma", type=float, default=None, help="Height exponent.")
@click.option("--k-max", "k_max", type=int, default=None, help="Bumps to track.")
@_common_options
@_guard
def growth_counterexample(alpha, n, case, beta, gamma, k_max, config_path,
                          output, fmt, workers):
    """Track the sharpness-construction ratios along the bump centres."""
    s = _settings("growth counterexample", config_path,
                  {"alpha": alpha, "n": n, "case": case, "beta": beta,
                   "gamma": gamma, "k_max": k_max, "format": fmt,
                   "output": output, "workers": workers})
    p = _params(s)
    if s["case"] == "subcritical":
        case_obj = SubcriticalCase(beta=float(s["beta"]), gamma=float(s["gamma"]))
    else:
        case_obj = CriticalCase(gamma=float(s["gamma"]))
    track = counterexample_track(p, case_obj, int(s["k_max"]))
    beta_eff, gamma_eff = case_exponents(p, case_obj)[:2]
    floor = u_tilde(p)
    tail = [ratio for k, ratio in track if k >= 4]
    _emit(s,
          {"alpha": p.alpha, "n": p.n, "case": s["case"],
           "beta": beta_eff, "gamma": gamma_eff, "k_max": int(s["k_max"]),
           "u_tilde": floor, "threshold": 0.5 * floor,
           "rows": [{"k": k, "ratio": ratio} for k, ratio in track],
           "passed": bool(all(v >= 0.5 * floor for v in tail)) if tail else None},
          ("k", "ratio"),
          track)


if __name__ == "__main__":
    main()
