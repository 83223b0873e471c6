"""Monte Carlo simulation of the half-space diffusion driven by the
weighted operator.

The planar process is dX = Y dW (n independent coordinates) and
dY = Y dB - (mu - 1/2) Y dt with drift mu = (alpha+1)/2 > 0, so Y drifts
to the boundary.  The log of Y is exact geometric motion,

    log Y_{k+1} = log Y_k + dB_k - mu dt,

which is simulated without any discretization bias; only the X coordinate
uses an Euler step (a centered Gaussian with per-coordinate variance
Y_k^2 dt).  Paths stop on first contact with a level: ``y_stop`` itself in
level mode, or a small floor ``y_floor`` standing in for the boundary in
boundary-limit mode.  The stopped X samples are the Monte Carlo oracle for
the boundary kernel and the hitting density.

Every path owns a counter-based RNG stream keyed by (master_seed,
path_index), so results are bit-identical however the paths are split
across workers, as long as they are reassembled in path order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from ._quadrature import panel_integrate, tanh_sinh
from .hitting import LevelPair, hitting_kernel
from .kernel import HalfSpacePoint, ModelParams
from .special_functions import EvalAccuracy

_CHUNK = 4096  # steps drawn per RNG call once past the sized first block


@dataclass(frozen=True)
class SimConfig:
    """Simulation setup.

    ``y_stop > 0`` selects level mode (absorb at that height); ``y_stop = 0``
    selects boundary-limit mode, where paths stop at ``y_floor`` instead
    (default ``1e-4 * start.y``) because the boundary itself is reached only
    in the limit.
    """

    p: ModelParams
    start: HalfSpacePoint
    dt: float
    y_stop: float
    n_paths: int
    master_seed: int
    y_floor: float = None

    def __post_init__(self):
        if self.p.n != self.start.n:
            raise ValueError(
                f"start point is {self.start.n}-dimensional, expected n={self.p.n}"
            )
        if not (0.0 < self.dt <= 1e-2):
            raise ValueError(f"dt must be in (0, 1e-2], got {self.dt}")
        if not (isinstance(self.n_paths, int) and self.n_paths >= 1):
            raise ValueError(f"n_paths must be a positive integer, got {self.n_paths}")
        if not (isinstance(self.master_seed, int) and 0 <= self.master_seed < 2**64):
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        if not (math.isfinite(self.y_stop) and self.y_stop >= 0.0):
            raise ValueError(f"y_stop must be finite and >= 0, got {self.y_stop}")
        if self.y_stop > 0.0:
            if self.y_floor is not None:
                raise ValueError("y_floor applies to boundary mode only (y_stop = 0)")
            if self.y_stop >= self.start.y:
                raise ValueError("level mode needs y_stop < start.y")
        else:
            floor = 1e-4 * self.start.y if self.y_floor is None else float(self.y_floor)
            if not (0.0 < floor <= self.start.y / 100.0):
                raise ValueError(
                    f"y_floor must lie in (0, start.y/100], got {floor}"
                )
            object.__setattr__(self, "y_floor", floor)

    @property
    def boundary_mode(self):
        return self.y_stop == 0.0

    @property
    def stop_level(self):
        return self.y_floor if self.boundary_mode else self.y_stop

    @property
    def mu(self):
        """Drift of -log Y; equals (alpha+1)/2."""
        return self.p.nu


@dataclass(frozen=True, eq=False)
class HitSampleSet:
    """Stopped samples: X positions, stop times, and stream bookkeeping.

    ``seed_provenance`` is (master_seed, stream_ids); stream id i fed path i.
    """

    samples: np.ndarray
    stop_times: np.ndarray
    seed_provenance: tuple

    def __post_init__(self):
        for arr in (self.samples, self.stop_times):
            arr.setflags(write=False)

    @property
    def n_paths(self):
        return self.samples.shape[0]


def _path_rng(master_seed, path_index):
    return np.random.Generator(np.random.Philox(key=[master_seed, path_index]))


def _walk_one(rng, n, log_start, log_stop, mu, dt, first_chunk):
    """Run one path to absorption; returns (x_vector, stop_time).

    Draws (chunk, 1+n) normals at a time: column 0 drives log Y, the rest
    drive X.  The normal stream is invariant under chunk boundaries, so the
    chunk sizes are a pure performance knob.
    """
    sqrt_dt = math.sqrt(dt)
    drift = mu * dt
    x = np.zeros(n)
    log_y = log_start
    steps_done = 0
    chunk = first_chunk
    while True:
        z = rng.standard_normal((chunk, 1 + n))
        logs = log_y + np.cumsum(z[:, 0] * sqrt_dt - drift)
        starts = np.empty(chunk)
        starts[0] = log_y
        starts[1:] = logs[:-1]
        hit = logs <= log_stop
        if not hit.any():
            x += sqrt_dt * (np.exp(starts)[:, None] * z[:, 1:]).sum(axis=0)
            log_y = logs[-1]
            steps_done += chunk
            chunk = _CHUNK
            continue
        k = int(np.argmax(hit))
        y_starts = np.exp(starts[: k + 1])
        x += sqrt_dt * (y_starts[:k, None] * z[:k, 1:]).sum(axis=0)
        # crossing fraction from the exact log-linear bridge of the step
        theta = (starts[k] - log_stop) / (starts[k] - logs[k])
        x += theta * sqrt_dt * y_starts[k] * z[k, 1:]
        return x, (steps_done + k + theta) * dt


def _first_chunk(cfg):
    # size the first draw to the expected step count so short walks do not
    # pay for a full 4096-step block
    expected = math.log(cfg.start.y / cfg.stop_level) / (cfg.mu * cfg.dt)
    return int(min(max(64, 1.25 * expected + 64), 2 * _CHUNK))


def simulate_paths(cfg: SimConfig, path_range=None, workers=1) -> HitSampleSet:
    """Simulate all paths of ``cfg`` (or a contiguous subrange).

    ``path_range = (lo, hi)`` runs streams lo..hi-1 only; concatenating
    subrange results in path order reproduces the full run bit-exactly,
    which is what makes worker splits harmless.  ``workers > 1`` does that
    split internally on a thread pool and reassembles in path order, so the
    setting caps parallelism without touching a single sample.
    """
    lo, hi = (0, cfg.n_paths) if path_range is None else path_range
    if not (0 <= lo < hi <= cfg.n_paths):
        raise ValueError(f"invalid path range {(lo, hi)} for n_paths={cfg.n_paths}")
    workers = int(workers)
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if workers > 1 and hi - lo > 1:
        edges = [lo + (hi - lo) * k // workers for k in range(workers + 1)]
        ranges = [(a, b) for a, b in zip(edges[:-1], edges[1:]) if b > a]
        with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
            parts = list(pool.map(lambda rg: simulate_paths(cfg, rg), ranges))
        return HitSampleSet(
            samples=np.concatenate([part.samples for part in parts]),
            stop_times=np.concatenate([part.stop_times for part in parts]),
            seed_provenance=(cfg.master_seed, np.arange(lo, hi, dtype=np.uint64)),
        )
    n = cfg.p.n
    log_start = math.log(cfg.start.y)
    log_stop = math.log(cfg.stop_level)
    first = _first_chunk(cfg)
    count = hi - lo
    samples = np.empty((count, n))
    stop_times = np.empty(count)
    for i in range(count):
        rng = _path_rng(cfg.master_seed, lo + i)
        x, t = _walk_one(rng, n, log_start, log_stop, cfg.mu, cfg.dt, first)
        samples[i] = cfg.start.x + x
        stop_times[i] = t
    return HitSampleSet(
        samples=samples,
        stop_times=stop_times,
        seed_provenance=(cfg.master_seed, np.arange(lo, hi, dtype=np.uint64)),
    )


def y_marginal_samples(cfg: SimConfig, t_final):
    """Y at fixed time t_final (no stopping), one value per path.

    The stepped log-space update has no discretization bias, so these
    must be exactly lognormal: log Y_T ~ Normal(log y0 - mu T, T).  Streams
    are keyed like simulate_paths but consume one normal per step.
    """
    steps = int(round(t_final / cfg.dt))
    if steps < 1:
        raise ValueError("t_final must be at least one step")
    sqrt_dt = math.sqrt(cfg.dt)
    drift = cfg.mu * cfg.dt
    log_y0 = math.log(cfg.start.y)
    out = np.empty(cfg.n_paths)
    for i in range(cfg.n_paths):
        z = _path_rng(cfg.master_seed, i).standard_normal(steps)
        out[i] = log_y0 + float(np.sum(z)) * sqrt_dt - drift * steps
    return np.exp(out)


# ------------------------------------------------------------- statistics


def ks_statistic(samples, cdf):
    """Kolmogorov-Smirnov sup distance between sorted samples and a model CDF.

    ``cdf`` is called once on the whole sample array and must return values
    nondecreasing along it (checked).
    """
    xs = np.asarray(samples, dtype=float)
    if xs.ndim != 1 or xs.size == 0:
        raise ValueError("samples must be a nonempty 1-D array")
    if np.any(np.diff(xs) < 0):
        raise ValueError("samples must be sorted ascending")
    f = np.asarray(cdf(xs), dtype=float)
    if f.shape != xs.shape:
        raise ValueError("cdf evaluator must return one value per sample")
    if np.any(np.diff(f) < -1e-12) or f[0] < -1e-12 or f[-1] > 1.0 + 1e-12:
        raise ValueError("cdf values must be nondecreasing within [0, 1]")
    n = xs.size
    i = np.arange(n)
    d = max(float(np.max(f - i / n)), float(np.max((i + 1) / n - f)))
    return min(max(d, 0.0), 1.0)


def boundary_kernel_cdf(p: ModelParams, y):
    """CDF evaluator for the n=1 boundary kernel at height y.

    The substitution x = y tan(theta) turns the kernel integral into
    c_norm * cos(theta)^alpha d(theta), which is integrated cumulatively
    between the (sorted) query points; the piece from -pi/2 to the first
    point gets the endpoint-singularity-aware rule.
    """
    if p.n != 1:
        raise ValueError("closed cumulative form is one-dimensional")
    y = float(y)
    if not (y > 0.0 and math.isfinite(y)):
        raise ValueError(f"height must be positive and finite, got {y}")

    base = np.linspace(-0.5 * math.pi, 0.5 * math.pi, 513)[1:-1]

    def cdf(xs):
        theta = np.arctan(np.asarray(xs, dtype=float) / y)
        # integrate over the union of query angles and a fixed fine grid, so
        # sparse queries never produce wide panels near the +-pi/2 branch
        # points of cos^alpha
        edges = np.union1d(theta, base)
        head, _ = tanh_sinh(
            lambda t, da, db: np.sin(da) ** p.alpha,
            -0.5 * math.pi,
            float(edges[0]),
            with_distances=True,
        )
        pieces = panel_integrate(lambda t: np.cos(t) ** p.alpha, edges, order=8)
        cum = p.c_norm * (head + np.concatenate([[0.0], np.cumsum(pieces)]))
        return cum[np.searchsorted(edges, theta)]

    return cdf


def hitting_cdf(p: ModelParams, lv: LevelPair, acc=EvalAccuracy(rel_tol=1e-8)):
    """CDF evaluator for the n=1 hitting density, by quadrature.

    Builds a cumulative table of the (symmetric) density on panels out to
    60 gap lengths and fits a power tail to cover the rest; evaluation is
    linear interpolation in the table plus the analytic tail.
    """
    if p.n != 1:
        raise ValueError("hitting CDF evaluator is one-dimensional")
    g = lv.gap
    edges = np.concatenate(
        [np.linspace(0.0, 4.0 * g, 33), np.geomspace(4.0 * g, 60.0 * g, 33)[1:]]
    )
    dens = {}

    def dens_at(r):
        if r not in dens:
            dens[r] = hitting_kernel(p, lv, r, acc)
        return dens[r]

    pieces = panel_integrate(
        lambda r: np.array([dens_at(float(t)) for t in np.atleast_1d(r)]),
        edges,
        order=4,
    )
    cum = np.concatenate([[0.0], np.cumsum(pieces)])  # int_0^edge
    r_max = edges[-1]
    g_half = dens_at(r_max / 2.0)
    g_end = dens_at(r_max)
    p_exp = math.log(g_half / g_end) / math.log(2.0)
    tail_mass = g_end * r_max / (p_exp - 1.0)  # int_{r_max}^inf C r^{-p} dr

    def cdf(xs):
        xs = np.asarray(xs, dtype=float)
        r = np.abs(xs)
        inside = np.interp(r, edges, cum)
        tail = np.where(
            r <= r_max,
            0.5 - inside,
            tail_mass * (r_max / np.maximum(r, r_max)) ** (p_exp - 1.0),
        )
        return np.where(xs >= 0.0, 1.0 - tail, tail)

    return cdf


# ------------------------------------------------------------- validation


def _ks_threshold(n_paths):
    return 1.95 / math.sqrt(n_paths) + 5e-3


def validate_boundary_law(cfg: SimConfig, acc=EvalAccuracy(), workers=1,
                          samples=None):
    """KS test of the stopped X law against the boundary kernel (n = 1).

    Boundary mode only.  The allowance for stopping at y_floor instead of
    the boundary is the bounded leftover variance for mu > 1; for mu <= 1
    it is estimated by rerunning with the floor halved.  ``samples``, when
    given, must be the output of ``simulate_paths(cfg)`` and spares the
    caller a duplicate run (streams are deterministic, so reusing them is
    exact, not an approximation).
    """
    if cfg.p.n != 1:
        raise ValueError("boundary-law validation is one-dimensional")
    if not cfg.boundary_mode:
        raise ValueError("boundary-law validation needs y_stop = 0")
    result = simulate_paths(cfg, workers=workers) if samples is None else samples
    xs = np.sort(result.samples[:, 0])
    ks = ks_statistic(xs, boundary_kernel_cdf(cfg.p, cfg.start.y))

    if cfg.mu > 1.0:
        # X variance accrued below the floor, converted to a CDF shift
        # through the kernel's maximum slope
        var_rem = cfg.y_floor**2 / (2.0 * cfg.mu - 2.0)
        grid = np.linspace(-6.0 * cfg.start.y, 6.0 * cfg.start.y, 4001)
        dens = (
            cfg.p.c_norm
            * cfg.start.y ** (cfg.p.alpha + 1.0)
            / (grid**2 + cfg.start.y**2) ** (0.5 * cfg.p.mu)
        )
        slope = float(np.max(np.abs(np.gradient(dens, grid))))
        floor_allowance = 0.5 * var_rem * slope
    else:
        half = replace(cfg, y_floor=cfg.y_floor / 2.0)
        xs_half = np.sort(simulate_paths(half, workers=workers).samples[:, 0])
        ks_half = ks_statistic(xs_half, boundary_kernel_cdf(cfg.p, cfg.start.y))
        floor_allowance = abs(ks - ks_half)

    threshold = _ks_threshold(cfg.n_paths) + floor_allowance
    return {
        "law": "boundary",
        "alpha": cfg.p.alpha,
        "n": cfg.p.n,
        "y_start": cfg.start.y,
        "dt": cfg.dt,
        "y_floor": cfg.y_floor,
        "n_paths": cfg.n_paths,
        "master_seed": cfg.master_seed,
        "ks": ks,
        "floor_allowance": floor_allowance,
        "threshold": threshold,
        "passed": bool(ks <= threshold),
    }


def validate_hitting_law(cfg: SimConfig, lv: LevelPair, acc=EvalAccuracy(rel_tol=1e-8),
                         workers=1, samples=None):
    """KS test of the stopped X law against the hitting density (n = 1).

    ``samples`` reuses a precomputed ``simulate_paths(cfg)`` result.
    """
    if cfg.p.n != 1:
        raise ValueError("hitting-law validation is one-dimensional")
    if cfg.boundary_mode:
        raise ValueError("hitting-law validation needs level mode (y_stop > 0)")
    if not (lv.y == cfg.start.y and lv.eta == cfg.y_stop):
        raise ValueError(
            f"level pair {(lv.y, lv.eta)} disagrees with config "
            f"{(cfg.start.y, cfg.y_stop)}"
        )
    result = simulate_paths(cfg, workers=workers) if samples is None else samples
    xs = np.sort(result.samples[:, 0])
    ks = ks_statistic(xs, hitting_cdf(cfg.p, lv, acc))
    threshold = _ks_threshold(cfg.n_paths)
    return {
        "law": "hitting",
        "alpha": cfg.p.alpha,
        "n": cfg.p.n,
        "y_start": lv.y,
        "y_stop": lv.eta,
        "dt": cfg.dt,
        "n_paths": cfg.n_paths,
        "master_seed": cfg.master_seed,
        "ks": ks,
        "threshold": threshold,
        "passed": bool(ks <= threshold),
    }
