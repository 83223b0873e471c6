"""Hemisphere sup-scans for the o(r^{alpha+1}) growth order, and the
log-space bump-track ratios showing the exponents are sharp.

A scan samples a solution u on the upper half-sphere of radius r at angles
theta from the vertical axis (y = r cos theta, |x| = r sin theta), records

    M(r) = max_theta |u| * cos(theta)^{n+m} / r^{alpha+1},

and the growth statement is that M(r) -> 0 for extensions of weighted-L^1
data.  The counterexample track computes, for the sparse-bump data of
``sharpness_data``, a lower bound for the same scaled quantity along the
bump centres; it stays bounded away from zero, so the cosine power and the
r exponent cannot be improved.  Heights grow like e^{k(alpha+n+1)}, so the
track works entirely in logs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._quadrature import tanh_sinh
from .boundary_data import BoundaryData, case_exponents
from .extension import extend_point
from .kernel import HalfSpacePoint, ModelParams, unit_sphere_area
from .special_functions import EvalAccuracy

_MAX_TRACK = 64  # log-space track: no materialized heights, so well past 12


@dataclass(frozen=True, eq=False)
class GrowthScan:
    """Per-radius hemisphere sup records."""

    r_values: tuple
    theta_count: int
    m: int
    sup_values: np.ndarray
    argmax_theta: np.ndarray

    def __post_init__(self):
        if not (len(self.r_values) == self.sup_values.size == self.argmax_theta.size):
            raise ValueError("record arrays must match r_values")
        self.sup_values.setflags(write=False)
        self.argmax_theta.setflags(write=False)


def _theta_grid(theta_count):
    # stop short of pi/2, where the cosine factor kills every evaluator
    return np.linspace(0.0, 0.5 * math.pi - math.pi / (4 * theta_count), theta_count)


def sphere_sup_scan(u, p: ModelParams, m, r_values, theta_count=64) -> GrowthScan:
    """Scan |u| cos^{n+m}(theta) / r^{alpha+1} over upper half-spheres.

    Parameters
    ----------
    u : callable
        Evaluator ``u(x, y) -> float`` with x an n-vector; called on every
        scan point.  For n >= 2 the scan fixes the direction x/|x| = e1,
        which loses nothing for data concentrated on that axis.
    p : ModelParams
    m : int
        Extra cosine power on top of the baseline n.
    r_values : increasing positive radii
    theta_count : int >= 16

    Returns
    -------
    GrowthScan
    """
    if not (isinstance(m, int) and m >= 0):
        raise ValueError(f"m must be a nonnegative integer, got {m!r}")
    if not (isinstance(theta_count, int) and theta_count >= 16):
        raise ValueError(f"theta_count must be an integer >= 16, got {theta_count!r}")
    rs = np.asarray(r_values, dtype=float)
    if rs.ndim != 1 or rs.size == 0 or not np.all(np.isfinite(rs)):
        raise ValueError("r_values must be a nonempty finite 1-D sequence")
    if rs[0] <= 0.0 or np.any(np.diff(rs) <= 0.0):
        raise ValueError("r_values must be positive and strictly increasing")

    thetas = _theta_grid(theta_count)
    cos_pow = np.cos(thetas) ** (p.n + m)
    sup_vals = np.empty(rs.size)
    arg_theta = np.empty(rs.size)
    for i, r in enumerate(rs):
        vals = np.empty(theta_count)
        for j, th in enumerate(thetas):
            x = np.zeros(p.n)
            x[0] = r * math.sin(th)
            vals[j] = abs(u(x, r * math.cos(th))) * cos_pow[j]
        k = int(np.argmax(vals))
        sup_vals[i] = vals[k] / r ** (p.alpha + 1.0)
        arg_theta[i] = thetas[k]
    return GrowthScan(
        r_values=tuple(float(r) for r in rs),
        theta_count=theta_count,
        m=m,
        sup_values=sup_vals,
        argmax_theta=arg_theta,
    )


def l1_data_scan(data: BoundaryData, p: ModelParams, r_values,
                 theta_count=64) -> GrowthScan:
    """Hemisphere scan (m = 0) of the extension of function-type data."""
    if any(term.beta.order > 0 for term in data.terms):
        raise ValueError("scan needs function-type data (all beta = 0)")

    def u(x, y):
        return extend_point(data, p, HalfSpacePoint(x=tuple(x), y=y))

    return sphere_sup_scan(u, p, 0, r_values, theta_count)


def far_field_integral(p: ModelParams, data: BoundaryData, r):
    """I(r) = int |f(eta)| (|eta|^2 + r^2)^{-(alpha+n+1)/2} d eta.

    The far-field envelope of the extension: for scan radii beyond twice
    the data support, M(r) <= c_norm * 8^{mu/2} * I(r), and I(r) -> 0.
    Trapezoid over each term grid, like the weighted norms.
    """
    from .boundary_data import _grid_radius_sq, _trapezoid_apply

    r = float(r)
    if not (r > 0.0 and math.isfinite(r)):
        raise ValueError(f"r must be positive and finite, got {r}")
    if any(term.beta.order > 0 for term in data.terms):
        raise ValueError("far-field integral applies to function-type data")
    total = 0.0
    for term in data.terms:
        kern = (_grid_radius_sq(term.grid) + r * r) ** (-0.5 * p.mu)
        integ = _trapezoid_apply(np.abs(term.values_grid) * kern, term.grid)
        total += float(np.sum(integ)) * term.grid.spacing**term.n
    return total


def u_tilde(p: ModelParams, acc=EvalAccuracy()):
    """The unit-tent extension value at (0, 1): int K_{alpha,1}(eta)(1-|eta|)+ deta.

    Strictly positive; this is the constant that keeps the counterexample
    ratios away from zero.  At alpha = 0, n = 1 it equals (pi/2 - ln 2)/pi.
    """
    val, _ = tanh_sinh(
        lambda t: (1.0 + t * t) ** (-0.5 * p.mu) * (1.0 - t) * t ** (p.n - 1),
        0.0,
        1.0,
        rel_tol=acc.rel_tol,
    )
    return unit_sphere_area(p.n) * p.c_norm * val


def counterexample_track(p: ModelParams, case, k_max, acc=EvalAccuracy()):
    """Lower bounds for the scaled growth quantity along the bump centres.

    For the sparse-bump data of ``sharpness_data``, evaluates at the k-th
    centre (a_k e1, rho_k) the single-bump lower bound of

        rho_k^gamma * u(a_k e1, rho_k) / (a_k^2 + rho_k^2)^{(beta+gamma)/2}.

    Dropping the other bumps is legitimate because the kernel is positive,
    and the kept bump contributes exactly f_k * u_tilde by scale invariance
    of the kernel.  Everything is assembled in logs: the heights e^{k mu}
    overflow doubles from k = 10 or so.

    Returns
    -------
    list of (k, ratio) pairs, k = 1..k_max.  A ratio past the double range
    comes back as math.inf.
    """
    if not (1 <= int(k_max) <= _MAX_TRACK):
        raise ValueError(f"k_max must be between 1 and {_MAX_TRACK}")
    beta, gamma, rho_exp, height_extra = case_exponents(p, case)
    log_ut = math.log(u_tilde(p, acc))
    out = []
    for k in range(1, int(k_max) + 1):
        log_rho = -rho_exp * math.log(k)
        log_height = k * p.mu + height_extra * math.log(k)
        log_r_sq = 2.0 * k + math.log1p(math.exp(2.0 * (log_rho - k)))
        log_ratio = (
            gamma * log_rho
            + log_height
            + log_ut
            - 0.5 * (beta + gamma) * log_r_sq
        )
        out.append((k, math.exp(log_ratio) if log_ratio <= 709.0 else math.inf))
    return out
