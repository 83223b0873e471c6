"""The weighted Poisson kernel K_{alpha,y} and the operator residual.

K_{alpha,y}(x) = c_norm * y^(alpha+1) / (|x|^2 + y^2)^((alpha+n+1)/2)

with c_norm = Gamma((alpha+n+1)/2) / (Gamma((alpha+1)/2) pi^(n/2)). The
kernel has unit mass on R^n for every y > 0 and solves D_alpha u = 0 on the
upper half-space, where

    D_alpha u = y^(-alpha) (Laplacian_x u + u_yy - (alpha/y) u_y).

This module keeps everything pointwise-exact: closed-form evaluation, the
exact recurrence for spatial derivatives, a one-dimensional quadrature for
the mass (the substitution r = y tan(u) maps the radial integral onto a
finite interval), and a finite-difference residual for plugging arbitrary
evaluators into D_alpha.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._quadrature import tanh_sinh
from .special_functions import EvalAccuracy, gamma_fn

__all__ = [
    "ModelParams", "HalfSpacePoint", "MultiIndex", "unit_sphere_area",
    "poisson_kernel", "kernel_profile", "kernel_mass", "kernel_derivative",
    "dalpha_residual",
]


@dataclass(frozen=True)
class ModelParams:
    """Weight exponent, boundary dimension, and the derived constants.

    alpha > -1 is required: below that threshold the only admissible
    solution is identically zero and none of the kernel formulas apply.
    """

    alpha: float
    n: int
    c_norm: float = field(init=False)  # kernel normalization
    nu: float = field(init=False)  # Bessel order (alpha + 1) / 2
    mu: float = field(init=False)  # weight and growth exponent alpha + n + 1

    def __post_init__(self):
        alpha = float(self.alpha)
        n = int(self.n)
        if not (alpha > -1.0 and math.isfinite(alpha)):
            raise ValueError(
                "alpha must be a finite number > -1, got %r" % (self.alpha,))
        if n < 1:
            raise ValueError("n must be a positive integer, got %r" % (self.n,))
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "n", n)
        c = gamma_fn(0.5 * (alpha + n + 1.0)) \
            / (gamma_fn(0.5 * (alpha + 1.0)) * math.pi ** (0.5 * n))
        object.__setattr__(self, "c_norm", c)
        object.__setattr__(self, "nu", 0.5 * (alpha + 1.0))
        object.__setattr__(self, "mu", alpha + n + 1.0)


@dataclass(frozen=True)
class HalfSpacePoint:
    """A point (x, y) with x in R^n and y > 0."""

    x: tuple
    y: float

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.x, dtype=float))
        y = float(self.y)
        if x.ndim != 1 or not np.all(np.isfinite(x)):
            raise ValueError("x must be a finite vector")
        if not (y > 0.0 and math.isfinite(y)):
            raise ValueError("y must be finite and > 0, got %r" % (self.y,))
        object.__setattr__(self, "x", tuple(float(v) for v in x))
        object.__setattr__(self, "y", y)

    @property
    def n(self):
        return len(self.x)


@dataclass(frozen=True)
class MultiIndex:
    """Spatial derivative multi-index; total order capped at 4."""

    components: tuple

    def __post_init__(self):
        comps = tuple(int(c) for c in np.atleast_1d(self.components))
        if any(c < 0 for c in comps):
            raise ValueError("multi-index components must be >= 0")
        if sum(comps) > 4:
            raise ValueError(
                "derivative order %d unsupported (max 4)" % sum(comps))
        object.__setattr__(self, "components", comps)

    @property
    def order(self):
        return sum(self.components)


def unit_sphere_area(n):
    """Surface area of the unit sphere in R^n: 2 pi^(n/2) / Gamma(n/2).

    For n = 1 this is 2 (the two endpoints of the "sphere" in R^1), which is
    exactly the factor turning a radial integral into one over the line.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    return 2.0 * math.pi ** (0.5 * n) / gamma_fn(0.5 * n)


def _check_point(p, pt):
    if pt.n != p.n:
        raise ValueError("point has dimension %d, params say %d"
                         % (pt.n, p.n))


def kernel_profile(p, r, y):
    """K_{alpha,y} as a function of the radius r = |x|; vectorized in r."""
    y = float(y)
    if not (y > 0.0 and math.isfinite(y)):
        raise ValueError("y must be finite and > 0, got %r" % (y,))
    r = np.asarray(r, dtype=float)
    s = 0.5 * (p.alpha + p.n + 1.0)
    return p.c_norm * y ** (p.alpha + 1.0) * (r * r + y * y) ** (-s)


def poisson_kernel(p, pt):
    """K_{alpha,y}(x) at a single half-space point."""
    _check_point(p, pt)
    r2 = sum(v * v for v in pt.x)
    s = 0.5 * (p.alpha + p.n + 1.0)
    return p.c_norm * pt.y ** (p.alpha + 1.0) * (r2 + pt.y * pt.y) ** (-s)


def kernel_mass(p, y, acc=EvalAccuracy()):
    """Quadrature of K_{alpha,y} over R^n (exactly 1 for every y).

    r = y tan(u) reduces the radial integral to
        omega_{n-1} c_norm Int_0^{pi/2} sin(u)^{n-1} cos(u)^alpha du,
    independent of y because the kernel family is scale invariant. For
    alpha in (-1, 0) the cos^alpha factor is an integrable endpoint
    singularity too strong near alpha = -1 for the quadrature alone, so
    the last eps of the interval is integrated analytically from the
    series sin(s)^alpha cos(s)^(n-1) = s^alpha (1 - c2 s^2 + O(s^4)),
    written in s = pi/2 - u.
    """
    _ = float(y)  # participates only through the (exact) substitution
    if not (_ > 0.0):
        raise ValueError("y must be > 0, got %r" % (y,))
    nm1 = p.n - 1
    alpha = p.alpha
    eps = 1e-6

    def f(u, da, db):
        s = db + eps  # true distance to pi/2, free of cancellation
        return np.cos(s) ** nm1 * np.sin(s) ** alpha

    value, _err = tanh_sinh(f, 0.0, 0.5 * math.pi - eps,
                            rel_tol=0.1 * acc.rel_tol,
                            with_distances=True)
    c2 = alpha / 6.0 + 0.5 * nm1
    tail = (eps ** (alpha + 1.0) / (alpha + 1.0)
            - c2 * eps ** (alpha + 3.0) / (alpha + 3.0))
    return unit_sphere_area(p.n) * p.c_norm * (value + tail)


@lru_cache(maxsize=None)
def _derivative_terms(n, s0, components):
    """Term table for (d/dx)^beta of (|x|^2 + y^2)^(-s0).

    Maps (expo, k) -> coef, representing coef * x^expo * S^(-(s0+k)) with
    S = |x|^2 + y^2. Differentiating maps a term to at most two others, so
    the closed form stays exact for any order.
    """
    zero = (0,) * n
    terms = {(zero, 0): 1.0}
    for axis, reps in enumerate(components):
        for _ in range(reps):
            new = {}
            for (expo, k), coef in terms.items():
                if expo[axis] > 0:
                    e = list(expo)
                    e[axis] -= 1
                    key = (tuple(e), k)
                    new[key] = new.get(key, 0.0) + coef * expo[axis]
                e = list(expo)
                e[axis] += 1
                key = (tuple(e), k + 1)
                new[key] = new.get(key, 0.0) - 2.0 * (s0 + k) * coef
            terms = new
    return terms


def kernel_derivative(p, beta, pt):
    """Exact spatial derivative (d/dx)^beta K_{alpha,y}(x).

    The public contract caps |beta| at 4 (enforced by MultiIndex).
    """
    _check_point(p, pt)
    if not isinstance(beta, MultiIndex):
        beta = MultiIndex(tuple(beta))
    if len(beta.components) != p.n:
        raise ValueError("multi-index has length %d, expected %d"
                         % (len(beta.components), p.n))
    if beta.order == 0:
        return poisson_kernel(p, pt)
    s0 = 0.5 * (p.alpha + p.n + 1.0)
    terms = _derivative_terms(p.n, s0, beta.components)
    x = np.asarray(pt.x)
    big_s = float(np.dot(x, x)) + pt.y * pt.y
    total = 0.0
    for (expo, k), coef in terms.items():
        mono = 1.0
        for xi, e in zip(x, expo):
            if e:
                mono *= xi ** e
        total += coef * mono * big_s ** (-(s0 + k))
    return p.c_norm * pt.y ** (p.alpha + 1.0) * total


def dalpha_residual(u, p, pt, h=None):
    """Central-difference evaluation of D_alpha u at pt.

    Second-order accurate: for exact solutions the result decays like h^2.
    The default step y/100 keeps the stencil far inside the half-space; any
    h must stay below y/4 so the y-stencil cannot cross the boundary.
    """
    _check_point(p, pt)
    y = pt.y
    if h is None:
        h = y / 100.0
    h = float(h)
    if not (0.0 < h < y / 4.0):
        raise ValueError("need 0 < h < y/4 = %g to keep the stencil in the "
                         "half-space, got h = %g" % (y / 4.0, h))
    x = np.asarray(pt.x)
    center = u(HalfSpacePoint(tuple(x), y))
    lap = 0.0
    for i in range(p.n):
        step = np.zeros(p.n)
        step[i] = h
        up = u(HalfSpacePoint(tuple(x + step), y))
        dn = u(HalfSpacePoint(tuple(x - step), y))
        lap += (up - 2.0 * center + dn) / (h * h)
    y_up = u(HalfSpacePoint(tuple(x), y + h))
    y_dn = u(HalfSpacePoint(tuple(x), y - h))
    u_yy = (y_up - 2.0 * center + y_dn) / (h * h)
    u_y = (y_up - y_dn) / (2.0 * h)
    return y ** (-p.alpha) * (lap + u_yy - (p.alpha / y) * u_y)
