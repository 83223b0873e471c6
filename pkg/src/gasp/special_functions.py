"""Gamma and Bessel-family evaluation (J_nu, I_nu, K_nu).

Everything downstream (kernel transforms, hitting quotients, Hankel
inversion) reduces to these four evaluators, so their accuracy targets are
stricter than anything built on top:

* gamma_fn          Lanczos approximation, rel err ~1e-15 on (0, 50]
* bessel_j          ascending series, Hankel asymptotics past the crossover
* bessel_i          ascending series (positive terms, no cancellation)
* bessel_k          the integral representation
                        K_nu(z) = sqrt(pi) (z/2)^nu / Gamma(nu+1/2)
                                  * Int_1^inf e^{-zt} (t^2-1)^{nu-1/2} dt
                    under u = z(t-1), evaluated by double-exponential
                    quadrature on the log of the integrand. One code path
                    for every nu > 0 (integer orders included), valid over
                    z in [1e-6, 1e3] and nu in (0, 10], with the
                    exponentially scaled variant e^z K_nu(z) free of charge.
* phi_nu            the normalized profile 2^(1-nu) r^nu K_nu(r) / Gamma(nu),
                    continuous at r = 0 with phi_nu(0) = 1.

K_nu is deliberately not routed through the (I_{-nu} - I_nu)/sin(nu pi)
formula, which has removable singularities at integer nu; that route is
kept only as the independent cross-check bessel_k_via_i.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._quadrature import _de_params, _exp_sinh_xw, QuadratureError

__all__ = [
    "BesselOrder", "EvalAccuracy", "gamma_fn", "bessel_j", "bessel_i",
    "bessel_k", "bessel_k_via_i", "log_bessel_k", "phi_nu",
]


@dataclass(frozen=True)
class BesselOrder:
    """Order parameter nu >= -1/2 (the J integral representation's range)."""

    nu: float

    def __post_init__(self):
        if not math.isfinite(self.nu) or self.nu < -0.5:
            raise ValueError("Bessel order must be finite and >= -1/2, got %r"
                             % (self.nu,))

    def __float__(self):
        return float(self.nu)


@dataclass(frozen=True)
class EvalAccuracy:
    """Accuracy request: relative tolerance in (0, 1e-4], absolute >= 0."""

    rel_tol: float = 1e-10
    abs_tol: float = 0.0

    def __post_init__(self):
        if not (0.0 < self.rel_tol <= 1e-4):
            raise ValueError("rel_tol must lie in (0, 1e-4], got %r"
                             % (self.rel_tol,))
        if not (math.isfinite(self.abs_tol) and self.abs_tol >= 0.0):
            raise ValueError("abs_tol must be finite and >= 0, got %r"
                             % (self.abs_tol,))


def _order(nu):
    return float(nu) if not isinstance(nu, BesselOrder) else nu.nu


# ---------------------------------------------------------------------------
# Gamma

# Lanczos g = 7, 9 terms; the standard double-precision coefficient set.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(s):
    """Gamma function for real s > 0.

    Relative error ~1e-15 on (0, 50]. Raises ValueError outside the domain.
    """
    s = float(s)
    if not math.isfinite(s) or s <= 0.0:
        raise ValueError("gamma_fn requires finite s > 0, got %r" % (s,))
    if s < 0.5:
        # reflection keeps the Lanczos sum in its accurate half-plane
        return math.pi / (math.sin(math.pi * s) * gamma_fn(1.0 - s))
    z = s - 1.0
    acc = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc


def _lgamma_pos(s):
    """log Gamma(s) for s > 0 through the same Lanczos data."""
    s = float(s)
    if s >= 10.0:
        z = s - 1.0
        acc = _LANCZOS[0]
        for i, c in enumerate(_LANCZOS[1:], start=1):
            acc += c / (z + i)
        t = z + _LANCZOS_G + 0.5
        return 0.5 * math.log(2.0 * math.pi) + (z + 0.5) * math.log(t) - t \
            + math.log(acc)
    return math.log(gamma_fn(s))


# ---------------------------------------------------------------------------
# J_nu

# Series/asymptotic crossover. The ascending series is alternating; past
# z ~ 14 it cancels away more digits than the 1e-10 contract allows, while
# the Hankel expansion's optimal-truncation error e^{-2z} is already below
# 1e-12 there. Small orders never push the crossover higher.
_J_SERIES_CAP = 14.0


def _bessel_j_series(nu, z):
    z = np.asarray(z, dtype=float)
    half = 0.5 * z
    with np.errstate(divide="ignore", invalid="ignore"):
        pref = half ** nu * math.exp(-_lgamma_pos(nu + 1.0))
        term = pref.copy()
        out = pref.copy()
        zz = half * half
        for m in range(1, 90):
            term = -term * zz / (m * (nu + m))
            out += term
            if np.all(np.abs(term) <= 1e-18 * (np.abs(out) + 1e-300)):
                break
    # z = 0 takes the exact limit (the Lanczos round-trip in pref is only
    # good to ~2e-16, and the loop arithmetic would turn inf cases into nan)
    if np.any(half == 0.0):
        limit = 1.0 if nu == 0.0 else (0.0 if nu > 0.0 else np.inf)
        out = np.where(half == 0.0, limit, out)
    return out


def _bessel_j_asym(nu, z):
    # Hankel's expansion: J = sqrt(2/(pi z)) (P cos(chi) - Q sin(chi)) with
    # P = 1 - a2/z^2 + a4/z^4 - ..., Q = a1/z - a3/z^3 + ...,
    # a_k = prod_{j<=k} (4nu^2 - (2j-1)^2) / (k! 8^k). Terms shrink until
    # k ~ 2z; stop at the smallest one (error below its magnitude).
    z = np.asarray(z, dtype=float)
    mu = 4.0 * nu * nu
    p = np.ones_like(z)
    q = np.zeros_like(z)
    c = np.ones_like(z)
    for k in range(1, 34):
        c = c * (mu - (2.0 * k - 1.0) ** 2) / (8.0 * k * z)
        s = -1.0 if (k // 2) % 2 == 1 else 1.0
        if k % 2 == 1:
            q = q + s * c
        else:
            p = p + s * c
        if np.all(np.abs(c) < 1e-18):
            break
    chi = z - (0.5 * nu + 0.25) * math.pi
    return np.sqrt(2.0 / (math.pi * z)) * (p * np.cos(chi) - q * np.sin(chi))


def bessel_j(order, z):
    """Bessel function of the first kind, order nu >= -1/2, z >= 0.

    Accepts scalars or arrays in z. For nu < 0 the value at z = 0 is +inf
    (the (z/2)^nu prefactor); callers needing the nu = -1/2 cosine kernel
    should use its elementary form directly.
    """
    nu = _order(order)
    if nu < -0.5 or not math.isfinite(nu):
        raise ValueError("bessel_j needs nu >= -1/2, got %r" % (nu,))
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr < 0) or not np.all(np.isfinite(z_arr)):
        raise ValueError("bessel_j needs finite z >= 0")
    scalar = z_arr.ndim == 0
    z_arr = np.atleast_1d(z_arr)
    cap = min(12.0 * (1.0 + nu), _J_SERIES_CAP)
    out = np.empty_like(z_arr)
    small = z_arr <= cap
    if np.any(small):
        with np.errstate(divide="ignore"):
            out[small] = _bessel_j_series(nu, z_arr[small])
    if np.any(~small):
        out[~small] = _bessel_j_asym(nu, z_arr[~small])
    return float(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# I_nu


def bessel_i(order, z):
    """Modified Bessel function of the first kind, ascending series.

    For nu >= 0 every term is positive: no cancellation, accuracy is
    rounding-limited for every z the package uses (z <= ~60). Negative
    orders pick up sign flips from the Gamma continuation in the first
    ceil(-nu) terms only, which stay O(1) relative to the sum.
    """
    nu = _order(order)
    if nu < -0.5 and abs(nu - round(nu)) < 1e-15:
        raise ValueError("bessel_i series needs non-pole order, got %r" % (nu,))
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr < 0) or not np.all(np.isfinite(z_arr)):
        raise ValueError("bessel_i needs finite z >= 0")
    scalar = z_arr.ndim == 0
    z_arr = np.atleast_1d(z_arr)
    half = 0.5 * z_arr
    with np.errstate(divide="ignore", invalid="ignore"):
        log_pref = nu * np.log(half)
        # Gamma(nu+1) may sit left of the positive axis for nu in (-1, -1/2)
        # or lower; math.gamma covers the analytic continuation.
        pref = np.exp(log_pref) / math.gamma(nu + 1.0)
        term = pref.copy()
        out = pref.copy()
        zz = half * half
        for m in range(1, 160):
            term = term * zz / (m * (nu + m))
            out += term
            if np.all(np.abs(term) <= 1e-18 * (np.abs(out) + 1e-300)):
                break
    if np.any(half == 0.0):
        limit = 1.0 if nu == 0.0 else (0.0 if nu > 0.0 else np.inf)
        out = np.where(half == 0.0, limit, out)
    return float(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# K_nu


def _log_k_integral(nu, z_arr, rel_tol=1e-13, max_level=10):
    """log of Int_0^inf e^{-u} (u(u+2z))^{nu-1/2} du, elementwise in z.

    This is the classical representation Int_1^inf e^{-zt}(t^2-1)^{nu-1/2} dt
    after u = z(t-1), with e^{-z} z^{-2nu} z factored out analytically. The
    integrand has an algebraic u^{nu-1/2} endpoint, a hump near
    u = max(2nu-1, 0) of width ~sqrt(nu), and an e^{-u} tail: exactly the
    shape exp-sinh nodes resolve uniformly over the whole (nu, z) box.
    Handled in log space (magnitudes span hundreds of orders of magnitude).
    """
    z_col = z_arr[:, None]
    scale = max(1.0, 2.0 * nu - 1.0)
    p = nu - 0.5
    # The u -> 0 endpoint behaves like u^{2nu-1} once u drops below 2z, so
    # the truncated tail is ~u_min^{2nu}/(2nu); push u_min low enough that
    # it sits below 1e-17 of the total even for tiny nu and z.
    reach = (20.0 / min(1.0, nu) + math.log(scale)) * (2.0 / math.pi)
    t_max = max(4.8, math.asinh(reach))
    log_acc = np.full(z_arr.shape, -np.inf)
    prev = None
    value = None
    for level in range(max_level + 1):
        h = 0.5 ** level
        t = _de_params(h, t_max, level)
        u, w = _exp_sinh_xw(t, 0.0, scale)
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            lf = (-u + np.log(w))[None, :] \
                + p * (np.log(u)[None, :] + np.log(u[None, :] + 2.0 * z_col))
        lf = np.where(np.isfinite(lf), lf, -np.inf)
        m = np.maximum(log_acc, np.max(lf, axis=1))
        m = np.where(np.isfinite(m), m, 0.0)
        level_sum = np.sum(np.exp(lf - m[:, None]), axis=1)
        log_acc = m + np.log(np.exp(log_acc - m) + level_sum)
        value = log_acc + math.log(h)
        if prev is not None and level >= 3:
            if np.all(np.abs(value - prev) <= rel_tol):
                return value
        prev = value
    raise QuadratureError("K_nu quadrature did not stabilize",
                          value=prev, error_estimate=float(
                              np.max(np.abs(value - prev))))


def log_bessel_k(order, z):
    """log K_nu(z) for nu > 0, z > 0; scalar or array in z.

    This is the workhorse behind bessel_k and the hitting-kernel quotient
    (which needs differences of log K at arguments large enough that the
    plain values underflow).
    """
    nu = _order(order)
    if not (nu > 0.0 and math.isfinite(nu)):
        raise ValueError("log_bessel_k needs nu > 0, got %r" % (nu,))
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr <= 0) or not np.all(np.isfinite(z_arr)):
        raise ValueError("log_bessel_k needs finite z > 0")
    scalar = z_arr.ndim == 0
    z_arr = np.atleast_1d(z_arr).astype(float)
    log_int = _log_k_integral(nu, z_arr)
    log_pref = (0.5 * math.log(math.pi) - nu * math.log(2.0)
                - nu * np.log(z_arr) - _lgamma_pos(nu + 0.5) - z_arr)
    out = log_pref + log_int
    return float(out[0]) if scalar else out


def bessel_k(order, z, scaled=False):
    """Modified Bessel function of the second kind, nu > 0, z > 0.

    With scaled=True returns e^z K_nu(z). Unscaled values that would
    underflow to zero raise OverflowError instead of saturating silently.
    """
    nu = _order(order)
    z = float(z)
    if not (nu > 0.0):
        raise ValueError("bessel_k needs nu > 0, got %r" % (nu,))
    if not (z > 0.0 and math.isfinite(z)):
        raise ValueError("bessel_k needs finite z > 0, got %r" % (z,))
    log_k = log_bessel_k(nu, z)
    if scaled:
        return math.exp(log_k + z)
    if log_k < -744.0:
        raise OverflowError(
            "K_%g(%g) underflows double precision; pass scaled=True" % (nu, z))
    return math.exp(log_k)


def bessel_k_via_i(order, z):
    """K_nu through (pi/2)(I_{-nu} - I_nu)/sin(nu pi), non-integer nu only.

    Kept as an independent cross-check of the integral route; the removable
    singularity at integer nu is exactly why it is not the primary path.
    The difference is conditioned like e^{2z} (both I's grow like e^z while
    K decays like e^{-z}), so in double precision the result carries about
    16 - 2z/ln(10) correct digits: fine below z ~ 9, meaningless by z ~ 18.
    """
    nu = _order(order)
    z = float(z)
    if abs(nu - round(nu)) < 1e-8:
        raise ValueError("the I-difference route needs non-integer nu")
    if not (0.0 < nu):
        raise ValueError("bessel_k_via_i needs nu > 0")
    return (math.pi / 2.0) * (bessel_i(-nu, z) - bessel_i(nu, z)) \
        / math.sin(nu * math.pi)


# ---------------------------------------------------------------------------
# The normalized transform profile


def phi_nu(order, r):
    """phi_nu(r) = 2^(1-nu) r^nu K_nu(r) / Gamma(nu), with phi_nu(0) = 1.

    Strictly decreasing on r >= 0 with values in (0, 1]; at nu = 1/2 it
    reduces to e^{-r}. Scalar or array r.
    """
    nu = _order(order)
    if not (nu > 0.0):
        raise ValueError("phi_nu needs nu > 0, got %r" % (nu,))
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0) or not np.all(np.isfinite(r_arr)):
        raise ValueError("phi_nu needs finite r >= 0")
    scalar = r_arr.ndim == 0
    r_arr = np.atleast_1d(r_arr).astype(float)
    out = np.ones_like(r_arr)
    pos = r_arr > 0
    if np.any(pos):
        rp = r_arr[pos]
        log_phi = ((1.0 - nu) * math.log(2.0) + nu * np.log(rp)
                   + log_bessel_k(nu, rp) - _lgamma_pos(nu))
        out[pos] = np.exp(np.minimum(log_phi, 0.0))
    return float(out[0]) if scalar else out
