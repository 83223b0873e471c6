"""Boundary data as finite sums of gridded derivative terms.

Data on the boundary is represented as f = sum_beta d^beta f_beta where
each f_beta is sampled on a compact uniform grid. Compact support makes
every weighted integral finite, so membership in the admissible class is
by construction. The module also builds the sparse-bump data used to
show that the growth exponents are sharp, and reads/writes the JSON data
file format.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .kernel import HalfSpacePoint, ModelParams, MultiIndex


class SchemaError(ValueError):
    """A data file violates the schema; the message names the field."""


@dataclass(frozen=True)
class Grid:
    """Uniform grid with isotropic spacing.

    Parameters
    ----------
    origin : tuple of float
        Coordinates of the first sample point.
    spacing : float
        Distance between neighbouring samples, shared by all axes.
    shape : tuple of int
        Number of samples per axis. Singleton axes are allowed here
        (output grids may be single points); grids carrying quadrature
        data need at least 2 samples per axis, enforced by WeightedTerm.
    """

    origin: tuple
    spacing: float
    shape: tuple

    def __post_init__(self):
        origin = tuple(float(v) for v in self.origin)
        shape = tuple(int(m) for m in self.shape)
        spacing = float(self.spacing)
        if len(origin) != len(shape) or not origin:
            raise ValueError("origin and shape must have equal, nonzero length")
        if not all(math.isfinite(v) for v in origin):
            raise ValueError("grid origin must be finite")
        if not (math.isfinite(spacing) and spacing > 0.0):
            raise ValueError("grid spacing must be positive and finite")
        if any(m < 1 for m in shape):
            raise ValueError("grid shape entries must be >= 1")
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "spacing", spacing)
        object.__setattr__(self, "shape", shape)

    @property
    def n(self):
        return len(self.origin)

    def axis_coords(self, axis):
        """Sample coordinates along one axis."""
        return self.origin[axis] + self.spacing * np.arange(self.shape[axis])


@dataclass(frozen=True, eq=False)
class WeightedTerm:
    """One term d^beta f_beta of the boundary data.

    ``values`` holds the samples of f_beta on ``grid`` in row-major
    order; it is stored as a flat read-only float array.
    """

    beta: MultiIndex
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float).reshape(-1)
        if len(self.beta.components) != self.grid.n:
            raise ValueError("beta has %d components but the grid is %d-dimensional"
                             % (len(self.beta.components), self.grid.n))
        if any(m < 2 for m in self.grid.shape):
            # trapezoidal quadrature over the support needs a real extent
            raise ValueError("term grids need at least 2 samples per axis")
        expected = int(np.prod(self.grid.shape))
        if vals.size != expected:
            raise ValueError("values has %d entries, grid shape needs %d"
                             % (vals.size, expected))
        if not np.all(np.isfinite(vals)):
            raise ValueError("values must be finite")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def n(self):
        return self.grid.n

    @property
    def values_grid(self):
        """The samples reshaped to the grid shape."""
        return self.values.reshape(self.grid.shape)


@dataclass(frozen=True, eq=False)
class BoundaryData:
    """A finite list of weighted terms plus the model parameters they target.

    An empty term list is valid and represents f = 0.
    """

    params_hint: ModelParams
    terms: tuple

    def __post_init__(self):
        terms = tuple(self.terms)
        for i, term in enumerate(terms):
            if term.n != self.params_hint.n:
                raise ValueError("terms[%d] is %d-dimensional, expected n=%d"
                                 % (i, term.n, self.params_hint.n))
        object.__setattr__(self, "terms", terms)


def weight_alpha(p, x):
    """The closed-form weight w_alpha(x) = (1 + |x|^2)^((alpha+n+1)/2).

    Parameters
    ----------
    p : ModelParams
    x : array_like
        Point(s) in R^n; the last axis indexes coordinates. For n = 1 a
        bare scalar or a flat array of scalars is accepted.

    Returns
    -------
    float or ndarray
        w_alpha at each point; always >= 1, and exactly 1 at the origin.
    """
    arr = np.asarray(x, dtype=float)
    if p.n == 1 and (arr.ndim == 0 or arr.shape[-1] != 1):
        arr = arr[..., None]
    if arr.shape[-1] != p.n:
        raise ValueError("points have dimension %d, expected %d"
                         % (arr.shape[-1], p.n))
    s = np.sum(arr * arr, axis=-1)
    return (1.0 + s) ** (0.5 * p.mu)


def _grid_radius_sq(grid):
    # |x|^2 on the full grid via broadcast sum of per-axis squares
    out = np.zeros(grid.shape)
    for axis in range(grid.n):
        dims = [1] * grid.n
        dims[axis] = grid.shape[axis]
        c = grid.axis_coords(axis)
        out = out + (c * c).reshape(dims)
    return out


def _trapezoid_apply(vals, grid):
    # multiply in the composite-trapezoid endpoint halving, axis by axis
    for axis in range(grid.n):
        w = np.ones(grid.shape[axis])
        w[0] = 0.5
        w[-1] = 0.5
        dims = [1] * grid.n
        dims[axis] = grid.shape[axis]
        vals = vals * w.reshape(dims)
    return vals


def weighted_l1_norm(term, p):
    """Weighted L^1 norm of one term, int |f_beta(x)| / w_alpha(x) dx.

    Trapezoidal quadrature over the grid support. Nonnegative, and zero
    exactly when every sample is zero.

    Parameters
    ----------
    term : WeightedTerm
    p : ModelParams
        Supplies the weight exponent; its dimension must match the term.

    Returns
    -------
    float
    """
    if term.n != p.n:
        raise ValueError("term is %d-dimensional, params have n=%d"
                         % (term.n, p.n))
    winv = (1.0 + _grid_radius_sq(term.grid)) ** (-0.5 * p.mu)
    integ = _trapezoid_apply(np.abs(term.values_grid) * winv, term.grid)
    return float(np.sum(integ)) * term.grid.spacing ** term.n


@dataclass(frozen=True)
class SubcriticalCase:
    """Exponent pair with beta + gamma strictly below alpha + n + 1."""

    beta: float
    gamma: float


@dataclass(frozen=True)
class CriticalCase:
    """Exponents on the critical line beta + gamma = alpha + n + 1.

    Only gamma is free (it must satisfy gamma < n); beta is implied.
    """

    gamma: float


_TENT_POINTS = 65  # per axis: spacing rho/32 over the diameter 2*rho


def case_exponents(p, case):
    """Validate a sharpness case; return (beta, gamma, rho_exp, height_extra).

    The schedule the case prescribes is centres a_k = e^k, radii
    rho_k = k^{-rho_exp}, and log-heights k*(alpha+n+1) + height_extra*log k.
    On the critical line beta is implied by beta + gamma = alpha + n + 1.
    """
    if isinstance(case, SubcriticalCase):
        if not case.beta + case.gamma < p.mu:
            raise ValueError(
                "subcritical case needs beta + gamma < alpha + n + 1 "
                "(%g + %g >= %g)" % (case.beta, case.gamma, p.mu))
        return case.beta, case.gamma, 2.0, 0.0
    if isinstance(case, CriticalCase):
        if not case.gamma < p.n:
            raise ValueError("critical case needs gamma < n (%g >= %d)"
                             % (case.gamma, p.n))
        eps = p.n - case.gamma
        rho_exp = (1.0 + eps) / eps
        return p.mu - case.gamma, case.gamma, rho_exp, case.gamma * rho_exp
    raise TypeError("case must be SubcriticalCase or CriticalCase")


def sharpness_data(p, case, k_max):
    """Sparse tent bumps showing the growth exponents cannot be lowered.

    Bump k is the tent f_k * max(0, 1 - |x - a_k e1| / rho_k) centred at
    a_k = e^k on the first axis, sampled with spacing rho_k / 32. In the
    subcritical case f_k = e^{k(alpha+n+1)} and rho_k = k^{-2}; on the
    critical line, with eps = n - gamma, the heights gain a factor
    k^{gamma(1+eps)/eps} and rho_k = k^{-(1+eps)/eps}. The balls are
    disjoint since consecutive centres are separated by e^k(e-1) > 2.

    Parameters
    ----------
    p : ModelParams
    case : SubcriticalCase or CriticalCase
    k_max : int
        Number of bumps, between 1 and 12; heights grow like
        e^{k(alpha+n+1)}, so larger k buys nothing but overflow.

    Returns
    -------
    (BoundaryData, list of HalfSpacePoint)
        The bumps plus the evaluation points (a_k e1, rho_k) along which
        the scaled growth quantity stays bounded away from zero.
    """
    if not (1 <= int(k_max) <= 12):
        raise ValueError("k_max must be between 1 and 12")
    _, _, rho_exp, height_extra = case_exponents(p, case)

    terms = []
    points = []
    for k in range(1, int(k_max) + 1):
        log_height = k * p.mu + height_extra * math.log(k)
        if log_height > 700.0:
            raise ValueError("bump %d height exp(%.1f) overflows doubles; "
                             "reduce k_max or the exponents" % (k, log_height))
        height = math.exp(log_height)
        rho = float(k) ** -rho_exp
        if rho * height == 0.0 or not math.isfinite(rho * 2.0 / (_TENT_POINTS - 1)):
            raise ValueError("bump %d radius %.2e underflows the grid" % (k, rho))
        center = math.exp(k)
        spacing = 2.0 * rho / (_TENT_POINTS - 1)
        origin = (center - rho,) + (-rho,) * (p.n - 1)
        grid = Grid(origin=origin, spacing=spacing, shape=(_TENT_POINTS,) * p.n)

        dist_sq = np.zeros(grid.shape)
        for axis in range(p.n):
            dims = [1] * p.n
            dims[axis] = _TENT_POINTS
            c = grid.axis_coords(axis) - (center if axis == 0 else 0.0)
            dist_sq = dist_sq + (c * c).reshape(dims)
        tent = height * np.maximum(0.0, 1.0 - np.sqrt(dist_sq) / rho)
        terms.append(WeightedTerm(beta=MultiIndex((0,) * p.n), grid=grid,
                                  values=tent.reshape(-1)))
        points.append(HalfSpacePoint(x=(center,) + (0.0,) * (p.n - 1), y=rho))
    return BoundaryData(params_hint=p, terms=tuple(terms)), points


# ---------------------------------------------------------------------------
# file I/O

_TOP_FIELDS = ("alpha", "n", "terms")
_TERM_FIELDS = ("beta", "origin", "spacing", "shape", "values")


def _is_real(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def _check_number_list(seq, path, want_int=False):
    if not isinstance(seq, list):
        raise SchemaError("%s: expected a list" % path)
    for j, v in enumerate(seq):
        if want_int and not _is_int(v):
            raise SchemaError("%s[%d]: expected an integer" % (path, j))
        if not want_int and not _is_real(v):
            raise SchemaError("%s[%d]: expected a number" % (path, j))


def save_data(data, path):
    """Write BoundaryData to a JSON file (see load_data for the schema)."""
    doc = {
        "alpha": data.params_hint.alpha,
        "n": data.params_hint.n,
        "terms": [
            {
                "beta": list(t.beta.components),
                "origin": list(t.grid.origin),
                "spacing": t.grid.spacing,
                "shape": list(t.grid.shape),
                "values": t.values.tolist(),
            }
            for t in data.terms
        ],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_data(path):
    """Read BoundaryData from a JSON file.

    The document must be an object with exactly the fields ``alpha``
    (real), ``n`` (int) and ``terms`` (list); each term an object with
    exactly ``beta``, ``origin``, ``spacing``, ``shape`` and ``values``,
    with ``values`` holding product(shape) row-major samples. Unknown
    fields are rejected. Floats survive the round trip bit-exactly.

    Raises
    ------
    SchemaError
        On any schema violation; the message names the offending field.
    """
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("not valid JSON: %s" % exc) from exc
    if not isinstance(doc, dict):
        raise SchemaError("top level: expected an object")
    for key in doc:
        if key not in _TOP_FIELDS:
            raise SchemaError("top level: unknown field %r" % key)
    for key in _TOP_FIELDS:
        if key not in doc:
            raise SchemaError("top level: missing field %r" % key)
    if not _is_real(doc["alpha"]):
        raise SchemaError("alpha: expected a number")
    if not _is_int(doc["n"]):
        raise SchemaError("n: expected an integer")
    try:
        params = ModelParams(float(doc["alpha"]), doc["n"])
    except ValueError as exc:
        raise SchemaError("alpha/n: %s" % exc) from exc
    if not isinstance(doc["terms"], list):
        raise SchemaError("terms: expected a list")

    terms = []
    for i, entry in enumerate(doc["terms"]):
        path_i = "terms[%d]" % i
        if not isinstance(entry, dict):
            raise SchemaError("%s: expected an object" % path_i)
        for key in entry:
            if key not in _TERM_FIELDS:
                raise SchemaError("%s: unknown field %r" % (path_i, key))
        for key in _TERM_FIELDS:
            if key not in entry:
                raise SchemaError("%s: missing field %r" % (path_i, key))
        _check_number_list(entry["beta"], path_i + ".beta", want_int=True)
        _check_number_list(entry["origin"], path_i + ".origin")
        _check_number_list(entry["shape"], path_i + ".shape", want_int=True)
        _check_number_list(entry["values"], path_i + ".values")
        if not _is_real(entry["spacing"]):
            raise SchemaError("%s.spacing: expected a number" % path_i)
        for field in ("beta", "origin", "shape"):
            if len(entry[field]) != params.n:
                raise SchemaError("%s.%s: length %d does not match n=%d"
                                  % (path_i, field, len(entry[field]), params.n))
        want = 1
        for m in entry["shape"]:
            want *= max(m, 0)
        if len(entry["values"]) != want:
            raise SchemaError("%s.values: length %d, shape needs %d"
                              % (path_i, len(entry["values"]), want))
        try:
            term = WeightedTerm(
                beta=MultiIndex(tuple(entry["beta"])),
                grid=Grid(origin=tuple(entry["origin"]),
                          spacing=entry["spacing"],
                          shape=tuple(entry["shape"])),
                values=np.asarray(entry["values"], dtype=float),
            )
        except ValueError as exc:
            raise SchemaError("%s: %s" % (path_i, exc)) from exc
        terms.append(term)
    return BoundaryData(params_hint=params, terms=tuple(terms))
