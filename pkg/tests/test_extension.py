import math

import numpy as np
import pytest

from gasp.boundary_data import (
    BoundaryData,
    Grid,
    SubcriticalCase,
    WeightedTerm,
    sharpness_data,
)
from gasp.extension import (
    boundary_convergence,
    derivative_commutation_check,
    extend_grid,
    extend_point,
)
from gasp.kernel import (
    HalfSpacePoint,
    ModelParams,
    MultiIndex,
    dalpha_residual,
    poisson_kernel,
)


def tent_data(alpha, n, m):
    """Radial tent max(0, 1 - |x|) sampled on [-1, 1]^n."""
    g = Grid(origin=(-1.0,) * n, spacing=2.0 / (m - 1), shape=(m,) * n)
    r2 = np.zeros(g.shape)
    for i in range(n):
        dims = [1] * n
        dims[i] = g.shape[i]
        a = g.axis_coords(i)
        r2 = r2 + (a * a).reshape(dims)
    vals = np.maximum(0.0, 1.0 - np.sqrt(r2))
    p = ModelParams(alpha, n)
    data = BoundaryData(p, (WeightedTerm(MultiIndex((0,) * n), g,
                                         vals.reshape(-1)),))
    return data, p


def tent_poisson_exact(x, y):
    # alpha = 0, n = 1: the classical Poisson integral of the tent has an
    # arctan/log antiderivative on each linear piece
    def piece(a, b, lo, hi):
        def anti(t):
            return (a + b * x) * math.atan(t / y) \
                + 0.5 * b * y * math.log(t * t + y * y)
        return anti(hi - x) - anti(lo - x)

    return (piece(1.0, 1.0, -1.0, 0.0) + piece(1.0, -1.0, 0.0, 1.0)) / math.pi


# ---------------------------------------------------------------------------
# extend_point


def test_empty_data_extends_to_zero():
    p = ModelParams(0.5, 1)
    data = BoundaryData(p, ())
    assert extend_point(data, p, HalfSpacePoint((0.3,), 1.0)) == 0.0


def test_point_matches_closed_form_poisson():
    data, p = tent_data(0.0, 1, 513)
    for x in (-2.0, -0.5, 0.0, 0.7, 1.5, 4.0):
        got = extend_point(data, p, HalfSpacePoint((x,), 1.0))
        assert got == pytest.approx(tent_poisson_exact(x, 1.0), abs=5e-7)


def test_point_far_field_is_mass_times_kernel():
    # u(0, y) ~ (int f) K_{alpha,y}(0) for y much larger than the support
    for alpha, n, tol in [(0.0, 1, 5e-4), (2.0, 2, 1e-3)]:
        data, p = tent_data(alpha, n, 129)
        y = 50.0
        u = extend_point(data, p, HalfSpacePoint((0.0,) * n, y))
        t = data.terms[0]
        w = np.ones(t.grid.shape)
        for i in range(n):
            dims = [1] * n
            dims[i] = t.grid.shape[i]
            aw = np.full(t.grid.shape[i], t.grid.spacing)
            aw[0] *= 0.5
            aw[-1] *= 0.5
            w = w * aw.reshape(dims)
        mass = float(np.sum(t.values_grid * w))
        k0 = poisson_kernel(p, HalfSpacePoint((0.0,) * n, y))
        assert u / (mass * k0) == pytest.approx(1.0, abs=tol)


def test_sharpness_bump_lower_bound():
    # u(a_k e1, rho_k) >= f_k * u~(0, 1) with
    # u~(0, 1) = int K_{alpha,1}(eta) max(0, 1 - |eta|) deta, which for
    # alpha = 0, n = 1 is (pi/2 - ln 2)/pi
    p = ModelParams(0.0, 1)
    data, points = sharpness_data(p, SubcriticalCase(0.0, 0.0), 3)
    u_tilde = (math.pi / 2 - math.log(2.0)) / math.pi
    for k in (1, 2):
        single = BoundaryData(p, (data.terms[k],))
        u = extend_point(single, p, points[k])
        f_k = data.terms[k].values.max()
        assert u >= f_k * u_tilde * (1.0 - 1e-3)
        # scaling maps the bump to the unit tent, so this is near equality
        assert u / (f_k * u_tilde) == pytest.approx(1.0, abs=5e-3)


def test_point_dimension_validation():
    data, p = tent_data(0.0, 1, 65)
    with pytest.raises(ValueError):
        extend_point(data, ModelParams(0.0, 2), HalfSpacePoint((0.0, 0.0), 1.0))
    with pytest.raises(ValueError):
        extend_point(data, p, HalfSpacePoint((0.0, 0.0), 1.0))


# ---------------------------------------------------------------------------
# extend_grid


def test_single_point_grid_equals_extend_point():
    data, p = tent_data(1.0, 1, 129)
    out = Grid(origin=(0.7,), spacing=1.0, shape=(1,))
    res = extend_grid(data, p, 0.8, out)
    want = extend_point(data, p, HalfSpacePoint((0.7,), 0.8))
    assert res.values.shape == (1,)
    assert res.values[0] == want


def test_fast_path_agrees_with_direct():
    # out lattice commensurate with the data lattice engages the FFT path;
    # extend_point always takes the direct path
    data, p = tent_data(0.0, 1, 513)
    out = Grid(origin=(-3.0,), spacing=2.0 / 512, shape=(1537,))
    res = extend_grid(data, p, 1.0, out)
    assert not any("incommensurate" in s for s in res.notes)
    xs = out.axis_coords(0)
    for j in (0, 511, 768, 1536):
        direct = extend_point(data, p, HalfSpacePoint((float(xs[j]),), 1.0))
        assert res.values[j] == pytest.approx(direct, abs=1e-10)


def test_grid_matches_closed_form_and_estimate_tracks_error():
    data, p = tent_data(0.0, 1, 513)
    out = Grid(origin=(-3.0,), spacing=2.0 / 512, shape=(1537,))
    res = extend_grid(data, p, 1.0, out)
    xs = out.axis_coords(0)
    exact = np.array([tent_poisson_exact(float(x), 1.0) for x in xs])
    err = float(np.max(np.abs(res.values - exact)))
    assert err < 1e-6
    est = res.quadrature_error_estimate
    assert math.isfinite(est) and est > 0.0
    assert err < 30.0 * est


def test_incommensurate_grid_flagged():
    data, p = tent_data(0.0, 1, 513)
    out = Grid(origin=(-3.0,), spacing=0.013, shape=(463,))
    res = extend_grid(data, p, 1.0, out)
    assert any("incommensurate" in s for s in res.notes)


def test_undersampled_kernel_flagged():
    data, p = tent_data(0.0, 1, 65)
    out = Grid(origin=(-2.0,), spacing=0.5, shape=(9,))
    res = extend_grid(data, p, 0.01, out)
    assert any("undersampled" in s for s in res.notes)


def test_linearity():
    _, p = tent_data(0.0, 1, 129)
    g = Grid(origin=(-1.0,), spacing=2.0 / 128, shape=(129,))
    x = g.axis_coords(0)
    f1 = np.maximum(0.0, 1.0 - np.abs(x))
    f2 = np.cos(2.0 * x) ** 2
    mk = lambda v: BoundaryData(p, (WeightedTerm(MultiIndex((0,)), g, v),))
    out = Grid(origin=(-2.0,), spacing=0.25, shape=(17,))
    a = extend_grid(mk(f1), p, 0.7, out).values
    b = extend_grid(mk(f2), p, 0.7, out).values
    ab = extend_grid(mk(f1 + f2), p, 0.7, out).values
    assert np.max(np.abs(ab - (a + b))) < 1e-12


def test_positivity_and_max_principle():
    data, p = tent_data(2.0, 1, 129)
    out = Grid(origin=(-5.0,), spacing=1.0 / 64, shape=(641,))
    res = extend_grid(data, p, 0.5, out)
    assert np.all(res.values >= 0.0)
    assert res.values.max() <= 1.0 + 1e-4


def test_mass_transport():
    # int u_y dx = int f dx; the tent has unit mass (f_k rho = 1)
    data, p = tent_data(2.0, 1, 129)
    out = Grid(origin=(-5.0,), spacing=1.0 / 64, shape=(641,))
    for y, tol in ((0.5, 1e-3), (0.125, 1e-4)):
        res = extend_grid(data, p, y, out)
        mass = float(np.trapezoid(res.values, dx=1.0 / 64))
        assert mass == pytest.approx(1.0, abs=tol)


def test_extension_solves_the_pde():
    data, p = tent_data(1.0, 1, 513)
    u = lambda pt: extend_point(data, p, pt)
    for pt in (HalfSpacePoint((0.3,), 0.8), HalfSpacePoint((-1.5,), 0.5)):
        assert abs(dalpha_residual(u, p, pt)) < 5e-4


def test_grid_validation():
    data, p = tent_data(0.0, 1, 65)
    out = Grid(origin=(0.0,), spacing=0.5, shape=(3,))
    with pytest.raises(ValueError):
        extend_grid(data, p, 0.0, out)
    with pytest.raises(ValueError):
        extend_grid(data, p, 1.0, Grid(origin=(0.0, 0.0), spacing=0.5,
                                       shape=(3, 3)))


# ---------------------------------------------------------------------------
# boundary convergence


def test_convergence_tent_n1():
    data, p = tent_data(0.0, 1, 513)
    e = boundary_convergence(data, p, [1.0, 0.25, 1.0 / 16, 1.0 / 64])
    assert all(v > 0.0 for v in e)
    for a, b in zip(e, e[1:]):
        assert b <= 1.05 * a
    assert e[-1] < e[0] / 4.0


def test_convergence_tent_n2():
    data, p = tent_data(2.0, 2, 129)
    e = boundary_convergence(data, p, [1.0, 0.25, 1.0 / 16])
    for a, b in zip(e, e[1:]):
        assert b <= 1.05 * a
    assert e[-1] < e[0] / 4.0


def test_convergence_zero_data():
    p = ModelParams(0.0, 1)
    assert boundary_convergence(BoundaryData(p, ()), p, [1.0, 0.5]) \
        == [0.0, 0.0]


def test_convergence_validation():
    data, p = tent_data(0.0, 1, 65)
    with pytest.raises(ValueError):
        boundary_convergence(data, p, [0.25, 1.0])  # increasing
    with pytest.raises(ValueError):
        boundary_convergence(data, p, [1.0, -0.5])
    deriv = BoundaryData(p, (WeightedTerm(MultiIndex((1,)),
                                          data.terms[0].grid,
                                          data.terms[0].values),))
    with pytest.raises(ValueError):
        boundary_convergence(deriv, p, [1.0, 0.5])


# ---------------------------------------------------------------------------
# derivative commutation


def test_commutation_zero_order_identical():
    data, p = tent_data(1.0, 1, 129)
    fd, exact = derivative_commutation_check(
        data, p, MultiIndex((0,)), HalfSpacePoint((0.3,), 1.0), 1e-3)
    assert fd == exact


def test_commutation_first_order():
    data, p = tent_data(1.0, 1, 513)
    fd, exact = derivative_commutation_check(
        data, p, MultiIndex((1,)), HalfSpacePoint((0.3,), 1.0), 1e-3)
    assert abs(fd - exact) < 1e-4


def test_commutation_second_order():
    data, p = tent_data(1.0, 1, 513)
    fd, exact = derivative_commutation_check(
        data, p, MultiIndex((2,)), HalfSpacePoint((0.3,), 1.0), 1e-3)
    assert abs(fd - exact) < 1e-3


def test_commutation_mixed_n2():
    data, p = tent_data(0.0, 2, 65)
    fd, exact = derivative_commutation_check(
        data, p, MultiIndex((1, 1)), HalfSpacePoint((0.2, -0.1), 1.0), 1e-3)
    assert abs(fd - exact) < 1e-3


def test_commutation_validation():
    data, p = tent_data(1.0, 1, 65)
    pt = HalfSpacePoint((0.0,), 1.0)
    with pytest.raises(ValueError):
        derivative_commutation_check(data, p, MultiIndex((3,)), pt, 1e-3)
    with pytest.raises(ValueError):
        derivative_commutation_check(data, p, MultiIndex((1,)), pt, 0.0)
    deriv = BoundaryData(p, (WeightedTerm(MultiIndex((1,)),
                                          data.terms[0].grid,
                                          data.terms[0].values),))
    with pytest.raises(ValueError):
        derivative_commutation_check(deriv, p, MultiIndex((1,)), pt, 1e-3)
