import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gasp.kernel import ModelParams
from gasp.special_functions import EvalAccuracy
from gasp.spectral import (
    ExponentialDecay,
    PolynomialDecay,
    RadialProfile,
    ft_closed_form,
    ft_direct,
    ft_integral_rep,
    hankel_transform,
    kernel_radial_profile,
    profile_ode_residual,
)


def exp_profile():
    return RadialProfile(eval=lambda s: np.exp(-np.asarray(s, dtype=float)),
                         decay_class=ExponentialDecay(1.0))


# ---------------------------------------------------------------------------
# RadialProfile construction


def test_radial_profile_rejects_wrong_decay_class():
    # a polynomial tail declared as exponential must fail the spot check
    with pytest.raises(ValueError):
        RadialProfile(eval=lambda s: 1.0 / (1.0 + s * s),
                      decay_class=ExponentialDecay(1.0))
    with pytest.raises(ValueError):
        RadialProfile(eval=lambda s: 1.0, decay_class="fast")


def test_radial_profile_accepts_consistent_decay():
    RadialProfile(eval=lambda s: 1.0 / (1.0 + s * s),
                  decay_class=PolynomialDecay(2.0))
    exp_profile()


# ---------------------------------------------------------------------------
# hankel_transform


def test_hankel_exponential_profile_n2():
    # Int_0^inf e^{-s} s J_0(rs) ds = (1+r^2)^{-3/2}
    for r in (0.3, 1.0, 2.5):
        want = 2.0 * math.pi * (1.0 + r * r) ** -1.5
        got = hankel_transform(exp_profile(), 2, r,
                               EvalAccuracy(rel_tol=1e-10))
        assert got == pytest.approx(want, rel=1e-9)


def test_hankel_kernel_profile_is_poisson_transform():
    # alpha = 0, n = 1: the transform of the boundary profile is e^{-r}
    p = ModelParams(0.0, 1)
    prof = kernel_radial_profile(p, 1.0)
    for r in (0.5, 1.0, 4.0):
        got = hankel_transform(prof, 1, r)
        assert got == pytest.approx(math.exp(-r), rel=1e-6)


def test_hankel_small_r_approaches_mass():
    p = ModelParams(1.0, 2)
    prof = kernel_radial_profile(p, 1.0)
    got = hankel_transform(prof, 2, 0.01)
    assert got == pytest.approx(ft_closed_form(p, 1.0, 0.01), rel=1e-6)
    assert 0.999 < got < 1.0


def test_hankel_domain():
    with pytest.raises(ValueError):
        hankel_transform(exp_profile(), 2, 0.0)
    with pytest.raises(ValueError):
        hankel_transform(exp_profile(), 0, 1.0)


# ---------------------------------------------------------------------------
# closed form


def test_ft_closed_form_poisson_case():
    p = ModelParams(0.0, 1)
    assert ft_closed_form(p, 2.0, 0.5) == pytest.approx(math.exp(-1.0),
                                                        rel=1e-12)
    assert ft_closed_form(p, 1.0, 0.0) == 1.0


def test_ft_closed_form_k1_value():
    p = ModelParams(1.0, 1)
    assert ft_closed_form(p, 1.0, 1.0) \
        == pytest.approx(0.60190723019723457, rel=1e-10)


def test_ft_closed_form_scale_invariance():
    p = ModelParams(2.3, 2)
    assert ft_closed_form(p, 2.0, 1.5) \
        == pytest.approx(ft_closed_form(p, 1.0, 3.0), rel=1e-13)


@settings(max_examples=40, deadline=None)
@given(alpha=st.floats(-0.9, 5.0), y=st.floats(0.1, 5.0),
       xi=st.floats(0.0, 10.0), dxi=st.floats(0.05, 5.0))
def test_ft_closed_form_bounds_and_monotone(alpha, y, xi, dxi):
    p = ModelParams(alpha, 1)
    a = ft_closed_form(p, y, xi)
    b = ft_closed_form(p, y, xi + dxi)
    assert 0.0 < b < a <= 1.0


# ---------------------------------------------------------------------------
# integral representation


def test_ft_integral_rep_alpha0_is_exponential():
    p = ModelParams(0.0, 1)
    for b in (0.3, 1.0, 7.0):
        assert ft_integral_rep(p, 1.0, b) == pytest.approx(math.exp(-b),
                                                           rel=1e-11)


@pytest.mark.parametrize("alpha", [-0.5, 1.0, 2.0, 3.7])
def test_ft_integral_rep_matches_closed_form(alpha):
    p = ModelParams(alpha, 1)
    for b in (0.1, 1.0, 20.0):
        a = ft_integral_rep(p, 1.0, b)
        c = ft_closed_form(p, 1.0, b)
        assert abs(a - c) <= 1e-9 * c


def test_ft_integral_rep_large_argument_scaled_agreement():
    # at y|xi| = 30 both routes are ~1e-11 in absolute size; the relative
    # agreement is what matters
    p = ModelParams(3.7, 2)
    a = ft_integral_rep(p, 1.0, 30.0)
    c = ft_closed_form(p, 1.0, 30.0)
    assert abs(a - c) <= 1e-8 * c


def test_ft_integral_rep_domain():
    p = ModelParams(1.0, 1)
    with pytest.raises(ValueError):
        ft_integral_rep(p, 1.0, 0.0)


# ---------------------------------------------------------------------------
# direct transform


def test_ft_direct_zero_frequency_is_mass():
    p = ModelParams(1.5, 1)
    assert ft_direct(p, 0.7, [0.0]) == pytest.approx(1.0, abs=1e-9)


def test_ft_direct_poisson_n1():
    p = ModelParams(0.0, 1)
    got = ft_direct(p, 1.0, [2.0])
    assert got == pytest.approx(math.exp(-2.0), rel=1e-7)


def test_ft_direct_alpha3_matches_closed():
    p = ModelParams(3.0, 1)
    got = ft_direct(p, 1.0, [1.0])
    assert got == pytest.approx(ft_closed_form(p, 1.0, 1.0), rel=1e-7)


def test_ft_direct_negative_frequency_symmetry():
    p = ModelParams(1.0, 1)
    assert ft_direct(p, 1.0, [-1.5]) \
        == pytest.approx(ft_direct(p, 1.0, [1.5]), rel=1e-10)


def test_ft_direct_n2_axis_and_diagonal():
    p = ModelParams(2.0, 2)
    c = ft_closed_form(p, 1.0, 1.5)
    axis = ft_direct(p, 1.0, [1.5, 0.0])
    r = 1.5 / math.sqrt(2.0)
    diag = ft_direct(p, 1.0, [r, r])
    swapped = ft_direct(p, 1.0, [0.0, 1.5])
    assert axis == pytest.approx(c, rel=1e-6)
    assert diag == pytest.approx(c, rel=1e-6)
    assert swapped == pytest.approx(c, rel=1e-6)


def test_ft_direct_scale_invariance():
    p = ModelParams(0.5, 1)
    a = ft_direct(p, 2.0, [1.5])
    b = ft_direct(p, 1.0, [3.0])
    assert a == pytest.approx(b, rel=1e-8)


def test_ft_direct_three_way_sample():
    for alpha, n, y, b in [(-0.5, 1, 0.25, 0.1), (2.0, 2, 4.0, 5.0),
                           (3.7, 2, 0.25, 20.0), (0.0, 2, 1.0, 1.0)]:
        p = ModelParams(alpha, n)
        xi_norm = b / y
        xi = [xi_norm] + [0.0] * (n - 1)
        c = ft_closed_form(p, y, xi_norm)
        i = ft_integral_rep(p, y, xi_norm)
        d = ft_direct(p, y, xi)
        assert abs(i - c) <= 1e-8 * c
        assert abs(d - c) <= 1e-5 * c


def test_ft_direct_validation():
    with pytest.raises(ValueError):
        ft_direct(ModelParams(0.0, 3), 1.0, [1.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        ft_direct(ModelParams(0.0, 2), 1.0, [1.0])
    with pytest.raises(ValueError):
        ft_direct(ModelParams(0.0, 1), 0.0, [1.0])


# ---------------------------------------------------------------------------
# the reduced ODE


def test_profile_ode_residual_second_order():
    p = ModelParams(1.3, 1)
    for t in (0.5, 2.0, 10.0):
        r1 = profile_ode_residual(p, t, h=1e-2)
        r2 = profile_ode_residual(p, t, h=5e-3)
        # the residual itself is O(h^2); successive halving divides it by ~4
        assert abs(r1) < 1e-4
        order = math.log2(abs(r1) / abs(r2))
        assert 1.8 <= order <= 2.2


def test_profile_ode_residual_domain():
    p = ModelParams(1.0, 1)
    with pytest.raises(ValueError):
        profile_ode_residual(p, 0.5, h=0.5)
