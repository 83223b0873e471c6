"""Fourier transform of the kernel, computed three independent ways.

The transform is radial and separates as K^(xi) = phi_nu(y |xi|) with
nu = (alpha + 1) / 2.  The closed form (a normalized Bessel-K profile), a
one-dimensional integral representation, and a direct n-dimensional Fourier
integral of the kernel must all agree; at alpha = 0 the profile collapses
to exp(-y |xi|).  The radial profile also solves a second-order ODE in
t = y |xi|, which we check by finite differences.
"""

import numpy as np

from gasp import ModelParams, ft_closed_form, ft_direct, ft_integral_rep, phi_nu
from gasp.spectral import profile_ode_residual


def main():
    p = ModelParams(1.5, 2)
    y = 0.8
    print("three routes to the transform, alpha=%.1f n=%d y=%.1f"
          % (p.alpha, p.n, y))
    print("%-8s %-22s %-22s %-22s" % ("|xi|", "closed form", "1-d integral",
                                      "direct 2-d Fourier"))
    for xi in (0.1, 1.0, 5.0, 20.0):
        closed = ft_closed_form(p, y, xi)
        integral = ft_integral_rep(p, y, xi)
        direct = ft_direct(p, y, np.array([xi, 0.0]))
        print("%-8g %-22.15g %-22.15g %-22.15g" % (xi, closed, integral, direct))
    print()

    print("alpha = 0 gives the classical exponential multiplier:")
    p0 = ModelParams(0.0, 1)
    for t in (0.25, 1.0, 4.0):
        got = ft_closed_form(p0, 1.0, t)
        print("  y|xi|=%-5g closed=%.15g  exp(-y|xi|)=%.15g"
              % (t, got, np.exp(-t)))
    print()

    print("profile phi_nu(t) for several orders (t = y|xi|):")
    ts = np.array([0.5, 1.0, 2.0, 4.0])
    for alpha in (-0.5, 0.0, 2.0):
        nu = ModelParams(alpha, 1).nu
        vals = phi_nu(nu, ts)
        print("  nu=%-5.2f " % nu
              + "  ".join("phi(%g)=%.6f" % (t, v) for t, v in zip(ts, vals)))
    print()

    print("the profile solves v'' - (alpha/t) v' - v = 0; centered-difference")
    print("residual shrinks at second order in the step h:")
    pa = ModelParams(2.5, 1)
    for h in (2e-2, 1e-2, 5e-3):
        r = profile_ode_residual(pa, 2.0, h=h)
        print("  h=%-6g |residual at t=2| = %.3e" % (h, abs(r)))


if __name__ == "__main__":
    main()
