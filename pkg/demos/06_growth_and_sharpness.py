"""Growth of extensions at infinity, and why the growth condition is sharp.

Extensions of integrable boundary data decay like r^{-mu} along spheres of
radius r, so the weighted sup scan M(r) = sup_theta r^mu |u| stays bounded
(and for tent data decays because the kernel sees a shrinking angular
window).  The pure power solution y^{alpha+1} is the extremal null solution:
its scan is exactly constant.  Dialing the decay exponent just below the
critical rate produces data whose extension stays above a fixed floor at a
sequence of dyadic-in-log points, so the rate cannot be improved.
"""

import numpy as np

from gasp import (
    BoundaryData,
    Grid,
    ModelParams,
    MultiIndex,
    SubcriticalCase,
    WeightedTerm,
    case_exponents,
    counterexample_track,
    l1_data_scan,
    sphere_sup_scan,
    u_tilde,
)


def tent_data(p, m):
    g = Grid(origin=(-1.0,), spacing=2.0 / (m - 1), shape=(m,))
    vals = np.maximum(0.0, 1.0 - np.abs(g.axis_coords(0)))
    return BoundaryData(p, (WeightedTerm(MultiIndex((0,)), g, vals),))


def main():
    p = ModelParams(0.0, 1)
    data = tent_data(p, 513)
    print("weighted sup scan of the tent extension (mu = %g):" % p.mu)
    scan = l1_data_scan(data, p, (4.0, 40.0, 400.0))
    for r, m in zip(scan.r_values, scan.sup_values):
        print("  r=%-6g M(r) = %.6e" % (r, m))
    print("  decays faster than any fixed multiple per decade here,")
    print("  because integrable data beats the generic r^-mu rate")
    print()

    pn = ModelParams(1.5, 1)
    null = sphere_sup_scan(lambda x, y: y ** (pn.alpha + 1.0), pn, 0,
                           (4.0, 40.0, 400.0))
    print("the null solution y^(alpha+1) scans exactly flat (alpha=1.5):")
    for r, m in zip(null.r_values, null.sup_values):
        print("  r=%-6g M(r) = %.15f" % (r, m))
    print()

    case = SubcriticalCase(0.0, 0.0)
    beta_eff, gamma_eff, _, _ = case_exponents(p, case)
    print("sharpness: boundary data with decay exponents beta=%.3f gamma=%.3f"
          % (beta_eff, gamma_eff))
    print("evaluated at the log-dyadic points (0, e^k), normalized by the")
    print("floor 0.5 * u_tilde = %.6f:" % (0.5 * u_tilde(p)))
    for k, ratio in counterexample_track(p, case, 8):
        print("  k=%-2d u(0, e^k) / r^-mu scale = %.6g" % (k, ratio))
    print("the track never drops toward zero, so no faster decay rate can")
    print("hold for all integrable-with-weight data")


if __name__ == "__main__":
    main()
