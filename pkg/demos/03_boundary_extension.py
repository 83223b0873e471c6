"""Extending gridded boundary data into the half-space.

Boundary data is a sum of terms, each a multi-index beta and gridded values:
the extension applies the beta-th derivative of the kernel to the values.
This script extends a tent function, shows pointwise values approaching the
boundary data as y -> 0, runs the packaged convergence diagnostic, and
round-trips the data through its JSON file format.
"""

import os
import tempfile

import numpy as np

from gasp import (
    BoundaryData,
    Grid,
    HalfSpacePoint,
    ModelParams,
    MultiIndex,
    WeightedTerm,
    extend_grid,
    extend_point,
    load_data,
    save_data,
)
from gasp.extension import boundary_convergence


def tent(n, m):
    g = Grid(origin=(-1.0,) * n, spacing=2.0 / (m - 1), shape=(m,) * n)
    r2 = np.zeros(g.shape)
    for i in range(n):
        dims = [1] * n
        dims[i] = g.shape[i]
        a = g.axis_coords(i)
        r2 = r2 + (a * a).reshape(dims)
    return g, np.maximum(0.0, 1.0 - np.sqrt(r2)).reshape(-1)


def main():
    p = ModelParams(0.0, 1)
    g, vals = tent(1, 513)
    data = BoundaryData(p, (WeightedTerm(MultiIndex((0,)), g, vals),))

    print("tent extension u(0, y) approaches the boundary value 1 as y -> 0:")
    for y in (1.0, 0.25, 1.0 / 16, 1.0 / 64):
        u = extend_point(data, p, HalfSpacePoint((0.0,), y))
        print("  y=%-8.5g u(0,y)=%.6f" % (y, u))
    print()

    print("sup-norm error on the data grid (convergence diagnostic):")
    errs = boundary_convergence(data, p, [1.0, 0.25, 1.0 / 16, 1.0 / 64])
    for y, e in zip((1.0, 0.25, 1.0 / 16, 1.0 / 64), errs):
        print("  y=%-8.5g sup |u(., y) - data| = %.5f" % (y, e))
    print()

    print("a derivative term (beta = (1,)) extends the tent's slope field;")
    print("away from the kinks it tracks d/dx of the plain extension:")
    ddata = BoundaryData(p, (WeightedTerm(MultiIndex((1,)), g, vals),))
    h = 1e-5
    for x in (0.4, -0.6):
        pt = HalfSpacePoint((x,), 0.5)
        via_term = extend_point(ddata, p, pt)
        fd = (extend_point(data, p, HalfSpacePoint((x + h,), 0.5))
              - extend_point(data, p, HalfSpacePoint((x - h,), 0.5))) / (2 * h)
        print("  x=%-5g derivative-term=%.8f  centered-difference=%.8f"
              % (x, via_term, fd))
    print()

    print("grid extension carries a quadrature error estimate:")
    out = extend_grid(data, p, 0.25, Grid(origin=(-2.0,), spacing=0.5, shape=(9,)))
    print("  values:", np.array2string(out.values, precision=5))
    print("  error estimate: %.2e" % out.quadrature_error_estimate)
    print()

    path = os.path.join(tempfile.mkdtemp(), "tent.json")
    save_data(data, path)
    back = load_data(path)
    same = np.array_equal(back.terms[0].values, data.terms[0].values)
    print("JSON round-trip through %s: values identical = %s" % (path, same))


if __name__ == "__main__":
    main()
