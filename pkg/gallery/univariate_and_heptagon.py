"""Sign changes in one variable, and a planar case with no simplex at all.

Four cubics with the sign pattern + - + - reach the bound of two components
of each sign in different ways.  The heptagon example places seven positive
exponents around one negative exponent: no triangle can put all seven in
corner cones, but a lone negative exponent already gives one component.
"""

import numpy as np

from signcert import certify
from signcert.catalog import CUBICS, cubic, heptagon
from signcert.descartes import component_bounds


def components(coeffs):
    # a double root touches zero without changing sign, yet still splits the
    # region, so count intervals between distinct roots; a grid would miss it
    roots = np.unique(np.roots(coeffs[::-1]).real.round(3))
    edges = np.r_[0.0, roots[roots > 0], roots.max() * 2 + 1]
    mids = 0.5 * (edges[:-1] + edges[1:])
    vals = np.polyval(coeffs[::-1], mids)
    return int((vals > 0).sum()), int((vals < 0).sum()), roots


for name in CUBICS:
    f = cubic(name)
    signs = [1 if c > 0 else -1 for c in f.coefficients]
    b = component_bounds(signs)
    pos, neg, roots = components(f.coefficients)
    print(f"({name}) coefficients {f.coefficients}: roots {roots.round(3)}, components +{pos} -{neg}, bound {b[1:]}")

f = heptagon()
c = certify(f)
print(f"heptagon: bound {c.bound} via {c.rule}")
for note in c.diagnostics:
    print("  ", note)
