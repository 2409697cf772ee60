"""When no separating direction exists, a simplex may still do the job.

For p4 every nonzero direction fails, yet the triangle with corners (1,1),
(4,2), (1,3) holds both negative exponents while each positive exponent sits
in a corner cone.  Moving that triangle onto the standard one by a monomial
change of variables makes every term convex, which pins the negative region
to one piece.  p5 gets its triangle from a non-strict separating direction.
"""

import numpy as np

from signcert import certify, monomial_transform
from signcert.catalog import p4, p5
from signcert.geometry import (
    SimplexWitness,
    check_simplex,
    convex_by_term_rules,
    normalize_to_standard,
    simplex_from_nonstrict_family,
)
from signcert.oracle import LogBox, stability_check

np.set_printoptions(precision=3, suppress=True)

f = p4()
print("p4 =", f)
print("without help:", certify(f).bound)
P = SimplexWitness.from_vertices([(1, 1), (4, 2), (1, 3)])
check = check_simplex(f, P)
print("triangle valid:", check.valid, "positive exponents sit in corner cones", check.positive_cones)
T = normalize_to_standard(P)
g = monomial_transform(f, T)
print("after x -> x^M:", g)
print("term rules:", convex_by_term_rules(g).rules)
print("with the triangle:", certify(f, simplex=P.vertices).bound)
print("grid:", stability_check(f, LogBox.cube(-3, 3, 2, 512)).counts)

print()
f = p5()
print("p5 =", f)
Q = simplex_from_nonstrict_family(f, [[1, -1]])
print("triangle from w = (1, -1):\n", Q.vertices)
c = certify(f)
print(f"certificate: {c.bound} via {c.rule} ({c.witness['route']})")
