"""Two planar signomials, two kinds of witness.

p2 has a direction whose level lines keep every positive exponent on one
side and every negative exponent on the other, so its negative region is a
single component.  p3 has no such direction, but its positive exponents fit
inside a slab with negative exponents on both sides; that still caps the
negative components at two, and the grid sampler finds exactly two.
"""

from signcert import certify, check_certificate, signed_support
from signcert.catalog import p2, p3
from signcert.oracle import LogBox, stability_check
from signcert.separation import classify_strictness, find_enclosing_vector, find_separating_vector


def show(name, f, box):
    s = signed_support(f)
    print(f"== {name} = {f}")
    sep = find_separating_vector(s)
    print("  separating vector:", None if sep is None else (sep.v.round(3), sep.strictness.value))
    enc = find_enclosing_vector(s.flipped())
    if enc.witness is not None:
        w = enc.witness
        print(f"  enclosing vector for the positive exponents: {w.v.round(3)} slab [{w.a:.3f}, {w.b:.3f}] strict={w.strict}")
    cert = certify(f)
    print(f"  certificate: at most {cert.bound} negative component(s) via {cert.rule}; rechecked: {check_certificate(f, cert)}")
    r = stability_check(f, LogBox.cube(*box, 2, 512), sign="negative")
    print(f"  grid count on log box {box}: {r.counts} -> {r.verdict()}")


show("p2", p2(), (-3, 3))
print("  v = (1, -1) on p2 is", classify_strictness([1, -1], signed_support(p2())).value)
show("p3", p3(), (-3, 2))
