import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signcert.catalog import EXAMPLES, cubic, heptagon, p1, p2, p2_reduced, p3, p4, p5
from signcert.certifier import (
    UNKNOWN,
    CertificateError,
    certify,
    check_certificate,
    simplex_to_separating,
    univariate_certify,
)
from signcert.formats import validate_certificate
from signcert.geometry import SimplexWitness, simplex_from_very_strict
from signcert.oracle import LogBox, count_components, grid_labeling
from signcert.separation import Strictness, classify_strictness
from signcert.signomial import Signomial, signed_support

from strategies import signomials

P4_SIMPLEX = [(1, 1), (4, 2), (1, 3)]


class TestExamples:
    def test_p2(self):
        c = certify(p2())
        assert (c.bound, c.rule) == (1, "strict_separating")
        v = np.array(c.witness["v"])
        assert np.allclose(v / np.linalg.norm(v), np.array([1, -1]) / np.sqrt(2))

    def test_p3(self):
        c = certify(p3())
        assert (c.bound, c.rule) == (2, "strict_enclosing")

    def test_p4_with_simplex(self):
        c = certify(p4(), simplex=P4_SIMPLEX)
        assert (c.bound, c.rule) == (1, "convexification")
        assert c.witness["route"] == "supplied"

    def test_p4_without_simplex_is_unknown(self):
        c = certify(p4())
        assert c.bound == UNKNOWN and c.rule == "none"
        assert any("separating" in d for d in c.diagnostics)

    def test_p5(self):
        c = certify(p5())
        assert (c.bound, c.rule) == (1, "convexification")
        assert c.witness["route"] == "nonstrict_family"

    def test_p1(self):
        assert certify(p1()).bound == 2

    def test_heptagon(self):
        c = certify(heptagon())
        assert (c.bound, c.rule) == (1, "single_negative_point")

    def test_no_negative_points(self):
        c = certify(Signomial([1.0, 2.0], [[0, 0], [1, 1]]))
        assert (c.bound, c.rule) == (0, "no_negative_points")

    def test_bad_user_simplex(self):
        with pytest.raises(CertificateError, match="positive exponent"):
            certify(p4(), simplex=[(0, 0), (10, 0), (0, 10)])

    def test_degenerate_user_simplex(self):
        with pytest.raises(CertificateError):
            certify(p4(), simplex=[(0, 0), (1, 1), (2, 2)])

    def test_newton_simplex_shortcut(self):
        # triangle with positive vertices and negative interior points
        f = Signomial.from_terms([(1, (0, 0)), (1, (4, 0)), (1, (0, 4)), (-3, (1, 1)), (-1, (2, 1)), (-1, (1, 2))])
        c = certify(f)
        assert c.bound == 1
        assert c.rule in ("strict_separating", "convexification")

    def test_newton_simplex_lower_dimensional(self):
        # support on a line in the plane: N(f) is a segment
        f = Signomial.from_terms([(1, (0, 0)), (1, (4, 4)), (-1, (1, 1)), (-1, (3, 3)), (-1, (2, 2))])
        c = certify(f)
        assert c.bound == 1
        assert check_certificate(f, c)

    def test_positive_hyperplane_rule(self):
        # positives on the x-axis; no separating vector
        f = Signomial.from_terms([(1, (0, 0)), (1, (4, 0)), (-1, (2, 1)), (-1, (2, -1)), (-1, (-1, 0.5))])
        c = certify(f)
        assert (c.bound, c.rule) == (2, "positive_hyperplane")

    def test_unknown_is_honest(self):
        c = certify(p4())
        d = c.to_dict()
        assert d["bound"] == "unknown"
        validate_certificate(d)


class TestSerialization:
    @pytest.mark.parametrize("name", sorted(EXAMPLES))
    @pytest.mark.parametrize("target", ["negative", "positive"])
    def test_schema_and_revalidation(self, name, target):
        f = EXAMPLES[name]()
        c = certify(f, target)
        d = json.loads(json.dumps(c.to_dict()))
        validate_certificate(d)
        assert check_certificate(f, d)

    def test_tampered_witness_rejected(self):
        f = p2()
        d = certify(f).to_dict()
        d["witness"]["v"] = [-1.0, 1.0]
        assert not check_certificate(f, d)

    def test_tampered_bound_rejected(self):
        f = p3()
        d = certify(f).to_dict()
        d["bound"] = 1
        assert not check_certificate(f, d)


class TestSimplexToSeparating:
    def test_p4_none(self):
        assert simplex_to_separating(p4(), SimplexWitness.from_vertices(P4_SIMPLEX)) is None

    def test_reduced_p2_seeded(self):
        f = p2_reduced()
        P = simplex_from_very_strict(f, [1, -1], seeds=[[1, 0], [0, -1]], a0=4)
        w = simplex_to_separating(f, P)
        assert w is not None
        assert w.strictness in (Strictness.STRICT, Strictness.VERY_STRICT)
        assert classify_strictness(w.v, signed_support(f)) is w.strictness

    def test_all_positives_in_one_cone(self):
        f = Signomial.from_terms([(1, (-1, -1)), (1, (-2, 0)), (-1, (1, 1))])
        P = SimplexWitness.from_vertices([(0, 0), (3, 0), (0, 3)])
        w = simplex_to_separating(f, P)
        assert w is not None
        assert classify_strictness(w.v, signed_support(f)) is not Strictness.NOT_SEPARATING


class TestUnivariate:
    def test_cubic_a(self):
        c = univariate_certify(cubic("a"))
        assert c.bound == 2
        assert univariate_certify(cubic("a"), "positive").bound == 2

    def test_one_change(self):
        f = Signomial([1, 1, -1, -1], np.arange(4.0).reshape(-1, 1))
        assert univariate_certify(f).bound == 1
        assert univariate_certify(f, "positive").bound == 1

    def test_monomial(self):
        f = Signomial([2.0], [[3.0]])
        assert univariate_certify(f).bound == 0
        assert univariate_certify(f, "positive").bound == 1
        assert univariate_certify(-f).bound == 1

    def test_reported_alongside(self):
        c = certify(cubic("c"))
        assert c.bound == 2
        assert any("cascade" in d or "univariate" in d for d in c.diagnostics)

    def test_large_bound_allowed(self):
        f = Signomial([1, -1, 1, -1, 1, -1], np.arange(6.0).reshape(-1, 1))
        c = certify(f)
        assert c.bound == 3
        validate_certificate(c.to_dict())


class TestProperties:
    @given(signomials(n=2, integer=True, max_exp=3))
    def test_symmetry(self, f):
        a = certify(f, "positive").to_dict()
        b = certify(-f, "negative").to_dict()
        assert a.pop("target") == "positive" and b.pop("target") == "negative"
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)

    @given(signomials(n=2, integer=True, max_exp=3), st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
    def test_adding_positive_term_keeps_single_point_bound(self, f, mu):
        s = signed_support(f)
        if s.negative.shape[0] != 1 or tuple(map(float, mu)) in f.support():
            return
        g = Signomial(np.r_[f.coefficients, 1.0], np.vstack([f.exponents, mu]))
        assert certify(f).bound == certify(g).bound == 1

    @given(signomials(integer=True, max_exp=3))
    def test_witness_revalidates(self, f):
        for target in ("negative", "positive"):
            c = certify(f, target)
            validate_certificate(c.to_dict())
            assert check_certificate(f, c)
            if c.bound == 0:
                s = signed_support(f if target == "negative" else -f)
                assert s.negative.shape[0] == 0

    @settings(max_examples=25)
    @given(signomials(n=2, integer=True, max_exp=2, min_terms=2, max_terms=5))
    def test_sound_against_grid(self, f):
        c = certify(f)
        if not c.known or c.bound == 0:
            return
        g = grid_labeling(f, LogBox.cube(-4, 4, 2, 192))
        cnt = count_components(g, "negative")
        # interior components cannot be artefacts of the window
        interior = sum(1 for t in cnt.boundary if not t)
        assert interior <= c.bound


def test_to_dict_is_a_copy():
    c = certify(p2())
    c.to_dict()["witness"]["v"][0] = 99.0
    assert c.witness["v"][0] != 99.0
