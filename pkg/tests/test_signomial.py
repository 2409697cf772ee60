import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from signcert.catalog import p1, p2, p2_reduced, p4
from signcert.polytope import in_convex_hull, newton_polytope
from signcert.signomial import (
    AffineMap,
    EvaluationOverflow,
    Signomial,
    evaluate,
    induced_univariate,
    monomial_transform,
    restrict,
    signed_support,
)

from strategies import affine_maps, positive_points, signomials


def pts(*p):
    return {tuple(float(c) for c in q) for q in p}


class TestConstruction:
    def test_merges_duplicates(self):
        f = Signomial([1.0, 2.0, -1.0], [[1, 0], [1, 0], [0, 1]])
        assert len(f) == 2
        assert f.coefficient([1, 0]) == 3.0

    def test_cancelled_term_dropped(self):
        f = Signomial([1.0, -1.0, 5.0], [[1, 0], [1, 0], [0, 1]])
        assert f.support() == pts((0, 1))

    def test_zero_coefficient_rejected(self):
        with pytest.raises(ValueError, match="zero"):
            Signomial([0.0], [[1.0]])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            Signomial.from_terms([(1, (1, 2)), (1, (1,))])

    def test_negative_zero_exponent_merges(self):
        f = Signomial([1.0, 1.0], [[0.0], [-0.0]])
        assert len(f) == 1

    def test_immutable(self):
        f = p1()
        with pytest.raises(ValueError):
            f.coefficients[0] = 5.0


class TestEvaluate:
    def test_p4_at_one(self):
        assert evaluate(p4(), [1, 1]) == -1.0

    def test_p1_at_one(self):
        assert evaluate(p1(), [1, 1]) == -1.0

    def test_constant(self):
        f = Signomial([1.0], [[0.0, 0.0]])
        assert evaluate(f, [0.3, 17.0]) == 1.0

    def test_domain_error(self):
        with pytest.raises(ValueError):
            evaluate(p1(), [1.0, 0.0])
        with pytest.raises(ValueError):
            evaluate(p1(), [-1.0, 2.0])

    def test_overflow_flagged(self):
        f = Signomial([1.0], [[1000.0]])
        with pytest.raises(EvaluationOverflow):
            evaluate(f, [10.0])

    def test_real_exponents(self):
        f = Signomial([2.0, -1.0], [[0.5, 0.0], [0.0, -1.5]])
        x = np.array([4.0, 0.25])
        assert evaluate(f, x) == pytest.approx(2 * 2.0 - 8.0)


class TestSignedSupport:
    def test_p1(self):
        s = signed_support(p1())
        assert s.positive_points == pts((2.5, 0), (0.5, 0))
        assert s.negative_points == pts((0.5, 2), (2.5, -2))

    def test_p2(self):
        s = signed_support(p2())
        assert s.positive_points == pts((3, 4), (1, 2), (0, 1))
        assert s.negative_points == pts((4, 5), (3, 2), (2, 3), (1, 1))

    def test_all_positive(self):
        s = signed_support(Signomial([1.0, 2.0], [[0, 0], [1, 1]]))
        assert s.negative.shape == (0, 2)

    @given(signomials())
    def test_partition(self, f):
        s = signed_support(f)
        assert s.positive_points.isdisjoint(s.negative_points)
        assert s.positive_points | s.negative_points == f.support()


class TestRestrict:
    def test_p2_to_reduced(self):
        f = p2()
        keep = f.support() - pts((4, 5), (2, 3))
        assert restrict(f, keep) == p2_reduced()

    def test_identity(self):
        f = p2()
        assert restrict(f, f.support()) == f

    def test_single_term(self):
        g = restrict(p1(), [(2.5, 0)])
        assert g.terms == [(1.0, (2.5, 0.0))]

    def test_not_a_subset(self):
        with pytest.raises(ValueError):
            restrict(p1(), [(9, 9)])

    @given(signomials(min_terms=2), st.data())
    def test_restrict_twice(self, f, data):
        sup = sorted(f.support())
        a = data.draw(st.sets(st.sampled_from(sup), min_size=1))
        b = data.draw(st.sets(st.sampled_from(sup), min_size=1))
        if not a & b:
            return
        assert restrict(restrict(f, a), a & b) == restrict(f, a & b)


class TestMonomialTransform:
    M = [[0.5, 0.5], [0.5, 0.0]]
    v = [-0.25, -0.25]

    def test_p1_stated_matrix(self):
        # support map mu -> M mu + v with M taken row by row
        g = monomial_transform(p1(), AffineMap(self.M, self.v))
        expected = Signomial.from_terms([(1, (1, 1)), (-2, (1, 0)), (1, (0, 0)), (-1, (0, 1))])
        assert g == expected

    def test_p1_matrix_giving_swapped_roles(self):
        # a different matrix is needed for x1 x2 - 2 x2 + 1 - x1
        g = monomial_transform(p1(), AffineMap([[0.5, 0.0], [0.5, 0.5]], self.v))
        expected = Signomial.from_terms([(1, (1, 1)), (-2, (0, 1)), (1, (0, 0)), (-1, (1, 0))])
        assert g == expected

    def test_identity(self):
        f = p2()
        assert monomial_transform(f, AffineMap.identity(2)) == f

    def test_singular_rejected(self):
        with pytest.raises(ValueError, match="singular"):
            AffineMap([[1, 2], [2, 4]], [0, 0])

    @given(signomials(), st.data())
    def test_support_maps_pointwise(self, f, data):
        T = data.draw(affine_maps(f.n))
        g = monomial_transform(f, T)
        s, t = signed_support(f), signed_support(g)
        assert np.allclose(np.sort(T.apply(s.positive), axis=0), np.sort(t.positive, axis=0))
        assert np.allclose(np.sort(T.apply(s.negative), axis=0), np.sort(t.negative, axis=0))

    @given(signomials(max_exp=3), st.data())
    def test_value_identity(self, f, data):
        T = data.draw(affine_maps(f.n))
        x = data.draw(positive_points(f.n))
        g = monomial_transform(f, T)
        y = T.variable_change(x)
        lhs = evaluate(g, x)
        rhs = np.prod(x**T.shift) * evaluate(f, y)
        scale = np.abs(f.coefficients).sum() * np.exp(np.abs(np.log(y)) @ np.abs(f.exponents).max(axis=0)) * np.prod(
            x**T.shift
        )
        assert abs(lhs - rhs) <= 1e-9 * scale


class TestInducedUnivariate:
    def test_p2_example(self):
        g = induced_univariate(p2(), [1, -1], [1, 1])
        assert list(g.exponents) == [-1.0, 0.0, 1.0]
        assert list(g.coefficients) == [3.0, -3.0, -1.0]  # 3 - 3 - 1 = p2(1, 1)

    def test_zero_direction(self):
        f = p2()
        g = induced_univariate(f, [0, 0], [0.7, 1.3])
        assert list(g.exponents) == [0.0]
        assert g.coefficients[0] == pytest.approx(evaluate(f, [0.7, 1.3]))

    def test_domain_error(self):
        with pytest.raises(ValueError):
            induced_univariate(p2(), [1, 0], [0, 1])

    @given(signomials(max_exp=3), st.data())
    def test_composition(self, f, data):
        x = data.draw(positive_points(f.n))
        v = np.array(data.draw(st.lists(st.floats(-2, 2), min_size=f.n, max_size=f.n)))
        t = data.draw(st.floats(1.0, 3.0))
        g = induced_univariate(f, v, x)
        direct = evaluate(f, t**v * x)
        scale = np.abs(f.coefficients) @ np.exp(f.exponents @ np.log(t**v * x))
        assert g(t) == pytest.approx(direct, abs=1e-9 * scale)
        assert g(1.0) == pytest.approx(evaluate(f, x), abs=1e-9 * scale)


class TestNewtonPolytope:
    def test_p1(self):
        verts, dim = newton_polytope(p1())
        assert dim == 2
        assert {tuple(v) for v in verts.tolist()} == signed_support(p1()).positive_points | signed_support(
            p1()
        ).negative_points

    def test_point(self):
        verts, dim = newton_polytope(Signomial([3.0], [[1.0, 2.0]]))
        assert dim == 0 and verts.tolist() == [[1.0, 2.0]]

    def test_collinear(self):
        f = Signomial([1, 1, 1], [[0, 0], [1, 0], [2, 0]])
        verts, dim = newton_polytope(f)
        assert dim == 1
        assert {tuple(v) for v in verts.tolist()} == pts((0, 0), (2, 0))

    def test_three_dimensional(self):
        cube = [[i, j, k] for i in (0, 1) for j in (0, 1) for k in (0, 1)]
        f = Signomial(np.ones(9), cube + [[0.5, 0.5, 0.5]])
        verts, dim = newton_polytope(f)
        assert dim == 3 and len(verts) == 8

    @given(signomials())
    def test_vertices_generate_support(self, f):
        verts, _ = newton_polytope(f)
        sup = f.support()
        assert {tuple(v) for v in verts.tolist()} <= sup
        for mu in sup:
            assert in_convex_hull(mu, verts, tol=1e-7)
