# tests/unit/test_newton_service.py
import random
from fractions import Fraction

import pytest

from core.exceptions import DuplicateAbscissa, InvalidSpec, LimitExceeded
from domain.value_objects.newton import NewtonPolygon, ValuationPoint
from application.services.newton_service import (
    binomial_valuation_points,
    expected_binomial_slopes,
    expected_binomial_vertices,
    lower_hull,
)


def pts(*pairs):
    return [ValuationPoint(x, Fraction(y)) for x, y in pairs]


class TestLowerHull:
    def test_binomial_fourth_power(self):
        hull = lower_hull(pts((1, 2), (2, 1), (3, 2), (4, 0)))
        assert hull.vertices == tuple(pts((1, 2), (2, 1), (4, 0)))
        assert hull.slopes == ((Fraction(-1), 1), (Fraction(-1, 2), 2))

    def test_single_point(self):
        hull = lower_hull(pts((3, 1)))
        assert hull.vertices == tuple(pts((3, 1)))
        assert hull.slopes == ()

    def test_collinear_points_collapse(self):
        hull = lower_hull(pts((0, 0), (1, 1), (2, 2)))
        assert hull.vertices == tuple(pts((0, 0), (2, 2)))

    def test_duplicate_abscissa(self):
        with pytest.raises(DuplicateAbscissa):
            lower_hull(pts((1, 0), (1, 2)))

    def test_empty(self):
        with pytest.raises(ValueError):
            lower_hull([])

    def test_order_independent(self):
        points = binomial_valuation_points(3, 2)
        rng = random.Random(23)
        for _ in range(10):
            shuffled = points[:]
            rng.shuffle(shuffled)
            assert lower_hull(shuffled) == lower_hull(points)

    def test_rational_valuations(self):
        hull = lower_hull(pts((0, Fraction(1, 2)), (1, Fraction(1, 3)), (2, 1)))
        assert hull.slopes[0][0] == Fraction(-1, 6)


class TestBinomialPolygon:
    def test_points(self):
        assert binomial_valuation_points(2, 1) == pts((1, 1), (2, 0))
        assert binomial_valuation_points(2, 2) == pts((1, 2), (2, 1), (3, 2), (4, 0))

    def test_nine(self):
        hull = lower_hull(binomial_valuation_points(3, 2))
        assert hull.vertices == tuple(pts((1, 2), (3, 1), (9, 0)))

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
    @pytest.mark.parametrize("e", [1, 2, 3])
    def test_vertices_and_slopes(self, p, e):
        hull = lower_hull(binomial_valuation_points(p, e))
        assert list(hull.vertices) == expected_binomial_vertices(p, e)
        assert [slope for slope, _ in hull.slopes] == expected_binomial_slopes(p, e)

    def test_cap(self):
        with pytest.raises(LimitExceeded):
            binomial_valuation_points(2, 5, degree_cap=16)

    def test_requires_prime(self):
        with pytest.raises(InvalidSpec):
            binomial_valuation_points(4, 1)
        with pytest.raises(InvalidSpec):
            binomial_valuation_points(2, 0)


class TestPolygonInvariants:
    def test_vertices_must_increase(self):
        with pytest.raises(ValueError):
            NewtonPolygon(tuple(pts((2, 0), (1, 1))))

    def test_slopes_must_increase(self):
        with pytest.raises(ValueError):
            NewtonPolygon(tuple(pts((0, 0), (1, 1), (2, 1))))

    def test_negative_abscissa(self):
        with pytest.raises(ValueError):
            ValuationPoint(-1, Fraction(0))
