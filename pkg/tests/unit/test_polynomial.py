# tests/unit/test_polynomial.py
import random

import pytest
import sympy

from core.exceptions import (
    DivisionByZero,
    LimitExceeded,
    NonMonicLeft,
    NonZeroRemainder,
    RingMismatch,
)
from domain.value_objects.cyclotomic import CyclotomicElement
from domain.value_objects.polynomial import (
    UniPoly,
    cyclotomic_polynomial,
    derivative,
    kronecker_mul,
    poly_arith,
    poly_divmod,
    poly_exact_div,
    poly_gcd,
    poly_mul,
    poly_pow,
    poly_powmod,
    primitive_part,
    pseudo_remainder,
    resultant,
    schoolbook_mul,
)
from domain.value_objects.rings import RingTag, ring_for

Z = RingTag.integer()
Z4 = RingTag.cyclotomic(4)
F3 = RingTag.prime_field(3)
X = sympy.Symbol("x")


def P(*coeffs, ring=Z) -> UniPoly:
    """Коэффициенты по возрастанию степени"""
    return UniPoly.from_ints(coeffs, ring)


def to_sympy(f: UniPoly) -> sympy.Poly:
    return sympy.Poly(list(reversed(f.coeffs)) or [0], X)


def random_monic(rng: random.Random, degree: int, ring=Z) -> UniPoly:
    impl = ring_for(ring)
    if ring == Z:
        coeffs = [rng.randint(-5, 5) for _ in range(degree)]
    else:
        coeffs = [impl.from_vector([rng.randint(-3, 3) for _ in range(impl.vector_width)]) for _ in range(degree)]
    return UniPoly.from_coefficients(ring, coeffs + [impl.one])


class TestUniPoly:
    def test_trailing_zero_rejected(self):
        with pytest.raises(ValueError):
            UniPoly(Z, (1, 0))

    def test_zero_polynomial_degree(self):
        assert UniPoly.zero(Z).degree == -1
        assert P(0, 0).is_zero()

    def test_render(self):
        assert str(P(1, 2, 1)) == "c^2 + 2*c + 1"
        assert str(P(-1, 0, 1)) == "c^2 - 1"
        g = UniPoly.from_coefficients(Z4, [CyclotomicElement(4, (1, -1)), CyclotomicElement.one(4)])
        assert str(g) == "c + 1 - z"

    def test_evaluate(self):
        assert P(2, 2, 2, 1)(-2) == -2
        assert P(1, 0, 1, ring=F3)(1) == 2


class TestArithmetic:
    def test_square(self):
        assert poly_arith(P(1, 1), P(1, 1), "mul") == P(1, 2, 1)

    def test_second_orbit_polynomial(self):
        c = UniPoly.variable()
        assert c * c + c == P(0, 1, 1)

    def test_times_zero(self):
        assert (P(3, 1) * UniPoly.zero(Z)).is_zero()

    def test_ring_mismatch(self):
        with pytest.raises(RingMismatch):
            P(1, 1) + P(1, 1, ring=Z4)

    def test_degree_cap(self):
        with pytest.raises(LimitExceeded):
            poly_mul(P(0, 0, 1), P(0, 0, 1), degree_cap=3)
        with pytest.raises(LimitExceeded):
            poly_pow(P(0, 1, 1), 5, degree_cap=8)

    def test_kronecker_matches_schoolbook(self):
        rng = random.Random(3)
        impl = ring_for(Z)
        for _ in range(50):
            a = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(rng.randint(1, 60))]
            b = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(rng.randint(1, 60))]
            assert kronecker_mul(a, b) == schoolbook_mul(impl, a, b)

    def test_fast_path_over_cyclotomic_matches_schoolbook(self):
        rng = random.Random(5)
        impl = ring_for(Z4)
        f, g = random_monic(rng, 40, Z4), random_monic(rng, 45, Z4)
        expected = UniPoly.from_coefficients(Z4, schoolbook_mul(impl, f.coeffs, g.coeffs))
        assert poly_mul(f, g) == expected

    def test_fast_path_over_prime_field(self):
        rng = random.Random(9)
        impl = ring_for(F3)
        f = UniPoly.from_ints([rng.randint(0, 2) for _ in range(40)] + [1], F3)
        g = UniPoly.from_ints([rng.randint(0, 2) for _ in range(50)] + [1], F3)
        assert poly_mul(f, g) == UniPoly.from_coefficients(F3, schoolbook_mul(impl, f.coeffs, g.coeffs))

    def test_pow(self):
        assert poly_pow(P(1, 1), 3) == P(1, 3, 3, 1)
        assert poly_pow(P(5, 1), 0) == UniPoly.one(Z)


class TestDivision:
    def test_exact(self):
        assert poly_exact_div(P(0, 2, 1, 2, 1), P(0, 2, 1)) == P(1, 0, 1)

    def test_by_one(self):
        f = P(3, -1, 4)
        assert poly_exact_div(f, UniPoly.one(Z)) == f

    def test_inexact(self):
        with pytest.raises(NonZeroRemainder):
            poly_exact_div(P(1, 0, 1), P(1, 1))

    def test_by_zero(self):
        with pytest.raises(DivisionByZero):
            poly_divmod(P(1, 1), UniPoly.zero(Z))

    def test_random_products_divide_back(self):
        rng = random.Random(13)
        for ring in (Z, Z4):
            for _ in range(10):
                f = random_monic(rng, rng.randint(1, 8), ring)
                g = random_monic(rng, rng.randint(1, 8), ring)
                assert poly_exact_div(f * g, g) == f

    def test_pseudo_remainder_matches_sympy(self):
        f, g = P(1, -3, 0, 2, 5), P(2, 0, 3)
        expected = sympy.prem(to_sympy(f), to_sympy(g))
        assert to_sympy(pseudo_remainder(f, g)) == expected

    def test_powmod(self):
        modulus = P(1, 0, 1, ring=F3)
        x = UniPoly.variable(F3)
        assert poly_powmod(x, 5, modulus) == x
        assert poly_powmod(x, 4, modulus) == UniPoly.one(F3)


class TestGcd:
    def test_coprime(self):
        assert poly_gcd(P(1, 0, 1), P(0, 2)) == UniPoly.one(Z)

    def test_self(self):
        f = P(2, 2, 2, 1)
        assert poly_gcd(f, f) == f

    def test_common_factor(self):
        assert poly_gcd(P(-1, 0, 1), P(-1, 1)) == P(-1, 1)

    def test_over_cyclotomic(self):
        z = CyclotomicElement.generator(4)
        linear = UniPoly.from_coefficients(Z4, [-z, CyclotomicElement.one(4)])
        f = linear * P(1, 1, ring=Z4)
        g = linear * P(2, 1, ring=Z4)
        assert poly_gcd(f, g) == linear

    def test_over_field(self):
        f = P(1, 0, 1, ring=RingTag.prime_field(5))
        g = P(-2, 1, ring=RingTag.prime_field(5))
        assert poly_gcd(f, g) == g

    def test_non_monic_gcd_is_primitive(self):
        assert poly_gcd(P(1, 2), P(2, 4)) == P(1, 2)
        assert poly_gcd(P(1, 2), P(-1, -2)) == P(1, 2)

    def test_both_zero(self):
        with pytest.raises(ValueError):
            poly_gcd(UniPoly.zero(Z), UniPoly.zero(Z))

    def test_primitive_part(self):
        assert primitive_part(P(4, 6, 2)) == P(2, 3, 1)


class TestResultant:
    @pytest.mark.parametrize("f, g, expected", [
        (P(2, 1), P(0, 1), -2),
        (P(1, 0, 1), P(0, 1, 1), 2),
        (P(2, 2, 2, 1), UniPoly.one(Z), 1),
    ])
    def test_examples(self, f, g, expected):
        assert resultant(f, g) == expected

    def test_non_monic_left(self):
        with pytest.raises(NonMonicLeft):
            resultant(P(1, 2), P(0, 1))

    def test_agrees_with_sylvester_determinant(self):
        rng = random.Random(17)
        for _ in range(40):
            f = random_monic(rng, rng.randint(1, 7))
            g = P(*[rng.randint(-6, 6) for _ in range(rng.randint(1, 9))])
            if g.is_zero():
                continue
            assert resultant(f, g) == sylvester_determinant(f, g)

    def test_sign_follows_root_product(self):
        # f = c(c - 2)(c + 3): ∏ g(α) = g(0)·g(2)·g(-3)
        f = P(0, -6, 1, 1)
        g = P(5, -1, 1)
        assert resultant(f, g) == 5 * 7 * 17
        assert resultant(f, -g) == -(5 * 7 * 17)

    def test_multiplicative_in_right_argument(self):
        rng = random.Random(19)
        for ring in (Z, Z4):
            f = random_monic(rng, 4, ring)
            g, h = random_monic(rng, 3, ring), random_monic(rng, 2, ring)
            impl = ring_for(ring)
            assert resultant(f, g * h) == impl.mul(resultant(f, g), resultant(f, h))

    def test_zero_iff_common_root(self):
        shared = P(-1, 1)
        f, g = shared * P(2, 1), shared * P(3, 1)
        assert resultant(f, g) == 0
        assert poly_gcd(f, g).degree >= 1
        assert resultant(P(2, 1), P(3, 1)) != 0

    def test_over_field_agrees_with_integer_reduction(self):
        f, g = P(2, 2, 2, 1), P(1, 0, 3, 1)
        q = 7
        reduced = resultant(f.to_ring(RingTag.prime_field(q)), g.to_ring(RingTag.prime_field(q)))
        assert reduced == resultant(f, g) % q


def sylvester_determinant(f: UniPoly, g: UniPoly) -> int:
    """det матрицы Сильвестра: lc(f)^{deg g}·∏ g(α) по корням f"""
    n, m = f.degree, g.degree
    size = n + m
    rows = []
    for shift in range(m):
        rows.append([0] * shift + list(reversed(f.coeffs)) + [0] * (size - n - 1 - shift))
    for shift in range(n):
        rows.append([0] * shift + list(reversed(g.coeffs)) + [0] * (size - m - 1 - shift))
    return int(sympy.Matrix(rows).det())


class TestDerivative:
    def test_examples(self):
        assert derivative(P(1, 0, 1)) == P(0, 2)
        assert derivative(P(7)).is_zero()
        assert derivative(P(2, 2, 2, 1)) == P(2, 4, 3)


def test_cyclotomic_polynomials_divide_x_power_minus_one():
    for k in range(1, 31):
        phi = cyclotomic_polynomial(k)
        assert phi.is_monic()
        x_k_minus_1 = UniPoly.from_ints([-1] + [0] * (k - 1) + [1])
        assert poly_divmod(x_k_minus_1, phi)[1].is_zero()
    assert cyclotomic_polynomial(1)(0) == -1
    assert cyclotomic_polynomial(7)(0) == 1
