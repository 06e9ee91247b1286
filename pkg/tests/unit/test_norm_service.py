# tests/unit/test_norm_service.py
import pytest

from core.config import AppSettings, NormSettings
from core.exceptions import NotPurePower, RingMismatch
from domain.value_objects.cyclotomic import CyclotomicElement
from domain.value_objects.norm import NormResult
from domain.value_objects.polynomial import UniPoly, poly_mul
from domain.value_objects.rings import RingTag
from application.services.norm_service import NormService, prime_power_decompose
from tests.conftest import mis

Z = RingTag.integer()
Z2 = RingTag.cyclotomic(2)


def P(*coeffs, ring=Z2) -> UniPoly:
    return UniPoly.from_ints(coeffs, ring)


class TestPrimePowerDecompose:
    @pytest.mark.parametrize("value, p, expected", [(8, 2, 3), (1, 7, 0), (243, 3, 5)])
    def test_examples(self, value, p, expected):
        assert prime_power_decompose(value, p) == expected

    def test_foreign_factor(self):
        with pytest.raises(NotPurePower) as info:
            prime_power_decompose(6, 2)
        assert info.value.value == 6

    def test_zero_is_not_a_power(self):
        with pytest.raises(NotPurePower):
            prime_power_decompose(0, 2)

    def test_requires_prime(self):
        with pytest.raises(ValueError):
            prime_power_decompose(8, 4)


class TestNormResult:
    def test_from_signed(self):
        result = NormResult.from_signed(-2)
        assert (result.value, result.zero, result.signed) == (2, False, -2)
        assert not result.is_unit

    def test_zero_is_not_a_unit(self):
        assert not NormResult.from_signed(0).is_unit

    def test_flag_must_match(self):
        with pytest.raises(ValueError):
            NormResult(3, True, 3)


class TestEvalNorm:
    @pytest.mark.parametrize("g, h, expected", [
        (P(2, 1), P(0, 1), 2),
        (P(1, 0, 1), P(0, 1), 1),
        (P(2, 2, 2, 1), P(2, 1), 2),
    ])
    def test_examples(self, norms, g, h, expected):
        assert norms.eval_norm(g, h).value == expected

    def test_integer_target_is_lifted(self, norms):
        assert norms.eval_norm(P(2, 1), UniPoly.from_ints([0, 1], Z)).value == 2

    def test_shared_root(self, norms):
        g = P(1, 0, 1)
        result = norms.eval_norm(g, g)
        assert result.zero and result.value == 0

    def test_multiplicative_in_target(self, norms, family):
        g = family.build(mis(3, 2, 2))
        h1 = family.critical_orbit_poly(3, 1).to_ring(g.ring)
        h2 = family.critical_orbit_poly(3, 2).to_ring(g.ring)
        product = norms.eval_norm(g, poly_mul(h1, h2)).value
        assert product == norms.eval_norm(g, h1).value * norms.eval_norm(g, h2).value

    def test_invariant_under_conjugate_zeta(self, norms, family):
        values = set()
        for s in (1, 2, 3, 4):
            g = family.build(mis(5, 2, 1, k=5, s=s))
            values.add(norms.eval_norm(g, family.critical_orbit_poly(5, 1)).value)
        assert values == {5}

    def test_ring_mismatch(self, norms):
        with pytest.raises(RingMismatch):
            norms.eval_norm(P(2, 1), P(0, 1, ring=RingTag.cyclotomic(4)))

    def test_prime_field_is_rejected(self, norms):
        f = UniPoly.from_ints([1, 1], RingTag.prime_field(5))
        with pytest.raises(RingMismatch):
            norms.eval_norm(f, f)


class TestIsUnitAtRoots:
    def test_unit(self, norms):
        assert norms.is_unit_at_roots(P(2, 2, 2, 1), P(1, 0, 1))

    def test_nonunit(self, norms):
        assert not norms.is_unit_at_roots(P(2, 1), P(0, 1))
        # (2 + i)(2 - i) = 5
        assert not norms.is_unit_at_roots(P(1, 0, 1), P(2, 1))
        assert norms.eval_norm(P(1, 0, 1), P(2, 1)).value == 5


class TestOrbitNorms:
    def test_quadratic_signs(self, norms, family):
        g = family.build(mis(2, 2, 1))
        assert [r.signed for r in norms.orbit_norms(g, 2, 3)] == [-2, 2, 2]

    def test_agrees_with_prs(self, norms, family):
        for d in (2, 3, 4):
            for m in (2, 3):
                for n in (1, 2):
                    g = family.build(mis(d, m, n))
                    expected = [norms.signed_norm(g, family.critical_orbit_poly(d, i), "prs") for i in range(1, 4)]
                    assert [r.signed for r in norms.orbit_norms(g, d, 3)] == expected

    def test_prime_field_is_rejected(self, norms):
        g = UniPoly.from_ints([1, 1], RingTag.prime_field(7))
        with pytest.raises(RingMismatch):
            norms.orbit_norms(g, 2, 1)


class TestMethodsAgree:
    def test_prs_and_modular_agree_on_grid(self, norms, family):
        for d in (2, 3, 4):
            for m in (2, 3):
                for n in (1, 2):
                    g = family.build(mis(d, m, n))
                    for i in range(1, 4):
                        h = family.critical_orbit_poly(d, i)
                        assert norms.signed_norm(g, h, "prs") == norms.signed_norm(g, h, "modular")

    def test_configured_method(self, family):
        service = NormService(AppSettings(norm=NormSettings(method="modular")))
        g = family.build(mis(2, 3, 1))
        assert service.eval_norm(g, family.critical_orbit_poly(2, 1)).value == 2


def test_element_norm():
    z = CyclotomicElement.generator(4)
    assert NormService.element_norm(CyclotomicElement.one(4) - z) == 2
