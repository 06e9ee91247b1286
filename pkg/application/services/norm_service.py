# application/services/norm_service.py
"""Нормы результантов: глобальная форма утверждений об идеалах ⟨h(c₀)⟩.

Для приведенного G над Z[ζ_k] и h над Z или Z[ζ_k] считается
|N_{Q(ζ_k)/Q}(Res_c(G, h))|: вклад каждого корня c₀ равен |N_{K/Q}(h(c₀))|,
и вклады перемножаются по всем корням G независимо от его разложения.
"""
from typing import List, Optional

import structlog

from core.config import AppSettings, get_settings
from core.exceptions import NotPurePower, RingMismatch
from domain.arithmetic import is_prime
from domain.modular import critical_orbit_norms, modular_resultant_norm
from domain.value_objects.cyclotomic import CyclotomicElement
from domain.value_objects.norm import NormResult
from domain.value_objects.polynomial import UniPoly, cyc_norm, resultant
from domain.value_objects.rings import RingKind

logger = structlog.get_logger(__name__)


def prime_power_decompose(value: int, p: int) -> int:
    """v такое, что value = p^v; NotPurePower при постороннем простом делителе"""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if value < 1:
        raise NotPurePower(value, p)
    rest, v = value, 0
    while rest % p == 0:
        rest //= p
        v += 1
    if rest != 1:
        raise NotPurePower(value, p)
    return v


class NormService:
    """Вычисление норм результантов двумя путями: PRS и модульным"""

    def __init__(self, settings: Optional[AppSettings] = None):
        self.settings = settings or get_settings()

    def _align(self, g: UniPoly, h: UniPoly) -> UniPoly:
        if g.ring.kind not in (RingKind.CYCLOTOMIC, RingKind.INTEGER):
            raise RingMismatch(f"norms are defined over Z or Z[zeta_k], got {g.ring}")
        if h.ring == g.ring:
            return h
        if h.ring.kind == RingKind.INTEGER:
            return h.to_ring(g.ring)
        raise RingMismatch(f"cannot evaluate {h.ring} polynomial at roots of a {g.ring} polynomial")

    def signed_norm(self, g: UniPoly, h: UniPoly, method: Optional[str] = None) -> int:
        h = self._align(g, h)
        method = method or self.settings.norm.method
        if method == "modular":
            return modular_resultant_norm(g, h, self.settings.norm.modular_prime_bits)
        value = resultant(g, h)
        if g.ring.kind == RingKind.INTEGER:
            return value
        return cyc_norm(value)

    def eval_norm(self, g: UniPoly, h: UniPoly, method: Optional[str] = None) -> NormResult:
        """|N(Res_c(G, h))| и флаг общего корня"""
        result = NormResult.from_signed(self.signed_norm(g, h, method))
        logger.debug("norm evaluated", degree=g.degree, target_degree=h.degree, value=result.value)
        return result

    def orbit_norms(self, g: UniPoly, d: int, i_max: int) -> List[NormResult]:
        """Нормы a_1, ..., a_{i_max} по корням G семейства степени d (модульный путь)"""
        if g.ring.kind not in (RingKind.CYCLOTOMIC, RingKind.INTEGER):
            raise RingMismatch(f"norms are defined over Z or Z[zeta_k], got {g.ring}")
        signed = critical_orbit_norms(g, d, i_max, self.settings.norm.modular_prime_bits)
        return [NormResult.from_signed(value) for value in signed]

    def is_unit_at_roots(self, g: UniPoly, h: UniPoly) -> bool:
        """h(c₀) единица для всех корней c₀ многочлена G"""
        return self.eval_norm(g, h).is_unit

    @staticmethod
    def element_norm(a: CyclotomicElement) -> int:
        return cyc_norm(a)
