# application/services/certifier_service.py
"""Сертификаты неприводимости над Q(ζ) через редукцию по простому q.

Приведенный многочлен над Z[ζ_k], неприводимый (и бесквадратный) по
модулю простого идеала над q ∤ k, неприводим над Q(ζ_k). Обратное не
верно: Inconclusive ничего не доказывает.
"""
import random
from typing import List, Optional

import structlog
from sympy import primerange

from core.config import AppSettings, get_settings
from core.exceptions import BadPrime, LimitExceeded, NonMonic
from domain.arithmetic import multiplicative_order, prime_divisors, prime_power
from domain.entities.certificate import (
    CertificateKind,
    CertificateStatus,
    IrreducibilityCertificate,
    ResidueField,
)
from domain.value_objects.family import FamilySpec
from domain.value_objects.polynomial import (
    UniPoly,
    cyclotomic_polynomial,
    derivative,
    poly_exact_div,
    poly_gcd,
    poly_powmod,
    poly_rem,
)
from domain.value_objects.rings import RingKind, RingTag, ring_for
from application.services.norm_service import NormService
from application.services.orbit_service import FamilyService

logger = structlog.get_logger(__name__)


def rabin_irreducible(f: UniPoly) -> bool:
    """Критерий Рабина: x^{Q^n} ≡ x (mod f) и gcd(x^{Q^{n/r}} - x, f) = 1 для простых r | n"""
    if not f.ring.is_field:
        raise ValueError(f"Rabin test needs a finite field, got {f.ring}")
    if not f.is_monic():
        raise NonMonic(f"Rabin test needs a monic polynomial, got leading {f.leading_coefficient}")
    n = f.degree
    if n < 1:
        raise ValueError("Rabin test needs degree >= 1")
    if n == 1:
        return True

    field_size = f.ring.field_size
    x = poly_rem(UniPoly.variable(f.ring), f)
    # frobenius[i] = x^{Q^i} mod f
    frobenius = [x]
    for _ in range(n):
        frobenius.append(poly_powmod(frobenius[-1], field_size, f))

    for r in prime_divisors(n):
        if poly_gcd(frobenius[n // r] - x, f).degree != 0:
            return False
    return frobenius[n] == x


def _random_poly(ring: RingTag, degree: int, rng: random.Random) -> UniPoly:
    q = ring.order
    return UniPoly.from_ints([rng.randrange(q) for _ in range(degree)], ring)


def _splitting_element(a: UniPoly, f: UniPoly, t: int) -> UniPoly:
    q = f.ring.order
    if q == 2:
        # след F_{2^t} → F_2
        term, total = poly_rem(a, f), poly_rem(a, f)
        for _ in range(t - 1):
            term = poly_powmod(term, 2, f)
            total = total + term
        return total
    return poly_powmod(a, (q ** t - 1) // 2, f) - UniPoly.one(f.ring)


def equal_degree_factors(f: UniPoly, t: int, rng: random.Random) -> List[UniPoly]:
    """Кантор–Цассенхаус: f бесквадратен, все его неприводимые множители степени t"""
    if f.degree <= t:
        return [f]
    while True:
        a = _random_poly(f.ring, f.degree, rng)
        if a.degree < 1:
            continue
        b = _splitting_element(a, f, t)
        if b.is_zero():
            continue
        g = poly_gcd(b, f)
        if 0 < g.degree < f.degree:
            return equal_degree_factors(g, t, rng) + equal_degree_factors(poly_exact_div(f, g), t, rng)


def build_residue_field(k: int, q: int) -> ResidueField:
    """F_q[y]/(φ), φ это наименьший (лексикографически) неприводимый множитель Φ_k mod q"""
    if k % q == 0:
        raise BadPrime(f"q = {q} divides the root of unity order {k}")
    t = multiplicative_order(q, k)
    phi = cyclotomic_polynomial(k).to_ring(RingTag.prime_field(q))
    factors = equal_degree_factors(phi, t, random.Random(q * 1_000_003 + k))
    modulus = min(factors, key=lambda u: u.coeffs)
    return ResidueField(q=q, t=t, modulus=modulus)


def reduce_to_residue(g: UniPoly, field: ResidueField) -> UniPoly:
    """Образ многочлена над Z или Z[ζ_k] в F_{q^t}[c] при ζ_k ↦ y"""
    q = field.q
    if g.ring.kind == RingKind.CYCLOTOMIC and g.ring.order % q == 0:
        raise BadPrime(f"q = {q} divides the root of unity order {g.ring.order}")
    target = field.ring
    impl = ring_for(target)
    if g.ring.kind == RingKind.INTEGER:
        return g.to_ring(target)
    if g.ring.kind != RingKind.CYCLOTOMIC:
        raise ValueError(f"cannot reduce a polynomial over {g.ring}")

    if field.t == 1:
        # φ = y - r
        root = (-field.modulus.coeffs[0]) % q
        values = []
        for c in g.coeffs:
            acc = 0
            for coord in reversed(c.coeffs):
                acc = (acc * root + coord) % q
            values.append(acc)
        return UniPoly.from_coefficients(target, values)
    return UniPoly.from_coefficients(target, (impl.from_vector(c.coeffs) for c in g.coeffs))


def has_small_rational_root(g: UniPoly, bound: int) -> Optional[int]:
    impl = g.impl
    for r in sorted(range(-bound, bound + 1), key=abs):
        if impl.is_zero(g(impl.from_int(r))):
            return r
    return None


class CertifierService:
    """Поиск сертификатов неприводимости"""

    def __init__(
        self,
        family: Optional[FamilyService] = None,
        norms: Optional[NormService] = None,
        settings: Optional[AppSettings] = None,
    ):
        self.settings = settings or get_settings()
        self.family = family or FamilyService(self.settings)
        self.norms = norms or NormService(self.settings)

    def check_reduction(self, g: UniPoly, field: ResidueField) -> bool:
        """Редукция сохраняет степень, бесквадратна и неприводима по Рабину"""
        reduced = reduce_to_residue(g, field)
        if reduced.degree != g.degree:
            return False
        if reduced.degree > 1 and poly_gcd(reduced, derivative(reduced)).degree != 0:
            return False
        return rabin_irreducible(reduced)

    def certify_irreducible(self, spec: FamilySpec, q_max: Optional[int] = None) -> IrreducibilityCertificate:
        q_max = q_max or self.settings.certifier.q_max
        g = self.family.build(spec)
        params = spec.to_params()
        if not g.is_monic():
            raise NonMonic(f"{spec} is not monic")

        if g.degree > 1:
            root = has_small_rational_root(g, self.settings.certifier.rational_root_bound)
            if root is not None:
                logger.warning("polynomial has a rational root, no certificate", **params, root=root)
                return IrreducibilityCertificate(
                    spec, CertificateStatus.INCONCLUSIVE, reason=f"rational root {root}"
                )

        tried: List[int] = []
        for q in primerange(2, q_max + 1):
            q = int(q)
            if (spec.k * spec.d) % q == 0:
                continue
            tried.append(q)
            field = build_residue_field(spec.k, q)
            if self.check_reduction(g, field):
                logger.info("✅ irreducibility certificate found", **params, q=q, t=field.t)
                return IrreducibilityCertificate(
                    spec,
                    CertificateStatus.PROVEN,
                    CertificateKind.RABIN,
                    q=q,
                    residue_field=field,
                    tried=tried,
                )

        logger.info("no certificate below q_max", **params, q_max=q_max)
        return IrreducibilityCertificate(
            spec, CertificateStatus.INCONCLUSIVE, tried=tried, reason=f"no good prime q <= {q_max}"
        )

    def recheck(self, certificate: IrreducibilityCertificate) -> bool:
        """Независимая перепроверка доказанного сертификата"""
        if not certificate.proven:
            return False
        if certificate.kind == CertificateKind.DEGREE_BOUND:
            return self.degree_bound_certificate(certificate.spec).proven
        field = build_residue_field(certificate.spec.k, certificate.q)
        if field != certificate.residue_field:
            return False
        return self.check_reduction(self.family.build(certificate.spec), field)

    def degree_bound_certificate(self, spec: FamilySpec) -> IrreducibilityCertificate:
        """d = p^e, n = 1: норма a_1 по корням G равна p, а степень d^{m-1} - 1.

        Ветвление над p заставляет [Q(c₀):Q(ζ)] >= d^{m-1} - 1 = deg G.
        """
        pp = prime_power(spec.d)
        if spec.is_gleason or spec.n != 1 or pp is None:
            return IrreducibilityCertificate(
                spec,
                CertificateStatus.INCONCLUSIVE,
                CertificateKind.DEGREE_BOUND,
                reason="degree bound needs prime-power d, n = 1 and m >= 2",
            )
        p = pp[0]
        try:
            g = self.family.build(spec)
            a1 = self.family.critical_orbit_poly(spec.d, 1)
        except LimitExceeded as e:
            return IrreducibilityCertificate(
                spec, CertificateStatus.INCONCLUSIVE, CertificateKind.DEGREE_BOUND, reason=str(e)
            )
        expected_degree = spec.d ** (spec.m - 1) - 1
        norm = self.norms.eval_norm(g, a1).value
        if g.degree == expected_degree and norm == p:
            return IrreducibilityCertificate(spec, CertificateStatus.PROVEN, CertificateKind.DEGREE_BOUND)
        return IrreducibilityCertificate(
            spec,
            CertificateStatus.INCONCLUSIVE,
            CertificateKind.DEGREE_BOUND,
            reason=f"degree {g.degree} (expected {expected_degree}), norm of a_1 {norm} (expected {p})",
        )
