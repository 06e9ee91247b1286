# application/services/orbit_service.py
import threading
from typing import Dict, List, Optional, Tuple

import structlog

from core.config import AppSettings, get_settings
from core.exceptions import LimitExceeded, NonMonic, NonZeroRemainder
from domain.arithmetic import divisors, mobius, mobius_weighted_power_sum
from domain.modular import divides_at_prime
from domain.value_objects.family import FamilySpec
from domain.value_objects.polynomial import UniPoly, poly_exact_div, poly_mul, poly_pow
from domain.value_objects.rings import RingTag
from infrastructure.cache.cache_interface import CacheInterface
from infrastructure.cache.simple_cache import SimpleCache
from infrastructure.serialization.poly_codec import load_or_build

logger = structlog.get_logger(__name__)


class OrbitCache:
    """Многочлены критической орбиты a_i(c) для фиксированного d.

    a_0 = 0, a_i = a_{i-1}^d + c, deg a_i = d^{i-1}. Читать можно из
    нескольких потоков, новые элементы добавляются под замком.
    """

    def __init__(self, d: int, degree_cap: int):
        if d < 2:
            raise ValueError(f"d must be >= 2, got {d}")
        self.d = d
        self.degree_cap = degree_cap
        self._c = UniPoly.variable()
        self._entries: Dict[int, UniPoly] = {0: UniPoly.zero(RingTag.integer()), 1: self._c}
        self._lock = threading.Lock()

    def degree_of(self, i: int) -> int:
        return 0 if i == 0 else self.d ** (i - 1)

    def get(self, i: int) -> UniPoly:
        if i < 0:
            raise ValueError(f"orbit index must be >= 0, got {i}")
        cached = self._entries.get(i)
        if cached is not None:
            return cached
        if self.degree_of(i) > self.degree_cap:
            raise LimitExceeded(self.degree_of(i), self.degree_cap, f"a_{i}")
        with self._lock:
            top = max(self._entries)
            for j in range(top + 1, i + 1):
                previous = self._entries[j - 1]
                self._entries[j] = poly_pow(previous, self.d, self.degree_cap) + self._c
        return self._entries[i]

    def __contains__(self, i: int) -> bool:
        return i in self._entries

    def __len__(self) -> int:
        return len(self._entries)


def _by_degree(f: UniPoly) -> int:
    return f.degree


def _split_by_mobius(n: int) -> Tuple[List[int], List[int]]:
    """Делители k | n с μ(n/k) = +1 и с μ(n/k) = -1"""
    positive = [k for k in divisors(n) if mobius(n // k) == 1]
    negative = [k for k in divisors(n) if mobius(n // k) == -1]
    return positive, negative


def misiurewicz_degree(d: int, m: int, n: int) -> int:
    """Σ μ(n/k)·d^{m+k-2} минус (при n | m-1) Σ μ(n/k)·d^{k-1}"""
    if d < 2 or m < 2 or n < 1:
        raise ValueError(f"degree formula needs d >= 2, m >= 2, n >= 1, got ({d}, {m}, {n})")
    degree = mobius_weighted_power_sum(n, d, shift=m - 1)
    if (m - 1) % n == 0:
        degree -= mobius_weighted_power_sum(n, d)
    return degree


def gleason_degree(d: int, n: int) -> int:
    return mobius_weighted_power_sum(n, d)


class FamilyService:
    """Построение многочленов Глисона и Мишуревича с мемоизацией"""

    def __init__(
        self,
        settings: Optional[AppSettings] = None,
        memo: Optional[CacheInterface] = None,
    ):
        self.settings = settings or get_settings()
        self.degree_cap = self.settings.algebra.degree_cap
        self.memo = memo if memo is not None else SimpleCache()
        self._orbits: Dict[int, OrbitCache] = {}
        self._lock = threading.Lock()

    # --- орбита

    def orbit(self, d: int) -> OrbitCache:
        cache = self._orbits.get(d)
        if cache is None:
            with self._lock:
                cache = self._orbits.setdefault(d, OrbitCache(d, self.degree_cap))
        return cache

    def critical_orbit_poly(self, d: int, i: int) -> UniPoly:
        return self.orbit(d).get(i)

    # --- сборка

    @staticmethod
    def _cancel(value: UniPoly, pending: List[UniPoly]) -> Tuple[UniPoly, List[UniPoly]]:
        """Снять все знаменатели, которые уже делят накопленное произведение"""
        remaining = []
        for factor in pending:
            if factor.degree <= value.degree and divides_at_prime(factor, value):
                try:
                    value = poly_exact_div(value, factor)
                    continue
                except NonZeroRemainder:
                    pass
            remaining.append(factor)
        return value, remaining

    def _quotient(self, numerator: List[UniPoly], denominator: List[UniPoly], ring: RingTag) -> UniPoly:
        """∏ numerator / ∏ denominator с делениями сразу после каждого умножения.

        Промежуточная степень остается около итоговой, а не суммы степеней
        всех числителей.
        """
        result = UniPoly.one(ring)
        pending = sorted(denominator, key=_by_degree, reverse=True)
        for factor in sorted(numerator, key=_by_degree, reverse=True):
            result = poly_mul(result, factor, self.degree_cap)
            result, pending = self._cancel(result, pending)
        # то, что осталось, не делит: poly_exact_div сообщит об ошибке построения
        for factor in pending:
            result = poly_exact_div(result, factor)
        return result

    def _memoized(self, key: str, build) -> UniPoly:
        return self.memo.get_or_build(f"{key}:cap{self.degree_cap}", build)

    def gleason_poly(self, d: int, n: int) -> UniPoly:
        """G_{d,0,n} = ∏_{k|n} a_k^{μ(n/k)}"""
        spec = FamilySpec.gleason(d, n)

        def build() -> UniPoly:
            orbit = self.orbit(d)
            positive, negative = _split_by_mobius(n)
            result = self._quotient(
                [orbit.get(k) for k in positive],
                [orbit.get(k) for k in negative],
                RingTag.integer(),
            )
            logger.debug("gleason polynomial built", d=d, n=n, degree=result.degree)
            return result

        return self._memoized(spec.key, build)

    def misiurewicz_poly(self, spec: FamilySpec) -> UniPoly:
        """G^ζ_{d,m,n} над Z[ζ_k]"""
        if spec.is_gleason:
            raise ValueError("misiurewicz_poly needs m >= 2; use gleason_poly for m = 0")

        def build() -> UniPoly:
            d, m, n = spec.d, spec.m, spec.n
            ring = spec.ring
            zeta = spec.zeta.element()
            orbit = self.orbit(d)
            tail = orbit.get(m - 1).to_ring(ring).scale(zeta)

            positive, negative = _split_by_mobius(n)
            numerator = [orbit.get(m + k - 1).to_ring(ring) - tail for k in positive]
            denominator = [orbit.get(m + k - 1).to_ring(ring) - tail for k in negative]
            if (m - 1) % n == 0:
                # поправка ∏ a_k^{μ(n/k)} уходит в знаменатель
                denominator += [orbit.get(k).to_ring(ring) for k in positive]
                numerator += [orbit.get(k).to_ring(ring) for k in negative]

            result = self._quotient(numerator, denominator, ring)
            if not result.is_monic():
                raise NonMonic(f"{spec} came out non-monic")
            logger.info("🧮 misiurewicz polynomial built", **spec.to_params(), degree=result.degree)
            return result

        return self._memoized(spec.key, build)

    def _construct(self, spec: FamilySpec) -> UniPoly:
        if spec.is_gleason:
            return self.gleason_poly(spec.d, spec.n)
        return self.misiurewicz_poly(spec)

    def build(self, spec: FamilySpec) -> UniPoly:
        """G для spec; при заданном cache_dir через дисковый кеш mlab-poly/1"""
        cache_dir = self.settings.cache.cache_dir
        if cache_dir is None:
            return self._construct(spec)
        return self.memo.get_or_build(
            f"{spec.key}:disk",
            lambda: load_or_build(spec, cache_dir, self._construct),
        )

    def full_conjugate_product(self, d: int, j: int, ell: int) -> UniPoly:
        """H_{d,j,ℓ} = ∏_{w^d=1, w≠1} G^w_{d,j,ℓ} над Z.

        ∏_{w^d=1}(X - wY) = X^d - Y^d, поэтому множитель при k | ℓ равен
        (a_{j+k} - a_j) / (a_{j+k-1} - a_{j-1}); поправка Глисона входит в степени d - 1.
        """
        if j < 2 or ell < 1:
            raise ValueError(f"full conjugate product needs j >= 2, l >= 1, got ({j}, {ell})")

        def build() -> UniPoly:
            orbit = self.orbit(d)
            ring = RingTag.integer()

            def full(k: int) -> UniPoly:
                return orbit.get(j + k) - orbit.get(j)

            def trivial(k: int) -> UniPoly:
                return orbit.get(j + k - 1) - orbit.get(j - 1)

            positive, negative = _split_by_mobius(ell)
            numerator = [full(k) for k in positive] + [trivial(k) for k in negative]
            denominator = [trivial(k) for k in positive] + [full(k) for k in negative]
            if (j - 1) % ell == 0:
                denominator += [poly_pow(orbit.get(k), d - 1, self.degree_cap) for k in positive]
                numerator += [poly_pow(orbit.get(k), d - 1, self.degree_cap) for k in negative]
            result = self._quotient(numerator, denominator, ring)
            logger.debug("full conjugate product built", d=d, j=j, l=ell, degree=result.degree)
            return result

        return self._memoized(f"H_d{d}_j{j}_l{ell}", build)
