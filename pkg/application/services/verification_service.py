# application/services/verification_service.py
"""Исполняемые утверждения: каждое дает VerificationReport с точными значениями.

Ожидаемые значения считаются только по замкнутым формулам (D, M, S, N_{j,n}, p),
вычисленные берутся из норм результантов и точных многочленных тождеств.
"""
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import structlog
from sympy import factorint

from core.config import AppSettings, get_settings
from core.exceptions import LimitExceeded, NonMonic, NonZeroRemainder, NotPurePower
from domain.arithmetic import (
    divisors,
    mobius_sum,
    prime_divisors,
    prime_power,
)
from domain.entities.report import VerificationReport
from domain.modular import is_squarefree
from domain.value_objects.cyclotomic import CyclotomicElement
from domain.value_objects.family import FamilySpec, ZetaDescriptor
from domain.value_objects.norm import NormResult
from domain.value_objects.polynomial import (
    UniPoly,
    cyc_norm,
    cyclotomic_polynomial,
    poly_mul,
    poly_pow,
    resultant,
)
from domain.value_objects.rings import RingTag
from application.services.certifier_service import CertifierService
from application.services.newton_service import (
    binomial_valuation_points,
    expected_binomial_slopes,
    expected_binomial_vertices,
    lower_hull,
)
from application.services.norm_service import NormService, prime_power_decompose
from application.services.orbit_service import FamilyService, gleason_degree, misiurewicz_degree

logger = structlog.get_logger(__name__)

NOT_PRIME_POWER = "d not a prime power"


@dataclass(frozen=True)
class IdentityBounds:
    """Диапазоны для verify_identities"""
    N_max: int = 6
    mobius_sum_max: int = 1000
    n_max: int = 6
    j_max: int = 3
    l_max: int = 4
    m: int = 3
    n: int = 1
    w_l_max: int = 2
    i_max: int = 3
    support: bool = False


def tail_size(d: int, j: int, n: int) -> int:
    """N_{j,n} = d^{j-1}, минус 1 при n | j-1"""
    return d ** (j - 1) - (1 if (j - 1) % n == 0 else 0)


def thm_1_5_claim(m: int, n: int, j: int, ell: int) -> str:
    if ell != n:
        return "thm1.5a"
    return "thm1.5b" if j < m else "thm1.5c"


def _unit_tag(value: int) -> str:
    return "unit" if value == 1 else "nonunit"


class VerificationService:
    """Проверка утверждений о многочленах Глисона и Мишуревича"""

    def __init__(
        self,
        settings: Optional[AppSettings] = None,
        family: Optional[FamilyService] = None,
        norms: Optional[NormService] = None,
        certifier: Optional[CertifierService] = None,
    ):
        self.settings = settings or get_settings()
        self.family = family or FamilyService(self.settings)
        self.norms = norms or NormService(self.settings)
        self.certifier = certifier or CertifierService(self.family, self.norms, self.settings)

    # --- служебное

    def _timed(self, build: Callable[[], VerificationReport]) -> VerificationReport:
        started = time.perf_counter()
        report = build()
        if self.settings.report.record_timings:
            report.elapsed_ms = int((time.perf_counter() - started) * 1000)
        return report

    def skip_cell(self, claim: str, params: Dict[str, Any], reason: str) -> VerificationReport:
        return VerificationReport.skipped(claim, params, reason)

    @staticmethod
    def _render_norm(value: int, p: int) -> str:
        try:
            prime_power_decompose(value, p)
        except NotPurePower:
            return f"{value} (not a pure power of {p})"
        return str(value)

    def _orbit(self, d: int, i: int, ring: Optional[RingTag] = None) -> UniPoly:
        a = self.family.critical_orbit_poly(d, i)
        return a.to_ring(ring) if ring else a

    def _orbit_difference(self, d: int, j: int, ell: int, w: CyclotomicElement) -> UniPoly:
        """a_{j+ℓ-1} - w·a_{j-1} над кольцом элемента w"""
        ring = RingTag.cyclotomic(w.order)
        return self._orbit(d, j + ell - 1, ring) - self._orbit(d, j - 1, ring).scale(w)

    # --- Theorem 2.1: построение

    def verify_construction(self, spec: FamilySpec) -> VerificationReport:
        """Монический, степень по формуле, простые корни"""
        claim = "thm2.1"
        params = spec.to_params()

        def build() -> VerificationReport:
            if spec.is_gleason:
                expected_degree = gleason_degree(spec.d, spec.n)
            else:
                expected_degree = misiurewicz_degree(spec.d, spec.m, spec.n)
            expected = f"monic degree={expected_degree} squarefree"
            try:
                g = self.family.build(spec)
            except LimitExceeded as e:
                return VerificationReport.skipped(claim, params, str(e), expected)
            except (NonZeroRemainder, NonMonic) as e:
                logger.error("construction failed", **params, error=str(e))
                return VerificationReport.judge(claim, params, expected, f"construction failed: {e}")

            computed = " ".join([
                "monic" if g.is_monic() else "non-monic",
                f"degree={g.degree}",
                "squarefree" if is_squarefree(g) else "repeated-roots",
            ])
            return VerificationReport.judge(
                claim, params, expected, computed, evidence={"polynomial": str(g)}
            )

        return self._timed(build)

    # --- Theorem 1.1: нормы a_i

    def verify_thm_1_1(self, spec: FamilySpec, i_max: Optional[int] = None) -> List[VerificationReport]:
        claim = "thm1.1"
        params = spec.to_params()
        p = spec.prime
        if p is None:
            return [VerificationReport.skipped(claim, params, NOT_PRIME_POWER)]
        try:
            g = self.family.build(spec)
        except LimitExceeded as e:
            return [VerificationReport.skipped(claim, params, str(e))]

        # D/M = Σ μ(n/k) d^{k-1}
        exponent = gleason_degree(spec.d, spec.n)
        last = i_max or 3 * spec.n
        orbit_norms: List[NormResult] = []
        reports = []
        for i in range(1, last + 1):
            cell = {**params, "i": i}
            expected = str(p ** exponent if i % spec.n == 0 else 1)

            def build(i=i, cell=cell, expected=expected) -> VerificationReport:
                if self._orbit_fits_prs(g, spec.d, i):
                    norm, method = self.norms.eval_norm(g, self._orbit(spec.d, i)), "prs"
                else:
                    if not orbit_norms:
                        orbit_norms.extend(self.norms.orbit_norms(g, spec.d, last))
                    norm, method = orbit_norms[i - 1], "orbit-modular"
                computed = self._render_norm(norm.value, p)
                return VerificationReport.judge(
                    claim, cell, expected, computed,
                    evidence={"polynomial": str(g), "norm": norm.signed, "method": method},
                )

            reports.append(self._timed(build))
        return reports

    def _orbit_fits_prs(self, g: UniPoly, d: int, i: int) -> bool:
        """a_i строится в пределах degree_cap, а G не больше prs_degree_limit"""
        return (
            d ** (i - 1) <= self.settings.algebra.degree_cap
            and g.degree <= self.settings.norm.prs_degree_limit
        )

    # --- Theorem 1.5: G^ζ_{d,j,ℓ} в корнях G^ζ_{d,m,n}

    def verify_thm_1_5(self, spec: FamilySpec, j: int, ell: int) -> VerificationReport:
        params = {**spec.to_params(), "j": j, "l": ell}
        d, m, n = spec.d, spec.m, spec.n
        claim = thm_1_5_claim(m, n, j, ell)
        p = spec.prime
        if p is None:
            return VerificationReport.skipped(claim, params, NOT_PRIME_POWER)
        if j == m:
            return VerificationReport.skipped("thm1.5", params, "j = m is covered by the conj1-6 scan")
        if j < 2:
            return VerificationReport.skipped(claim, params, "j must be >= 2")

        def build() -> VerificationReport:
            try:
                g = self.family.build(spec)
                target = self.family.build(FamilySpec(d, j, ell, spec.zeta))
            except LimitExceeded as e:
                return VerificationReport.skipped(claim, params, str(e))

            if claim == "thm1.5a":
                expected = "1"
            elif claim == "thm1.5b":
                expected = str(p ** (gleason_degree(d, n) * tail_size(d, j, n)))
            else:
                expected = str(p ** misiurewicz_degree(d, m, n))
            try:
                norm = self.norms.eval_norm(g, target)
            except LimitExceeded as e:
                return VerificationReport.skipped(claim, params, str(e), expected)
            return VerificationReport.judge(
                claim, params, expected, self._render_norm(norm.value, p),
                evidence={"polynomial": str(g), "target": str(target), "norm": norm.signed},
            )

        return self._timed(build)

    # --- Conjecture 1.6: j = m

    def scan_conj_1_6(self, spec: FamilySpec, beyond_n: Optional[bool] = None) -> List[VerificationReport]:
        claim = "conj1.6"
        params = spec.to_params()
        if spec.prime is None:
            return [VerificationReport.skipped(claim, params, NOT_PRIME_POWER)]
        if beyond_n is None:
            beyond_n = self.settings.report.conjecture_beyond_n
        try:
            g = self.family.build(spec)
        except LimitExceeded as e:
            return [VerificationReport.skipped(claim, params, str(e))]

        last = 2 * spec.n if beyond_n else spec.n
        reports = []
        for ell in range(1, last + 1):
            cell = {**params, "j": spec.m, "l": ell}

            def build(ell=ell, cell=cell) -> VerificationReport:
                expected = "nonunit" if spec.n % ell == 0 else "unit"
                try:
                    target = self.family.build(FamilySpec(spec.d, spec.m, ell, spec.zeta))
                    norm = self.norms.eval_norm(g, target)
                except LimitExceeded as e:
                    return VerificationReport.skipped(claim, cell, str(e), expected)
                computed = _unit_tag(norm.value)
                evidence = {"polynomial": str(g), "target": str(target), "norm": norm.signed}
                if ell > spec.n:
                    return VerificationReport.skipped(
                        claim, cell, f"unspecified for l > n, computed {computed}", "unspecified"
                    )
                if computed != expected:
                    # кандидат в контрпримеры перепроверяется другим путем
                    other = "modular" if self.settings.norm.method == "prs" else "prs"
                    evidence["recheck_norm"] = self.norms.signed_norm(g, target, other)
                    evidence["recheck_method"] = other
                    logger.error("⚠️ conjecture counterexample candidate", **cell, norm=norm.value)
                return VerificationReport.judge(claim, cell, expected, computed, evidence=evidence)

            reports.append(self._timed(build))
        return reports

    # --- Theorem 1.4 (Lehmer)

    def verify_lehmer(self, m: int, n: int) -> VerificationReport:
        """Φ_m(ζ_n) не единица тогда и только тогда, когда m = p^k·n"""
        claim = "lehmer"
        params = {"m": m, "n": n}
        if not m > n >= 1:
            return VerificationReport.skipped(claim, params, "needs m > n >= 1")

        def build() -> VerificationReport:
            expected = "nonunit" if m % n == 0 and prime_power(m // n) else "unit"
            ring = RingTag.cyclotomic(n)
            value = cyclotomic_polynomial(m).to_ring(ring)(CyclotomicElement.generator(n))
            norm = cyc_norm(value)
            return VerificationReport.judge(
                claim, params, expected, _unit_tag(abs(norm)), evidence={"norm": norm}
            )

        return self._timed(build)

    # --- тождества

    def check_mobius_inversion(self, d: int, big_n: int) -> VerificationReport:
        """a_N = ∏_{k|N} G_{d,0,k}"""
        claim = "ident.mobius-inv"
        params = {"d": d, "n": big_n}

        def build() -> VerificationReport:
            try:
                product = UniPoly.one(RingTag.integer())
                for k in divisors(big_n):
                    product = poly_mul(product, self.family.gleason_poly(d, k))
                orbit = self._orbit(d, big_n)
            except LimitExceeded as e:
                return VerificationReport.skipped(claim, params, str(e), "identity")
            return VerificationReport.judge(
                claim, params, "identity", "identity" if product == orbit else "mismatch"
            )

        return self._timed(build)

    def check_mobius_sum(self, bound: int) -> VerificationReport:
        """Σ_{t|N} μ(N/t) = [N = 1] для N <= bound"""
        claim = "ident.mobius-sum"
        params = {"n": bound}

        def build() -> VerificationReport:
            bad = [N for N in range(1, bound + 1) if mobius_sum(N) != (1 if N == 1 else 0)]
            return VerificationReport.judge(claim, params, "0 mismatches", f"{len(bad)} mismatches")

        return self._timed(build)

    def check_gleason_resultant(self, d: int, n1: int, n2: int) -> VerificationReport:
        """|Res(G_{d,0,n1}, G_{d,0,n2})| = 1 при n1 != n2"""
        claim = "ident.gleason-res"
        params = {"d": d, "n": n1, "l": n2}

        def build() -> VerificationReport:
            try:
                value = resultant(self.family.gleason_poly(d, n1), self.family.gleason_poly(d, n2))
            except LimitExceeded as e:
                return VerificationReport.skipped(claim, params, str(e), "1")
            return VerificationReport.judge(claim, params, "1", str(abs(value)))

        return self._timed(build)

    def check_bek_congruence(self, d: int, j: int, ell: int) -> VerificationReport:
        """H_{d,j,ℓ} ≡ G_{d,0,ℓ}^{(d-1)·N_{j,ℓ}} (mod p) по коэффициентам"""
        claim = "ident.bek10"
        params = {"d": d, "j": j, "l": ell}
        pp = prime_power(d)
        if pp is None:
            return VerificationReport.skipped(claim, params, NOT_PRIME_POWER)
        p = pp[0]

        def build() -> VerificationReport:
            field = RingTag.prime_field(p)
            try:
                full = self.family.full_conjugate_product(d, j, ell).to_ring(field)
                gleason = self.family.gleason_poly(d, ell).to_ring(field)
                power = poly_pow(gleason, (d - 1) * tail_size(d, j, ell))
            except LimitExceeded as e:
                return VerificationReport.skipped(claim, params, str(e), "congruent")
            return VerificationReport.judge(
                claim, params, "congruent", "congruent" if full == power else "different",
                evidence={"H_mod_p": str(full), "G_power_mod_p": str(power)},
            )

        return self._timed(build)

    def _all_w_norms(self, spec: FamilySpec, j: int, ell: int) -> List[int]:
        """Нормы a_{j+ℓ-1} - w·a_{j-1} по корням G для всех w^d = 1, w != 1 (в Z[ζ_d])"""
        d = spec.d
        big = RingTag.cyclotomic(d)
        g = self.family.build(spec).to_ring(big)
        values = []
        for s in range(1, d):
            w = CyclotomicElement.root_of_unity(d, s)
            values.append(self.norms.eval_norm(g, self._orbit_difference(d, j, ell, w)).value)
        return values

    def check_w_independence(self, spec: FamilySpec, j: int, ell: int) -> VerificationReport:
        """Норма ⟨a_{j+ℓ-1}(c₀) - w·a_{j-1}(c₀)⟩ не зависит от w != 1 при 2 <= j <= m-1"""
        claim = "ident.w-indep"
        params = {**spec.to_params(), "j": j, "l": ell}
        if spec.prime is None:
            return VerificationReport.skipped(claim, params, NOT_PRIME_POWER)
        if not 2 <= j <= spec.m - 1:
            return VerificationReport.skipped(claim, params, "needs 2 <= j <= m-1")

        def build() -> VerificationReport:
            try:
                values = self._all_w_norms(spec, j, ell)
            except LimitExceeded as e:
                return VerificationReport.skipped(claim, params, str(e), "all equal")
            computed = "all equal" if len(set(values)) == 1 else "distinct: " + ",".join(map(str, values))
            return VerificationReport.judge(claim, params, "all equal", computed, evidence={"norms": values})

        return self._timed(build)

    def check_orbit_difference(self, spec: FamilySpec, j: int, ell: int) -> VerificationReport:
        """ℓ ≢ 0 (mod n): единица для всех w != 1; ℓ ≡ 0 (mod n), w = ζ: p^{S·d^{j-1}}"""
        claim = "ident.orbit-diff"
        params = {**spec.to_params(), "j": j, "l": ell}
        p = spec.prime
        if p is None:
            return VerificationReport.skipped(claim, params, NOT_PRIME_POWER)
        if not 2 <= j <= spec.m - 1:
            return VerificationReport.skipped(claim, params, "needs 2 <= j <= m-1")

        def build() -> VerificationReport:
            try:
                if ell % spec.n:
                    values = self._all_w_norms(spec, j, ell)
                    computed = "1" if set(values) == {1} else ",".join(map(str, values))
                    return VerificationReport.judge(claim, params, "1", computed, evidence={"norms": values})
                g = self.family.build(spec)
                norm = self.norms.eval_norm(g, self._orbit_difference(spec.d, j, ell, spec.zeta.element()))
            except LimitExceeded as e:
                return VerificationReport.skipped(claim, params, str(e))
            expected = str(p ** (gleason_degree(spec.d, spec.n) * spec.d ** (j - 1)))
            return VerificationReport.judge(claim, params, expected, self._render_norm(norm.value, p))

        return self._timed(build)

    def check_tail_difference(self, spec: FamilySpec, j: int, ell: int) -> VerificationReport:
        """j > m: ℓ ≢ 0 (mod n) дает 1, иначе ⟨(1-ζ)·a_{j-1}⟩ с нормой p^D·p^{S·[n | j-1]}"""
        claim = "ident.tail-diff"
        params = {**spec.to_params(), "j": j, "l": ell}
        p = spec.prime
        if p is None:
            return VerificationReport.skipped(claim, params, NOT_PRIME_POWER)
        if j <= spec.m:
            return VerificationReport.skipped(claim, params, "needs j > m")

        def build() -> VerificationReport:
            if ell % spec.n:
                expected = "1"
            else:
                exponent = misiurewicz_degree(spec.d, spec.m, spec.n)
                if (j - 1) % spec.n == 0:
                    exponent += gleason_degree(spec.d, spec.n)
                expected = str(p ** exponent)
            try:
                g = self.family.build(spec)
                norm = self.norms.eval_norm(g, self._orbit_difference(spec.d, j, ell, spec.zeta.element()))
            except LimitExceeded as e:
                return VerificationReport.skipped(claim, params, str(e), expected)
            return VerificationReport.judge(claim, params, expected, self._render_norm(norm.value, p))

        return self._timed(build)

    def check_common_root(self, spec: FamilySpec) -> List[VerificationReport]:
        """n | m-1: Res(G_{d,0,n}, a_{m+i-1} - ζ·a_{m-1}) = 0 ровно при i = n среди i | n"""
        claim = "ident.common-root"
        params = spec.to_params()
        if (spec.m - 1) % spec.n:
            return [VerificationReport.skipped(claim, params, "needs n | m-1")]
        reports = []
        for i in divisors(spec.n):
            cell = {**params, "i": i}

            def build(i=i, cell=cell) -> VerificationReport:
                expected = "zero" if i == spec.n else "nonzero"
                try:
                    gleason = self.family.gleason_poly(spec.d, spec.n).to_ring(spec.ring)
                    h = self._orbit_difference(spec.d, spec.m, i, spec.zeta.element())
                    value = resultant(gleason, h)
                except LimitExceeded as e:
                    return VerificationReport.skipped(claim, cell, str(e), expected)
                return VerificationReport.judge(claim, cell, expected, "zero" if value.is_zero() else "nonzero")

            reports.append(self._timed(build))
        return reports

    def check_one_minus_zeta(self, d: int) -> List[VerificationReport]:
        """N(1 - ζ_{p^{r+1}}) = p для всех p^{r+1} | d"""
        claim = "ident.one-minus-zeta"
        pp = prime_power(d)
        if pp is None:
            return [VerificationReport.skipped(claim, {"d": d}, NOT_PRIME_POWER)]
        p, e = pp
        reports = []
        for r in range(e):
            k = p ** (r + 1)
            value = cyc_norm(CyclotomicElement.one(k) - CyclotomicElement.generator(k))
            reports.append(VerificationReport.judge(claim, {"d": d, "k": k}, str(p), str(value)))
        return reports

    def check_conjugate_invariance(self, spec: FamilySpec, i: int) -> VerificationReport:
        """Норма a_i по корням G^ζ одна и та же для всех сопряженных ζ"""
        claim = "ident.conjugate-invariance"
        params = {**spec.to_params(), "i": i}

        def build() -> VerificationReport:
            try:
                h = self._orbit(spec.d, i)
                values = [
                    self.norms.eval_norm(self.family.build(spec.with_zeta(zeta)), h).value
                    for zeta in spec.zeta.conjugates()
                ]
            except LimitExceeded as e:
                return VerificationReport.skipped(claim, params, str(e), "all equal")
            computed = "all equal" if len(set(values)) == 1 else "distinct: " + ",".join(map(str, values))
            return VerificationReport.judge(claim, params, "all equal", computed, evidence={"norms": values})

        return self._timed(build)

    def check_support(self, spec: FamilySpec, i: int) -> VerificationReport:
        """Норма a_i по корням G делится только на простые делители d"""
        claim = "ident.support"
        params = {**spec.to_params(), "i": i}
        allowed = set(prime_divisors(spec.d))
        expected = "primes of d"

        def build() -> VerificationReport:
            try:
                norm = self.norms.eval_norm(self.family.build(spec), self._orbit(spec.d, i))
            except LimitExceeded as e:
                return VerificationReport.skipped(claim, params, str(e), expected)
            if norm.zero:
                return VerificationReport.judge(claim, params, expected, "zero norm")
            primes = set(int(q) for q in factorint(norm.value))
            computed = expected if primes <= allowed else "extra primes " + ",".join(map(str, sorted(primes - allowed)))
            return VerificationReport.judge(claim, params, expected, computed, evidence={"norm": norm.value})

        return self._timed(build)

    def verify_identities(self, d: int, bounds: Optional[IdentityBounds] = None) -> List[VerificationReport]:
        """Все тождества для одного d"""
        bounds = bounds or IdentityBounds()
        reports: List[VerificationReport] = []
        reports += [self.check_mobius_inversion(d, N) for N in range(1, bounds.N_max + 1)]
        reports.append(self.check_mobius_sum(bounds.mobius_sum_max))
        reports += [
            self.check_gleason_resultant(d, n1, n2)
            for n1 in range(1, bounds.n_max + 1)
            for n2 in range(n1 + 1, bounds.n_max + 1)
        ]
        if prime_power(d) is None:
            reports.append(VerificationReport.skipped("ident.bek10", {"d": d}, NOT_PRIME_POWER))
        else:
            reports += [
                self.check_bek_congruence(d, j, ell)
                for j in range(2, bounds.j_max + 1)
                for ell in range(1, bounds.l_max + 1)
            ]
        reports += self.check_one_minus_zeta(d)

        spec = FamilySpec.misiurewicz(d, bounds.m, bounds.n)
        for j in range(2, spec.m):
            for ell in range(1, bounds.w_l_max + 1):
                reports.append(self.check_w_independence(spec, j, ell))
                reports.append(self.check_orbit_difference(spec, j, ell))
        for j in range(spec.m + 1, spec.m + 3):
            for ell in range(1, bounds.w_l_max + 1):
                reports.append(self.check_tail_difference(spec, j, ell))
        for n in (1, 2):
            reports += self.check_common_root(FamilySpec.misiurewicz(d, n + 1, n))
        for i in range(1, bounds.i_max + 1):
            reports.append(self.check_conjugate_invariance(spec, i))
            if bounds.support:
                reports.append(self.check_support(spec, i))
        return reports

    # --- Newton polygon и сертификаты

    def verify_newton(self, p: int, e: int) -> VerificationReport:
        """Вершины (p^r, e-r) и наклоны -1/(p^{r+1} - p^r) для (1+t)^{p^e} - 1"""
        claim = "newton.3.4"
        params = {"d": p ** e, "k": p, "i": e}

        def render(points, slopes) -> str:
            vertices = " ".join(f"({point.x},{point.y})" for point in points)
            return f"{vertices} slopes {' '.join(str(s) for s in slopes)}"

        def build() -> VerificationReport:
            expected = render(expected_binomial_vertices(p, e), expected_binomial_slopes(p, e))
            try:
                polygon = lower_hull(binomial_valuation_points(p, e))
            except LimitExceeded as exc:
                return VerificationReport.skipped(claim, params, str(exc), expected)
            computed = render(polygon.vertices, [slope for slope, _ in polygon.slopes])
            return VerificationReport.judge(claim, params, expected, computed)

        return self._timed(build)

    def verify_certificate(self, spec: FamilySpec, degree_bound: bool = False) -> VerificationReport:
        claim = "certify.degree-bound" if degree_bound else "certify"
        params = spec.to_params()

        def build() -> VerificationReport:
            try:
                if degree_bound:
                    certificate = self.certifier.degree_bound_certificate(spec)
                else:
                    certificate = self.certifier.certify_irreducible(spec)
            except LimitExceeded as e:
                return VerificationReport.skipped(claim, params, str(e), "proven")
            if not certificate.proven:
                # Inconclusive ничего не опровергает
                return VerificationReport.skipped(claim, params, f"inconclusive: {certificate.reason}", "proven")
            computed = "proven" if self.certifier.recheck(certificate) else "recheck failed"
            return VerificationReport.judge(claim, params, "proven", computed, evidence=certificate.to_dict())

        return self._timed(build)


# ---------------------------------------------------------------------------
# Сетка и пул процессов

Cell = Tuple[str, Dict[str, Any]]

_worker_service: Optional[VerificationService] = None


def _init_worker(settings: AppSettings) -> None:
    global _worker_service
    _worker_service = VerificationService(settings)


def _run_cell(cell: Cell) -> List[VerificationReport]:
    method, kwargs = cell
    result = getattr(_worker_service, method)(**kwargs)
    return result if isinstance(result, list) else [result]


def _zeta_orders(d: int) -> List[int]:
    return [k for k in divisors(d) if k > 1]


def _beyond(claim: str, params: Dict[str, Any], degree: int, limit: int) -> Cell:
    """Ячейка за пределами сетки остается в отчете как skipped"""
    reason = f"degree {degree} above grid limit {limit}"
    return "skip_cell", {"claim": claim, "params": params, "reason": reason}


def desk_grid(settings: Optional[AppSettings] = None) -> Iterator[Cell]:
    """Ячейки полного прогона; порядок отчетов потом восстанавливается сортировкой"""
    settings = settings or get_settings()
    grid = settings.grid
    build_limit = grid.construction_degree_limit

    for d in (2, 3, 4, 5):
        for k in _zeta_orders(d):
            for m in range(2, 6):
                for n in range(1, 5):
                    spec = FamilySpec(d, m, n, ZetaDescriptor(k))
                    degree = misiurewicz_degree(d, m, n)
                    if degree <= build_limit:
                        yield "verify_construction", {"spec": spec}
                    else:
                        yield _beyond("thm2.1", spec.to_params(), degree, build_limit)

    # нормы a_i для больших G идут модульным путем по орбите
    for d in (2, 3, 4, 5):
        for m in range(2, 6):
            for n in range(1, 5):
                spec = FamilySpec.misiurewicz(d, m, n)
                degree = misiurewicz_degree(d, m, n)
                if degree <= build_limit:
                    yield "verify_thm_1_1", {"spec": spec}
                else:
                    yield _beyond("thm1.1", spec.to_params(), degree, build_limit)
    yield "verify_thm_1_1", {"spec": FamilySpec.misiurewicz(6, 2, 1)}

    for d in (2, 3, 4, 5):
        for m in range(2, 5):
            for n in range(1, 4):
                spec = FamilySpec.misiurewicz(d, m, n)
                for j in range(2, 5):
                    for ell in range(1, 5):
                        if j == m:
                            continue
                        degree = max(misiurewicz_degree(d, m, n), misiurewicz_degree(d, j, ell))
                        if degree <= grid.norm_degree_limit:
                            yield "verify_thm_1_5", {"spec": spec, "j": j, "ell": ell}
                        else:
                            params = {**spec.to_params(), "j": j, "l": ell}
                            yield _beyond(thm_1_5_claim(m, n, j, ell), params, degree, grid.norm_degree_limit)

    for d in (2, 3):
        for m in range(2, 5):
            for n in range(1, 4):
                spec = FamilySpec.misiurewicz(d, m, n)
                degree = max(misiurewicz_degree(d, m, ell) for ell in range(1, n + 1))
                if degree <= build_limit:
                    yield "scan_conj_1_6", {"spec": spec}
                else:
                    yield _beyond("conj1.6", spec.to_params(), degree, build_limit)

    for m in range(2, 31):
        for n in range(1, m):
            yield "verify_lehmer", {"m": m, "n": n}

    for d in (2, 3, 4):
        yield "verify_identities", {"d": d}

    for p in (2, 3, 5, 7, 11, 13):
        for e in (1, 2, 3):
            if p ** e <= 2197:
                yield "verify_newton", {"p": p, "e": e}
            else:
                yield _beyond("newton.3.4", {"d": p ** e, "k": p, "i": e}, p ** e, 2197)

    for m in range(2, 5):
        for n in range(1, 4):
            spec = FamilySpec.misiurewicz(2, m, n)
            degree = misiurewicz_degree(2, m, n)
            if degree <= grid.certify_degree_limit:
                yield "verify_certificate", {"spec": spec}
            else:
                yield _beyond("certify", spec.to_params(), degree, grid.certify_degree_limit)
    # сертификат по ветвлению стоит одной нормы G(0), ограничение степени не нужно
    for d in (2, 3, 4, 5):
        for m in range(2, 5):
            yield "verify_certificate", {"spec": FamilySpec.misiurewicz(d, m, 1), "degree_bound": True}


def run_cells(cells: Sequence[Cell], settings: Optional[AppSettings] = None, jobs: Optional[int] = None) -> List[VerificationReport]:
    """Ячейки независимы; результат отсортирован детерминированно"""
    settings = settings or get_settings()
    jobs = jobs or settings.report.jobs
    cells = list(cells)
    logger.info("🚀 running verification cells", cells=len(cells), jobs=jobs)
    if jobs <= 1:
        _init_worker(settings)
        batches = [_run_cell(cell) for cell in cells]
    else:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(settings,)) as pool:
            batches = list(pool.map(_run_cell, cells))
    reports = [report for batch in batches for report in batch]
    reports.sort(key=VerificationReport.sort_key)
    return reports
