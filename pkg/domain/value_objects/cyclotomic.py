# domain/value_objects/cyclotomic.py
"""Целые круговых полей Z[ζ_k] в степенном базисе по модулю Φ_k.

Элемент хранится как кортеж длины φ(k): коэффициент при ζ_k^i стоит на
позиции i. Представление единственно, поэтому равенство элементов это
равенство кортежей.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import List, Sequence, Tuple

from core.exceptions import DivisionByZero, NonZeroRemainder, OrderMismatch
from domain.arithmetic import divisors, totient


# ---------------------------------------------------------------------------
# Круговые многочлены как списки целых коэффициентов

def _int_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, a_i in enumerate(a):
        if a_i:
            for j, b_j in enumerate(b):
                out[i + j] += a_i * b_j
    return out


def _int_divexact_monic(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Частное a / b для приведенного b; остаток обязан быть нулем"""
    r = list(a)
    n = len(b) - 1
    if len(r) - 1 < n:
        if any(r):
            raise NonZeroRemainder("inexact division by a monic polynomial")
        return []
    q = [0] * (len(r) - n)
    for i in range(len(r) - 1, n - 1, -1):
        c = r[i]
        if c:
            q[i - n] = c
            for j in range(n + 1):
                r[i - n + j] -= c * b[j]
    if any(r):
        raise NonZeroRemainder("inexact division by a monic polynomial")
    return q


@lru_cache(maxsize=None)
def cyclotomic_coefficients(k: int) -> Tuple[int, ...]:
    """Φ_k = (x^k - 1) / ∏_{j|k, j<k} Φ_j, коэффициенты по возрастанию степени"""
    if k < 1:
        raise ValueError(f"cyclotomic polynomial needs k >= 1, got {k}")
    numerator = [-1] + [0] * (k - 1) + [1]
    denominator = [1]
    for j in divisors(k)[:-1]:
        denominator = _int_mul(denominator, cyclotomic_coefficients(j))
    return tuple(_int_divexact_monic(numerator, denominator))


def _reduce_mod_cyclotomic(coeffs: Sequence[int], k: int) -> Tuple[int, ...]:
    phi = cyclotomic_coefficients(k)
    deg = len(phi) - 1
    r = list(coeffs) + [0] * max(0, deg - len(coeffs))
    for i in range(len(r) - 1, deg - 1, -1):
        c = r[i]
        if c:
            for j in range(deg):
                r[i - deg + j] -= c * phi[j]
            r[i] = 0
    return tuple(r[:deg])


# ---------------------------------------------------------------------------
# Рациональная арифметика в Q[x] для обращения

def _frac_trim(a: List[Fraction]) -> List[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _frac_divmod(a: List[Fraction], b: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    r = list(a)
    n = len(b) - 1
    if len(r) - 1 < n:
        return [], r
    q = [Fraction(0)] * (len(r) - n)
    lead = b[-1]
    for i in range(len(r) - 1, n - 1, -1):
        c = r[i] / lead
        q[i - n] = c
        if c:
            for j in range(n + 1):
                r[i - n + j] -= c * b[j]
    return _frac_trim(q), _frac_trim(r[:n])


def _frac_sub(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    size = max(len(a), len(b))
    out = [
        (a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0))
        for i in range(size)
    ]
    return _frac_trim(out)


def _frac_mul(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, a_i in enumerate(a):
        for j, b_j in enumerate(b):
            out[i + j] += a_i * b_j
    return _frac_trim(out)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclotomicElement:
    """Элемент Z[ζ_k]; k = 1 кодирует обычное целое число"""
    order: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")
        if len(self.coeffs) != totient(self.order):
            raise ValueError(
                f"Z[zeta_{self.order}] element needs {totient(self.order)} coefficients, "
                f"got {len(self.coeffs)}"
            )

    # --- конструкторы

    @classmethod
    def from_int(cls, k: int, value: int) -> "CyclotomicElement":
        return cls(k, (value,) + (0,) * (totient(k) - 1))

    @classmethod
    def zero(cls, k: int) -> "CyclotomicElement":
        return cls.from_int(k, 0)

    @classmethod
    def one(cls, k: int) -> "CyclotomicElement":
        return cls.from_int(k, 1)

    @classmethod
    def from_coefficients(cls, k: int, coeffs: Sequence[int]) -> "CyclotomicElement":
        """Приводит представитель произвольной степени по модулю Φ_k"""
        return cls(k, _reduce_mod_cyclotomic(coeffs, k))

    @classmethod
    def root_of_unity(cls, k: int, s: int = 1) -> "CyclotomicElement":
        """ζ_k^s"""
        s %= k
        return cls.from_coefficients(k, [0] * s + [1])

    @classmethod
    def generator(cls, k: int) -> "CyclotomicElement":
        return cls.root_of_unity(k, 1)

    # --- свойства

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    # --- арифметика

    def _check(self, other: "CyclotomicElement") -> None:
        if not isinstance(other, CyclotomicElement):
            raise TypeError(f"expected CyclotomicElement, got {type(other).__name__}")
        if other.order != self.order:
            raise OrderMismatch(f"Z[zeta_{self.order}] vs Z[zeta_{other.order}]")

    def __add__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        self._check(other)
        return CyclotomicElement(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        self._check(other)
        return CyclotomicElement(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CyclotomicElement":
        return CyclotomicElement(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        self._check(other)
        if len(self.coeffs) == 1:
            return CyclotomicElement(self.order, (self.coeffs[0] * other.coeffs[0],))
        return CyclotomicElement.from_coefficients(self.order, _int_mul(self.coeffs, other.coeffs))

    def scale(self, factor: int) -> "CyclotomicElement":
        return CyclotomicElement(self.order, tuple(factor * a for a in self.coeffs))

    def divide_exact_int(self, divisor: int) -> "CyclotomicElement":
        if divisor == 0:
            raise DivisionByZero("division of a cyclotomic integer by 0")
        if any(c % divisor for c in self.coeffs):
            raise NonZeroRemainder(f"{self} is not divisible by {divisor}")
        return CyclotomicElement(self.order, tuple(c // divisor for c in self.coeffs))

    def __pow__(self, exponent: int) -> "CyclotomicElement":
        if exponent < 0:
            raise ValueError("negative powers live in Q(zeta); use cyc_invert")
        result = CyclotomicElement.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # --- автоморфизмы и вложения

    def conjugate(self, j: int) -> "CyclotomicElement":
        """Образ при автоморфизме ζ ↦ ζ^j, gcd(j, k) = 1"""
        k = self.order
        if gcd(j, k) != 1:
            raise ValueError(f"exponent {j} is not a unit modulo {k}")
        image = [0] * (k * len(self.coeffs))
        for i, c in enumerate(self.coeffs):
            image[(i * j) % k] += c
        return CyclotomicElement.from_coefficients(k, image)

    def lift(self, target_order: int) -> "CyclotomicElement":
        """Вложение Z[ζ_k] → Z[ζ_K] при k | K: ζ_k = ζ_K^{K/k}"""
        k = self.order
        if target_order % k:
            raise OrderMismatch(f"cannot embed Z[zeta_{k}] into Z[zeta_{target_order}]")
        step = target_order // k
        image = [0] * (step * len(self.coeffs))
        for i, c in enumerate(self.coeffs):
            image[i * step] += c
        return CyclotomicElement.from_coefficients(target_order, image)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                power = "z" if i == 1 else f"z^{i}"
                if c == 1:
                    terms.append(power)
                elif c == -1:
                    terms.append(f"-{power}")
                else:
                    terms.append(f"{c}*{power}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


@dataclass(frozen=True)
class RationalCyclotomic:
    """Элемент Q(ζ_k) в виде числитель / натуральный знаменатель"""
    numerator: CyclotomicElement
    denominator: int

    def __post_init__(self):
        if self.denominator < 1:
            raise ValueError("denominator must be positive")

    @classmethod
    def reduced(cls, numerator: CyclotomicElement, denominator: int) -> "RationalCyclotomic":
        if denominator == 0:
            raise DivisionByZero("zero denominator")
        if denominator < 0:
            numerator, denominator = -numerator, -denominator
        g = gcd(numerator.content(), denominator)
        if g > 1:
            numerator = numerator.divide_exact_int(g)
            denominator //= g
        return cls(numerator, denominator)

    def is_integral(self) -> bool:
        return self.denominator == 1

    def __mul__(self, other: CyclotomicElement) -> "RationalCyclotomic":
        return RationalCyclotomic.reduced(self.numerator * other, self.denominator)


# ---------------------------------------------------------------------------
# Операции модуля точной алгебры

def cyc_arith(a: CyclotomicElement, b: CyclotomicElement, op: str) -> CyclotomicElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def cyc_invert(a: CyclotomicElement) -> RationalCyclotomic:
    """Обратный элемент в Q(ζ_k) через расширенный алгоритм Евклида с Φ_k"""
    if a.is_zero():
        raise DivisionByZero(f"zero has no inverse in Q(zeta_{a.order})")

    phi = [Fraction(c) for c in cyclotomic_coefficients(a.order)]
    r0: List[Fraction] = phi
    r1: List[Fraction] = _frac_trim([Fraction(c) for c in a.coeffs])
    s0: List[Fraction] = []
    s1: List[Fraction] = [Fraction(1)]
    # Φ_k неприводим, а deg A < deg Φ_k, поэтому цепочка оканчивается константой
    while len(r1) > 1:
        q, r = _frac_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _frac_sub(s0, _frac_mul(q, s1))

    constant = r1[0]
    inverse = [c / constant for c in s1]
    _, inverse = _frac_divmod(inverse, phi)

    denominator = 1
    for c in inverse:
        denominator = denominator * c.denominator // gcd(denominator, c.denominator)
    numerator = [int(c * denominator) for c in inverse]
    element = CyclotomicElement.from_coefficients(a.order, numerator)
    return RationalCyclotomic.reduced(element, denominator)


def cyc_exact_quotient(a: CyclotomicElement, b: CyclotomicElement) -> CyclotomicElement:
    """a / b в Z[ζ_k]; NonZeroRemainder если частное не целое"""
    if a.order != b.order:
        raise OrderMismatch(f"Z[zeta_{a.order}] vs Z[zeta_{b.order}]")
    if b.is_zero():
        raise DivisionByZero(f"division by zero in Z[zeta_{b.order}]")
    if a.is_zero():
        return a
    if b.is_rational():
        return a.divide_exact_int(b.coeffs[0])
    inverse = cyc_invert(b)
    return (a * inverse.numerator).divide_exact_int(inverse.denominator)
