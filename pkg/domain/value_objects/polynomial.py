# domain/value_objects/polynomial.py
"""Плотные многочлены от одной переменной c над кольцами из rings.py.

Все операции точные. Умножение длинных многочленов идет через подстановку
Кронекера: коэффициенты упаковываются в одно большое целое, а его умножает
CPython (Карацуба для длинных чисел). Результат совпадает со школьным
умножением бит в бит.
"""
from dataclasses import dataclass
from math import gcd
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from core.config import get_settings
from core.exceptions import (
    DivisionByZero,
    LimitExceeded,
    NonMonicLeft,
    NonZeroRemainder,
    RingMismatch,
)
from domain.value_objects.cyclotomic import CyclotomicElement, cyclotomic_coefficients
from domain.value_objects.rings import Ring, RingKind, RingTag, ring_for

VARIABLE = "c"


@dataclass(frozen=True)
class UniPoly:
    """Многочлен: coeffs[i] это коэффициент при c^i, старший ненулевой"""
    ring: RingTag
    coeffs: Tuple[Any, ...] = ()

    def __post_init__(self):
        if self.coeffs and ring_for(self.ring).is_zero(self.coeffs[-1]):
            raise ValueError("UniPoly coefficients must not have trailing zeros")

    # --- конструкторы

    @classmethod
    def from_coefficients(cls, ring: RingTag, coeffs: Iterable[Any]) -> "UniPoly":
        impl = ring_for(ring)
        values = list(coeffs)
        while values and impl.is_zero(values[-1]):
            values.pop()
        return cls(ring, tuple(values))

    @classmethod
    def from_ints(cls, coeffs: Iterable[int], ring: Optional[RingTag] = None) -> "UniPoly":
        ring = ring or RingTag.integer()
        impl = ring_for(ring)
        return cls.from_coefficients(ring, (impl.from_int(c) for c in coeffs))

    @classmethod
    def zero(cls, ring: RingTag) -> "UniPoly":
        return cls(ring, ())

    @classmethod
    def one(cls, ring: RingTag) -> "UniPoly":
        return cls(ring, (ring_for(ring).one,))

    @classmethod
    def constant(cls, ring: RingTag, value: Any) -> "UniPoly":
        return cls.from_coefficients(ring, [value])

    @classmethod
    def variable(cls, ring: Optional[RingTag] = None) -> "UniPoly":
        """Многочлен c"""
        ring = ring or RingTag.integer()
        impl = ring_for(ring)
        return cls(ring, (impl.zero, impl.one))

    # --- свойства

    @property
    def impl(self) -> Ring:
        return ring_for(self.ring)

    @property
    def degree(self) -> int:
        """Степень; -1 для нулевого многочлена"""
        return len(self.coeffs) - 1

    @property
    def leading_coefficient(self) -> Any:
        if not self.coeffs:
            return self.impl.zero
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.impl.is_one(self.coeffs[-1])

    def coefficient(self, i: int) -> Any:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.impl.zero

    # --- операторы

    def __add__(self, other: "UniPoly") -> "UniPoly":
        return poly_arith(self, other, "add")

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return poly_arith(self, other, "sub")

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        return poly_arith(self, other, "mul")

    def __neg__(self) -> "UniPoly":
        impl = self.impl
        return UniPoly(self.ring, tuple(impl.neg(c) for c in self.coeffs))

    def __call__(self, x: Any) -> Any:
        return evaluate(self, x)

    def scale(self, factor: Any) -> "UniPoly":
        impl = self.impl
        return UniPoly.from_coefficients(self.ring, (impl.mul(factor, c) for c in self.coeffs))

    def to_ring(self, target: RingTag) -> "UniPoly":
        """Перенос коэффициентов в другое кольцо (Z → Z[ζ_k], Z → F_q, Z[ζ_k] → Z[ζ_K])"""
        if target == self.ring:
            return self
        source = self.ring.kind
        impl = ring_for(target)
        if source == RingKind.INTEGER:
            return UniPoly.from_coefficients(target, (impl.from_int(c) for c in self.coeffs))
        if source == RingKind.CYCLOTOMIC and target.kind == RingKind.CYCLOTOMIC:
            return UniPoly(target, tuple(c.lift(target.order) for c in self.coeffs))
        raise RingMismatch(f"cannot move a polynomial from {self.ring} to {target}")

    def __str__(self) -> str:
        return render_poly(self)


def _check_same_ring(f: UniPoly, g: UniPoly) -> None:
    if f.ring != g.ring:
        raise RingMismatch(f"polynomials over {f.ring} and {g.ring}")


def _resolve_cap(degree_cap: Optional[int]) -> int:
    return get_settings().algebra.degree_cap if degree_cap is None else degree_cap


# ---------------------------------------------------------------------------
# Умножение

def _pack(seq: Sequence[int], nbytes: int) -> int:
    half = 1 << (8 * nbytes - 1)
    raw = b"".join((c + half).to_bytes(nbytes, "little") for c in seq)
    return int.from_bytes(raw, "little") - half * _repunit(len(seq), nbytes)


def _unpack(value: int, nbytes: int, count: int) -> List[int]:
    half = 1 << (8 * nbytes - 1)
    raw = (value + half * _repunit(count, nbytes)).to_bytes(nbytes * count, "little")
    return [
        int.from_bytes(raw[i:i + nbytes], "little") - half
        for i in range(0, nbytes * count, nbytes)
    ]


def _repunit(count: int, nbytes: int) -> int:
    """Σ_{i<count} 2^{8·nbytes·i}"""
    base = 1 << (8 * nbytes)
    return ((1 << (8 * nbytes * count)) - 1) // (base - 1)


def kronecker_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Произведение целочисленных последовательностей через одно умножение длинных чисел"""
    if not a or not b:
        return []
    bound = max(abs(c) for c in a) * max(abs(c) for c in b) * min(len(a), len(b))
    if bound == 0:
        return [0] * (len(a) + len(b) - 1)
    # знаковый бит плюс запас до целого байта
    nbytes = (bound.bit_length() + 1 + 7) // 8
    product = _pack(a, nbytes) * _pack(b, nbytes)
    return _unpack(product, nbytes, len(a) + len(b) - 1)


def schoolbook_mul(impl: Ring, a: Sequence[Any], b: Sequence[Any]) -> List[Any]:
    out = [impl.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if impl.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = impl.add(out[i + j], impl.mul(x, y))
    return out


def _fast_mul(f: UniPoly, g: UniPoly) -> List[Any]:
    kind = f.ring.kind
    if kind == RingKind.INTEGER:
        return kronecker_mul(f.coeffs, g.coeffs)
    if kind == RingKind.PRIME_FIELD:
        q = f.ring.order
        return [c % q for c in kronecker_mul(f.coeffs, g.coeffs)]

    # Z[ζ_k] и F_{q^t}: векторы длины w раскладываются с шагом 2w - 1,
    # так что произведения соседних коэффициентов не перекрываются
    impl = f.impl
    width = impl.vector_width
    stride = 2 * width - 1
    padding = (0,) * (stride - width)

    def flatten(coeffs: Sequence[Any]) -> List[int]:
        flat: List[int] = []
        for c in coeffs:
            flat.extend(impl.to_vector(c))
            flat.extend(padding)
        return flat

    product = kronecker_mul(flatten(f.coeffs), flatten(g.coeffs))
    size = len(f.coeffs) + len(g.coeffs) - 1
    return [impl.from_vector(product[i * stride:(i + 1) * stride]) for i in range(size)]


def poly_mul(f: UniPoly, g: UniPoly, degree_cap: Optional[int] = None) -> UniPoly:
    _check_same_ring(f, g)
    if f.is_zero() or g.is_zero():
        return UniPoly.zero(f.ring)
    cap = _resolve_cap(degree_cap)
    degree = f.degree + g.degree
    if degree > cap:
        raise LimitExceeded(degree, cap, "product")

    threshold = get_settings().algebra.karatsuba_threshold
    if min(len(f.coeffs), len(g.coeffs)) < threshold:
        coeffs = schoolbook_mul(f.impl, f.coeffs, g.coeffs)
    else:
        coeffs = _fast_mul(f, g)
    return UniPoly.from_coefficients(f.ring, coeffs)


def poly_pow(f: UniPoly, exponent: int, degree_cap: Optional[int] = None) -> UniPoly:
    if exponent < 0:
        raise ValueError("negative polynomial power")
    cap = _resolve_cap(degree_cap)
    if f.degree * exponent > cap:
        raise LimitExceeded(f.degree * exponent, cap, "power")
    result, base = UniPoly.one(f.ring), f
    while exponent:
        if exponent & 1:
            result = poly_mul(result, base, cap)
        exponent >>= 1
        if exponent:
            base = poly_mul(base, base, cap)
    return result


def poly_arith(f: UniPoly, g: UniPoly, op: str, degree_cap: Optional[int] = None) -> UniPoly:
    """Сложение, вычитание или умножение над общим кольцом"""
    _check_same_ring(f, g)
    if op == "mul":
        return poly_mul(f, g, degree_cap)
    impl = f.impl
    combine = impl.add if op == "add" else impl.sub if op == "sub" else None
    if combine is None:
        raise ValueError(f"unknown operation {op!r}")
    size = max(len(f.coeffs), len(g.coeffs))
    return UniPoly.from_coefficients(
        f.ring, (combine(f.coefficient(i), g.coefficient(i)) for i in range(size))
    )


# ---------------------------------------------------------------------------
# Деление

def _trim(impl: Ring, values: List[Any]) -> List[Any]:
    while values and impl.is_zero(values[-1]):
        values.pop()
    return values


def poly_divmod(f: UniPoly, g: UniPoly) -> Tuple[UniPoly, UniPoly]:
    """Деление с остатком; каждое частное старших коэффициентов обязано быть в кольце"""
    _check_same_ring(f, g)
    if g.is_zero():
        raise DivisionByZero("polynomial division by zero")
    impl = f.impl
    n = g.degree
    if f.degree < n:
        return UniPoly.zero(f.ring), f

    lead = g.leading_coefficient
    inverse = impl.unit_inverse(lead)
    divisor = g.coeffs
    r = list(f.coeffs)
    q = [impl.zero] * (len(r) - n)
    for i in range(len(r) - 1, n - 1, -1):
        c = r[i]
        if impl.is_zero(c):
            continue
        c = impl.mul(c, inverse) if inverse is not None else impl.exact_quo(c, lead)
        q[i - n] = c
        for j in range(n + 1):
            r[i - n + j] = impl.sub(r[i - n + j], impl.mul(c, divisor[j]))
    return (
        UniPoly.from_coefficients(f.ring, q),
        UniPoly.from_coefficients(f.ring, r[:n]),
    )


def poly_exact_div(f: UniPoly, g: UniPoly) -> UniPoly:
    """Точное частное f / g; ненулевой остаток это ошибка построения"""
    quotient, remainder = poly_divmod(f, g)
    if not remainder.is_zero():
        raise NonZeroRemainder(
            f"degree {g.degree} divisor leaves a degree {remainder.degree} remainder"
        )
    return quotient


def poly_rem(f: UniPoly, g: UniPoly) -> UniPoly:
    return poly_divmod(f, g)[1]


def pseudo_remainder(f: UniPoly, g: UniPoly) -> UniPoly:
    """prem(f, g) = lc(g)^{deg f - deg g + 1}·f mod g без делений"""
    _check_same_ring(f, g)
    if g.is_zero():
        raise DivisionByZero("pseudo-division by zero")
    impl = f.impl
    n = g.degree
    e = f.degree - n + 1
    if e <= 0:
        return f
    lead = g.leading_coefficient
    monic = impl.is_one(lead)
    r = list(f.coeffs)
    while len(r) - 1 >= n:
        top = r[-1]
        shift = len(r) - 1 - n
        if not monic:
            r = [impl.mul(lead, c) for c in r]
        for j in range(n + 1):
            r[shift + j] = impl.sub(r[shift + j], impl.mul(top, g.coeffs[j]))
        _trim(impl, r)
        e -= 1
    if e and not monic:
        factor = impl.pow(lead, e)
        r = [impl.mul(factor, c) for c in r]
    return UniPoly.from_coefficients(f.ring, r)


def _divide_by_scalar(f: UniPoly, scalar: Any) -> UniPoly:
    impl = f.impl
    if impl.is_one(scalar):
        return f
    return UniPoly.from_coefficients(f.ring, impl.exact_quo_all(f.coeffs, scalar))


# ---------------------------------------------------------------------------
# НОД, результант, производная

def integer_content(f: UniPoly) -> int:
    """НОД всех целых координат коэффициентов (для Z и Z[ζ_k])"""
    g = 0
    for c in f.coeffs:
        g = gcd(g, c if f.ring.kind == RingKind.INTEGER else c.content())
        if g == 1:
            break
    return g


def primitive_part(f: UniPoly) -> UniPoly:
    if f.ring.is_field or f.is_zero():
        return f
    content = integer_content(f)
    if content == 1:
        return f
    return _divide_by_scalar(f, f.impl.from_int(content))


def _normalize_gcd(f: UniPoly) -> UniPoly:
    """Выбор ассоциата НОД над кольцом без деления.

    Если старший коэффициент примитивной части обратим или делит все
    коэффициенты, результат приведенный. Иначе (например 2c + 1 над Z)
    возвращается примитивная часть (над Z со старшим коэффициентом > 0).
    """
    impl = f.impl
    f = primitive_part(f)
    lead = f.leading_coefficient
    inverse = impl.unit_inverse(lead)
    if inverse is not None:
        return f.scale(inverse)
    try:
        return _divide_by_scalar(f, lead)
    except NonZeroRemainder:
        if impl.is_negative_literal(lead):
            return -f
        return f


def _h_update(impl: Ring, h: Any, g: Any, delta: int) -> Any:
    """h^{1-δ}·g^δ, деление точное"""
    if delta == 0:
        return h
    if delta == 1:
        return g
    return impl.exact_quo(impl.pow(g, delta), impl.pow(h, delta - 1))


def _field_monic(f: UniPoly) -> UniPoly:
    return f.scale(f.impl.unit_inverse(f.leading_coefficient))


def _field_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    a, b = f, g
    while not b.is_zero():
        a, b = b, poly_rem(a, b)
    return _field_monic(a)


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """НОД над полем частных с точностью до ассоциата.

    Над полем результат приведенный; над Z и Z[ζ_k] см. _normalize_gcd.

    Для Z и Z[ζ_k] цепочка субрезультантов без дробей, с вынесением
    целого содержания на входе.
    """
    _check_same_ring(f, g)
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if f.ring.is_field:
        return _field_gcd(f, g)

    impl = f.impl
    a, b = primitive_part(f), primitive_part(g)
    if a.degree < b.degree:
        a, b = b, a
    if b.is_zero():
        return _normalize_gcd(a)

    g_, h_ = impl.one, impl.one
    while True:
        delta = a.degree - b.degree
        r = pseudo_remainder(a, b)
        if r.is_zero():
            return _normalize_gcd(b)
        if r.degree == 0:
            return UniPoly.one(f.ring)
        a = b
        b = _divide_by_scalar(r, impl.mul(g_, impl.pow(h_, delta)))
        g_ = a.leading_coefficient
        h_ = _h_update(impl, h_, g_, delta)


def _subresultant_resultant(a: UniPoly, b: UniPoly) -> Any:
    impl = a.impl
    if a.is_zero() or b.is_zero():
        return impl.zero
    sign = 1
    if a.degree < b.degree:
        a, b = b, a
        if a.degree % 2 and b.degree % 2:
            sign = -1

    g_, h_ = impl.one, impl.one
    while b.degree > 0:
        delta = a.degree - b.degree
        if a.degree % 2 and b.degree % 2:
            sign = -sign
        r = pseudo_remainder(a, b)
        a = b
        if r.is_zero():
            return impl.zero
        b = _divide_by_scalar(r, impl.mul(g_, impl.pow(h_, delta)))
        g_ = a.leading_coefficient
        h_ = _h_update(impl, h_, g_, delta)

    n = a.degree
    if n == 0:
        result = h_
    else:
        result = impl.exact_quo(impl.pow(b.leading_coefficient, n), impl.pow(h_, n - 1))
    return result if sign == 1 else impl.neg(result)


def _field_resultant(a: UniPoly, b: UniPoly) -> Any:
    impl = a.impl
    if a.is_zero() or b.is_zero():
        return impl.zero
    result = impl.one
    while True:
        if b.degree == 0:
            return impl.mul(result, impl.pow(b.leading_coefficient, a.degree))
        r = poly_rem(a, b)
        if r.is_zero():
            return impl.zero
        if a.degree % 2 and b.degree % 2:
            result = impl.neg(result)
        result = impl.mul(result, impl.pow(b.leading_coefficient, a.degree - r.degree))
        a, b = b, r


def resultant(f: UniPoly, g: UniPoly) -> Any:
    """Res(f, g) = ∏_{f(α)=0} g(α) для приведенного f"""
    _check_same_ring(f, g)
    if not f.is_monic():
        raise NonMonicLeft(f"left resultant argument must be monic, got leading {f.leading_coefficient}")
    impl = f.impl
    if f.degree == 0:
        return impl.one
    # g заменяется остатком от деления на f: значения в корнях f те же
    g = poly_rem(g, f)
    if g.is_zero():
        return impl.zero
    if g.degree == 0:
        return impl.pow(g.leading_coefficient, f.degree)
    if f.ring.is_field:
        return _field_resultant(f, g)
    return _subresultant_resultant(f, g)


def derivative(f: UniPoly) -> UniPoly:
    impl = f.impl
    return UniPoly.from_coefficients(
        f.ring, (impl.mul(impl.from_int(i), c) for i, c in enumerate(f.coeffs) if i)
    )


def evaluate(f: UniPoly, x: Any) -> Any:
    """Схема Горнера"""
    impl = f.impl
    result = impl.zero
    for c in reversed(f.coeffs):
        result = impl.add(impl.mul(result, x), c)
    return result


def cyclotomic_polynomial(k: int) -> UniPoly:
    """Φ_k над Z"""
    return UniPoly.from_ints(cyclotomic_coefficients(k))


def cyc_norm(a: CyclotomicElement) -> int:
    """N_{Q(ζ_k)/Q}(a) = Res(Φ_k, A)"""
    if a.order == 1:
        return a.coeffs[0]
    return resultant(cyclotomic_polynomial(a.order), UniPoly.from_ints(a.coeffs))


# ---------------------------------------------------------------------------
# Печать

def _render_term(impl: Ring, c: Any, power: int) -> str:
    monomial = "" if power == 0 else VARIABLE if power == 1 else f"{VARIABLE}^{power}"
    text = impl.render(c)
    if not monomial:
        return text
    if text == "1":
        return monomial
    if text == "-1":
        return f"-{monomial}"
    if " " in text:
        text = f"({text})"
    return f"{text}*{monomial}"


def render_poly(f: UniPoly) -> str:
    """Текстовая запись по убыванию степеней: c^2 + 2*c + 1"""
    if f.is_zero():
        return "0"
    impl = f.impl
    terms = [
        _render_term(impl, c, i)
        for i, c in reversed(list(enumerate(f.coeffs)))
        if not impl.is_zero(c)
    ]
    return " + ".join(terms).replace("+ -", "- ")


def poly_powmod(base: UniPoly, exponent: int, modulus: UniPoly) -> UniPoly:
    """base^exponent mod modulus повторным возведением в квадрат"""
    _check_same_ring(base, modulus)
    if exponent < 0:
        raise ValueError("negative exponent")
    result = poly_rem(UniPoly.one(base.ring), modulus)
    base = poly_rem(base, modulus)
    # степень промежуточных произведений < 2·deg modulus
    cap = max(2 * modulus.degree, 1)
    while exponent:
        if exponent & 1:
            result = poly_rem(poly_mul(result, base, cap), modulus)
        exponent >>= 1
        if exponent:
            base = poly_rem(poly_mul(base, base, cap), modulus)
    return result
