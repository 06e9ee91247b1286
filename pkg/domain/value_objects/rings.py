# domain/value_objects/rings.py
"""Кольца коэффициентов для UniPoly.

RingTag описывает кольцо, а реализация Ring знает, как складывать,
умножать и точно делить его элементы:

- Z: обычные int;
- Z[ζ_k]: CyclotomicElement;
- F_q: int из [0, q);
- F_{q^t} = F_q[y]/(modulus): кортеж длины t.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, List, Optional, Sequence, Tuple

from core.exceptions import DivisionByZero, NonZeroRemainder
from domain.value_objects.cyclotomic import (
    CyclotomicElement,
    cyc_exact_quotient,
    cyc_invert,
)


class RingKind(str, Enum):
    """Тип кольца коэффициентов"""
    INTEGER = "integer"
    CYCLOTOMIC = "cyclotomic"
    PRIME_FIELD = "prime_field"
    EXT_FIELD = "ext_field"


@dataclass(frozen=True)
class RingTag:
    kind: RingKind
    order: int = 1
    modulus: Tuple[int, ...] = ()

    @classmethod
    def integer(cls) -> "RingTag":
        return cls(RingKind.INTEGER)

    @classmethod
    def cyclotomic(cls, k: int) -> "RingTag":
        return cls(RingKind.CYCLOTOMIC, k)

    @classmethod
    def prime_field(cls, q: int) -> "RingTag":
        return cls(RingKind.PRIME_FIELD, q)

    @classmethod
    def ext_field(cls, q: int, modulus: Sequence[int]) -> "RingTag":
        modulus = tuple(c % q for c in modulus)
        if not modulus or modulus[-1] != 1:
            raise ValueError("extension modulus must be monic")
        return cls(RingKind.EXT_FIELD, q, modulus)

    @property
    def degree(self) -> int:
        """t для F_{q^t}, иначе 1"""
        return len(self.modulus) - 1 if self.kind == RingKind.EXT_FIELD else 1

    @property
    def is_field(self) -> bool:
        return self.kind in (RingKind.PRIME_FIELD, RingKind.EXT_FIELD)

    @property
    def field_size(self) -> int:
        if not self.is_field:
            raise ValueError(f"{self} is not a finite field")
        return self.order ** self.degree

    def __str__(self) -> str:
        if self.kind == RingKind.INTEGER:
            return "Z"
        if self.kind == RingKind.CYCLOTOMIC:
            return f"Z[zeta_{self.order}]"
        if self.kind == RingKind.PRIME_FIELD:
            return f"F_{self.order}"
        return f"F_{self.order}^{self.degree}"


class Ring(ABC):
    """Интерфейс кольца коэффициентов"""

    tag: RingTag

    @property
    def zero(self) -> Any:
        return self.from_int(0)

    @property
    def one(self) -> Any:
        return self.from_int(1)

    @abstractmethod
    def from_int(self, value: int) -> Any:
        pass

    @abstractmethod
    def add(self, a: Any, b: Any) -> Any:
        pass

    @abstractmethod
    def sub(self, a: Any, b: Any) -> Any:
        pass

    @abstractmethod
    def mul(self, a: Any, b: Any) -> Any:
        pass

    @abstractmethod
    def neg(self, a: Any) -> Any:
        pass

    @abstractmethod
    def is_zero(self, a: Any) -> bool:
        pass

    @abstractmethod
    def exact_quo(self, a: Any, b: Any) -> Any:
        """a / b, если частное лежит в кольце; иначе NonZeroRemainder"""

    @abstractmethod
    def unit_inverse(self, a: Any) -> Optional[Any]:
        """Обратный элемент, если a обратим в кольце, иначе None"""

    @abstractmethod
    def render(self, a: Any) -> str:
        pass

    def is_one(self, a: Any) -> bool:
        return a == self.one

    def exact_quo_all(self, values: Sequence[Any], b: Any) -> List[Any]:
        """Поэлементное точное деление на один и тот же делитель"""
        return [self.exact_quo(v, b) for v in values]

    def pow(self, a: Any, exponent: int) -> Any:
        result, base = self.one, a
        while exponent:
            if exponent & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            exponent >>= 1
        return result

    def is_negative_literal(self, a: Any) -> bool:
        return False


class IntegerRing(Ring):
    tag = RingTag.integer()

    def from_int(self, value: int) -> int:
        return value

    def add(self, a: int, b: int) -> int:
        return a + b

    def sub(self, a: int, b: int) -> int:
        return a - b

    def mul(self, a: int, b: int) -> int:
        return a * b

    def neg(self, a: int) -> int:
        return -a

    def is_zero(self, a: int) -> bool:
        return a == 0

    def exact_quo(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("integer division by zero")
        q, r = divmod(a, b)
        if r:
            raise NonZeroRemainder(f"{a} is not divisible by {b}")
        return q

    def unit_inverse(self, a: int) -> Optional[int]:
        return a if a in (1, -1) else None

    def render(self, a: int) -> str:
        return str(a)

    def is_negative_literal(self, a: int) -> bool:
        return a < 0


class CyclotomicRing(Ring):
    def __init__(self, k: int):
        self.tag = RingTag.cyclotomic(k)
        self.k = k
        self._zero = CyclotomicElement.zero(k)
        self._one = CyclotomicElement.one(k)

    @property
    def zero(self) -> CyclotomicElement:
        return self._zero

    @property
    def one(self) -> CyclotomicElement:
        return self._one

    def from_int(self, value: int) -> CyclotomicElement:
        return CyclotomicElement.from_int(self.k, value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def is_one(self, a) -> bool:
        return a.is_one()

    def exact_quo(self, a, b):
        return cyc_exact_quotient(a, b)

    def exact_quo_all(self, values, b):
        if b.is_zero():
            raise DivisionByZero(f"division by zero in Z[zeta_{self.k}]")
        if b.is_rational():
            return [v.divide_exact_int(b.coeffs[0]) for v in values]
        # одно обращение на весь список
        inverse = cyc_invert(b)
        return [(v * inverse.numerator).divide_exact_int(inverse.denominator) for v in values]

    # векторное представление для умножения подстановкой Кронекера
    @property
    def vector_width(self) -> int:
        return len(self._one.coeffs)

    def to_vector(self, a) -> Tuple[int, ...]:
        return a.coeffs

    def from_vector(self, coeffs: Sequence[int]) -> CyclotomicElement:
        return CyclotomicElement.from_coefficients(self.k, coeffs)

    def unit_inverse(self, a):
        if a.is_zero():
            return None
        inverse = cyc_invert(a)
        return inverse.numerator if inverse.is_integral() else None

    def render(self, a) -> str:
        return str(a)

    def is_negative_literal(self, a) -> bool:
        return a.is_rational() and a.coeffs[0] < 0


class PrimeFieldRing(Ring):
    def __init__(self, q: int):
        self.tag = RingTag.prime_field(q)
        self.q = q

    def from_int(self, value: int) -> int:
        return value % self.q

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def neg(self, a: int) -> int:
        return (-a) % self.q

    def is_zero(self, a: int) -> bool:
        return a == 0

    def exact_quo(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero(f"division by zero in F_{self.q}")
        return (a * pow(b, -1, self.q)) % self.q

    def unit_inverse(self, a: int) -> Optional[int]:
        return pow(a, -1, self.q) if a else None

    def render(self, a: int) -> str:
        return str(a)


class ExtensionFieldRing(Ring):
    """F_q[y]/(modulus), элементы: кортежи длины t"""

    def __init__(self, tag: RingTag):
        self.tag = tag
        self.q = tag.order
        self.t = tag.degree
        self.modulus = tag.modulus

    def _reduce(self, coeffs) -> Tuple[int, ...]:
        q, t, m = self.q, self.t, self.modulus
        r = [c % q for c in coeffs] + [0] * max(0, t - len(coeffs))
        for i in range(len(r) - 1, t - 1, -1):
            c = r[i]
            if c:
                for j in range(t):
                    r[i - t + j] = (r[i - t + j] - c * m[j]) % q
                r[i] = 0
        return tuple(r[:t])

    def from_int(self, value: int) -> Tuple[int, ...]:
        return (value % self.q,) + (0,) * (self.t - 1)

    def element(self, coeffs: Sequence[int]) -> Tuple[int, ...]:
        return self._reduce(list(coeffs))

    @property
    def vector_width(self) -> int:
        return self.t

    def to_vector(self, a) -> Tuple[int, ...]:
        return a

    def from_vector(self, coeffs: Sequence[int]) -> Tuple[int, ...]:
        return self._reduce(list(coeffs))

    def add(self, a, b):
        return tuple((x + y) % self.q for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.q for x, y in zip(a, b))

    def mul(self, a, b):
        if self.t == 1:
            return ((a[0] * b[0]) % self.q,)
        out = [0] * (2 * self.t - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self._reduce(out)

    def neg(self, a):
        return tuple((-x) % self.q for x in a)

    def is_zero(self, a) -> bool:
        return not any(a)

    def inverse(self, a):
        if not any(a):
            raise DivisionByZero(f"division by zero in {self.tag}")
        # a^(Q-2) в мультипликативной группе порядка Q-1
        return self.pow(a, self.tag.field_size - 2)

    def exact_quo(self, a, b):
        return self.mul(a, self.inverse(b))

    def unit_inverse(self, a):
        return self.inverse(a) if any(a) else None

    def render(self, a) -> str:
        terms = []
        for i, c in enumerate(a):
            if c:
                if i == 0:
                    terms.append(str(c))
                else:
                    power = "y" if i == 1 else f"y^{i}"
                    terms.append(power if c == 1 else f"{c}*{power}")
        return " + ".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def ring_for(tag: RingTag) -> Ring:
    """Реализация кольца по тегу (кешируется)"""
    if tag.kind == RingKind.INTEGER:
        return IntegerRing()
    if tag.kind == RingKind.CYCLOTOMIC:
        return CyclotomicRing(tag.order)
    if tag.kind == RingKind.PRIME_FIELD:
        return PrimeFieldRing(tag.order)
    return ExtensionFieldRing(tag)
