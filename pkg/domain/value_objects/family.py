# domain/value_objects/family.py
from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterator, Optional

from core.exceptions import InvalidSpec
from domain.arithmetic import prime_power
from domain.value_objects.cyclotomic import CyclotomicElement
from domain.value_objects.rings import RingTag


@dataclass(frozen=True)
class ZetaDescriptor:
    """ζ = ζ_k^s, k > 1, gcd(s, k) = 1"""
    k: int
    s: int = 1

    def __post_init__(self):
        if self.k < 2:
            raise InvalidSpec(f"zeta order must be > 1, got {self.k}")
        if gcd(self.s, self.k) != 1:
            raise InvalidSpec(f"zeta power {self.s} is not coprime to order {self.k}")
        if not 0 < self.s < self.k:
            object.__setattr__(self, "s", self.s % self.k)

    @classmethod
    def default_for(cls, d: int) -> "ZetaDescriptor":
        """Для d = p^e берется ζ_p, иначе ζ_d"""
        pp = prime_power(d)
        return cls(pp[0] if pp else d, 1)

    @property
    def ring(self) -> RingTag:
        return RingTag.cyclotomic(self.k)

    def element(self) -> CyclotomicElement:
        return CyclotomicElement.root_of_unity(self.k, self.s)

    def conjugates(self) -> Iterator["ZetaDescriptor"]:
        """Все ζ_k^{s'} с gcd(s', k) = 1"""
        for s in range(1, self.k):
            if gcd(s, self.k) == 1:
                yield ZetaDescriptor(self.k, s)

    def __str__(self) -> str:
        return f"zeta_{self.k}^{self.s}"


@dataclass(frozen=True)
class FamilySpec:
    """Параметры (d, m, n, ζ) многочлена Мишуревича; m = 0 означает многочлен Глисона"""
    d: int
    m: int
    n: int
    zeta: Optional[ZetaDescriptor] = None

    def __post_init__(self):
        if self.d < 2:
            raise InvalidSpec(f"degree d must be >= 2, got {self.d}")
        if self.n < 1:
            raise InvalidSpec(f"period n must be >= 1, got {self.n}")
        if self.m < 0:
            raise InvalidSpec(f"preperiod m must be >= 0, got {self.m}")
        if self.m == 1:
            raise InvalidSpec("preperiod m = 1 is not defined for Misiurewicz polynomials")
        if (self.m == 0) != (self.zeta is None):
            raise InvalidSpec("zeta must be given exactly when m >= 2")
        if self.zeta is not None and self.d % self.zeta.k:
            raise InvalidSpec(f"zeta order {self.zeta.k} does not divide d = {self.d}")

    @classmethod
    def misiurewicz(cls, d: int, m: int, n: int, zeta: Optional[ZetaDescriptor] = None) -> "FamilySpec":
        if m < 2:
            raise InvalidSpec(f"Misiurewicz polynomials need m >= 2, got m = {m}")
        return cls(d, m, n, zeta or ZetaDescriptor.default_for(d))

    @classmethod
    def gleason(cls, d: int, n: int) -> "FamilySpec":
        return cls(d, 0, n, None)

    @property
    def is_gleason(self) -> bool:
        return self.m == 0

    @property
    def k(self) -> int:
        return self.zeta.k if self.zeta else 1

    @property
    def s(self) -> int:
        return self.zeta.s if self.zeta else 0

    @property
    def ring(self) -> RingTag:
        return self.zeta.ring if self.zeta else RingTag.integer()

    @property
    def prime(self) -> Optional[int]:
        """p для d = p^e, иначе None"""
        pp = prime_power(self.d)
        return pp[0] if pp else None

    @property
    def key(self) -> str:
        """Имя записи в кеше"""
        return f"d{self.d}_m{self.m}_n{self.n}_k{self.k}_s{self.s}"

    def with_zeta(self, zeta: ZetaDescriptor) -> "FamilySpec":
        return FamilySpec(self.d, self.m, self.n, zeta)

    def to_params(self) -> Dict[str, int]:
        return {"d": self.d, "m": self.m, "n": self.n, "k": self.k, "s": self.s}

    def __str__(self) -> str:
        if self.is_gleason:
            return f"G(d={self.d}, n={self.n})"
        return f"G(d={self.d}, m={self.m}, n={self.n}, {self.zeta})"
