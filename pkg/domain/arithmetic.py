# domain/arithmetic.py
"""Мультипликативная теория чисел для настольных масштабов.

Функция Мёбиуса и делители считаются пробным делением: все аргументы
здесь малы (порядки корней из единицы, периоды, показатели).
"""
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from sympy import factorint, isprime
from sympy.ntheory import n_order


def factorize(n: int) -> Dict[int, int]:
    """Разложение пробным делением: {p: кратность}"""
    if n < 1:
        raise ValueError(f"factorize expects a positive integer, got {n}")
    factors: Dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    """Функция Мёбиуса μ(n)"""
    if n < 1:
        raise ValueError(f"mobius expects n >= 1, got {n}")
    factors = factorize(n)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


@lru_cache(maxsize=None)
def divisors(n: int) -> Tuple[int, ...]:
    """Все положительные делители n по возрастанию"""
    if n < 1:
        raise ValueError(f"divisors expects n >= 1, got {n}")
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return tuple(small + large[::-1])


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def prime_power(n: int) -> Optional[Tuple[int, int]]:
    """(p, e) если n = p^e с e >= 1, иначе None"""
    if n < 2:
        return None
    factors = factorint(n)
    if len(factors) != 1:
        return None
    (p, e), = factors.items()
    return p, e


def valuation(n: int, p: int) -> int:
    """p-адическое нормирование целого n != 0"""
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def factorial_valuation(n: int, p: int) -> int:
    """v_p(n!) по формуле Лежандра"""
    v, power = 0, p
    while power <= n:
        v += n // power
        power *= p
    return v


def binomial_valuation(n: int, i: int, p: int) -> int:
    return factorial_valuation(n, p) - factorial_valuation(i, p) - factorial_valuation(n - i, p)


def mobius_sum(n: int) -> int:
    """Σ_{t|n} μ(n/t): 1 при n = 1, иначе 0"""
    return sum(mobius(n // t) for t in divisors(n))


def mobius_weighted_power_sum(n: int, d: int, shift: int = 0) -> int:
    """Σ_{k|n} μ(n/k)·d^{k-1+shift}"""
    return sum(mobius(n // k) * d ** (k - 1 + shift) for k in divisors(n))


def is_prime(q: int) -> bool:
    return bool(isprime(q))


def multiplicative_order(a: int, k: int) -> int:
    """Порядок a по модулю k (gcd(a, k) = 1); для k = 1 равен 1"""
    if k == 1:
        return 1
    return int(n_order(a, k))


def prime_divisors(n: int) -> List[int]:
    return sorted(factorize(n))
