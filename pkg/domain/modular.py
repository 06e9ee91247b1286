# domain/modular.py
"""Редукция по простым q ≡ 1 (mod k), в которых Φ_k распадается на линейные множители.

Используется для быстрых сертификатов (бесквадратность) и для модульного
пути вычисления норм результантов с восстановлением по КТО.
"""
from functools import lru_cache
from math import gcd
from typing import Iterator, List, Tuple

import structlog
from sympy import isprime, primitive_root
from sympy.ntheory.modular import crt

from domain.arithmetic import totient
from domain.value_objects.polynomial import (
    UniPoly,
    derivative,
    poly_gcd,
    poly_powmod,
    poly_rem,
    resultant,
)
from domain.value_objects.rings import RingKind, RingTag

logger = structlog.get_logger(__name__)


def splitting_primes(k: int, bits: int) -> Iterator[int]:
    """Простые q ≡ 1 (mod k) по возрастанию, начиная с 2^{bits-1}"""
    step = k * 2 // gcd(k, 2)
    start = 1 << (bits - 1)
    q = start + (1 - start) % step
    while True:
        if isprime(q):
            yield q
        q += step


@lru_cache(maxsize=None)
def roots_of_cyclotomic(k: int, q: int) -> Tuple[int, ...]:
    """Все корни Φ_k по модулю q (q ≡ 1 mod k): ζ^s, gcd(s, k) = 1"""
    if (q - 1) % k:
        raise ValueError(f"Phi_{k} does not split modulo {q}")
    zeta = pow(int(primitive_root(q)), (q - 1) // k, q)
    return tuple(sorted(pow(zeta, s, q) for s in range(1, k + 1) if gcd(s, k) == 1))


def reduce_at_root(f: UniPoly, q: int, root: int) -> UniPoly:
    """Образ многочлена над Z или Z[ζ_k] в F_q[c] при ζ_k ↦ root"""
    target = RingTag.prime_field(q)
    if f.ring.kind == RingKind.INTEGER:
        return f.to_ring(target)
    if f.ring.kind != RingKind.CYCLOTOMIC:
        raise ValueError(f"cannot reduce a polynomial over {f.ring} at a root of unity")
    values = []
    for c in f.coeffs:
        acc = 0
        for coord in reversed(c.coeffs):
            acc = (acc * root + coord) % q
        values.append(acc)
    return UniPoly.from_coefficients(target, values)


def _order_of(f: UniPoly) -> int:
    return f.ring.order if f.ring.kind == RingKind.CYCLOTOMIC else 1


def is_squarefree(f: UniPoly, attempts: int = 3, bits: int = 31) -> bool:
    """gcd(f, f') = 1 над полем частных.

    Быстрый путь: если редукция в F_q сохраняет степень и бесквадратна,
    то дискриминант f не ноль. Иначе честный НОД над Q или Q(ζ_k).
    """
    if f.degree <= 0:
        return True
    k = _order_of(f)
    primes = splitting_primes(k, bits)
    for _ in range(attempts):
        q = next(primes)
        root = roots_of_cyclotomic(k, q)[0]
        reduced = reduce_at_root(f, q, root)
        if reduced.degree != f.degree:
            continue
        if poly_gcd(reduced, derivative(reduced)).degree == 0:
            return True
    logger.debug("modular squarefree check inconclusive, falling back to exact gcd", degree=f.degree)
    return poly_gcd(f, derivative(f)).degree == 0


def l1_height(f: UniPoly) -> int:
    """Сумма модулей всех целых координат коэффициентов"""
    if f.ring.kind == RingKind.INTEGER:
        return sum(abs(c) for c in f.coeffs)
    return sum(abs(x) for c in f.coeffs for x in c.coeffs)


def norm_bound(g: UniPoly, h: UniPoly) -> int:
    """Оценка |N(Res(G, h))| ≤ (H1(G)^{deg h}·H1(h)^{deg G})^{φ(k)}"""
    k = _order_of(g)
    single = l1_height(g) ** max(h.degree, 0) * l1_height(h) ** g.degree
    return single ** totient(k)


def modular_resultant_norm(g: UniPoly, h: UniPoly, bits: int = 61) -> int:
    """N_{Q(ζ_k)/Q}(Res(G, h)) со знаком: произведение по всем корням Φ_k mod q, затем КТО.

    G приведенный, поэтому его редукция сохраняет степень при любом q.
    """
    if not g.is_monic():
        raise ValueError("modular norm path needs a monic left argument")
    k = _order_of(g)
    bound = norm_bound(g, h)
    moduli: List[int] = []
    residues: List[int] = []
    modulus = 1
    for q in splitting_primes(k, bits):
        value = 1
        for root in roots_of_cyclotomic(k, q):
            value = value * resultant(reduce_at_root(g, q, root), reduce_at_root(h, q, root)) % q
        moduli.append(q)
        residues.append(value)
        modulus *= q
        if modulus > 2 * bound:
            break

    norm = int(crt(moduli, residues, symmetric=True)[0])
    logger.debug("modular norm reconstructed", primes=len(moduli), bound_bits=bound.bit_length())
    return norm


@lru_cache(maxsize=None)
def _filter_prime(k: int, bits: int) -> Tuple[int, int]:
    q = next(splitting_primes(k, bits))
    return q, roots_of_cyclotomic(k, q)[0]


def divides_at_prime(g: UniPoly, f: UniPoly, bits: int = 31) -> bool:
    """Необходимое условие g | f для приведенного g: остаток в F_q[c] нулевой.

    Редукция сохраняет деление с остатком на приведенный многочлен, поэтому
    False означает, что g не делит f и над Z[ζ_k].
    """
    if not g.is_monic():
        raise ValueError("divisibility filter needs a monic divisor")
    q, root = _filter_prime(_order_of(f), bits)
    return poly_rem(reduce_at_root(f, q, root), reduce_at_root(g, q, root)).is_zero()


def critical_orbit_norms(g: UniPoly, d: int, i_max: int, bits: int = 61) -> List[int]:
    """N(Res(G, a_i)) со знаком для i = 1..i_max, не строя сами a_i.

    Корни G лежат в множестве Мандельброта степени d, поэтому
    |a_i(c₀)| ≤ 2^{1/(d-1)} и |N| ≤ 2^{deg G·φ(k)/(d-1)}. Остатки a_i mod G
    считаются в F_q[c] по рекурсии a_i = a_{i-1}^d + c.
    """
    if not g.is_monic():
        raise ValueError("orbit norms need a monic polynomial")
    k = _order_of(g)
    bound_bits = -(-g.degree * totient(k) // (d - 1))
    moduli: List[int] = []
    residues: List[List[int]] = [[] for _ in range(i_max)]
    modulus = 1
    for q in splitting_primes(k, bits):
        field = RingTag.prime_field(q)
        values = [1] * i_max
        for root in roots_of_cyclotomic(k, q):
            reduced = reduce_at_root(g, q, root)
            c = poly_rem(UniPoly.variable(field), reduced)
            orbit = UniPoly.zero(field)
            for i in range(i_max):
                orbit = poly_powmod(orbit, d, reduced) + c
                values[i] = values[i] * resultant(reduced, orbit) % q
        moduli.append(q)
        for i in range(i_max):
            residues[i].append(values[i])
        modulus *= q
        if modulus > 1 << (bound_bits + 1):
            break

    logger.debug("orbit norms reconstructed", primes=len(moduli), bound_bits=bound_bits, i_max=i_max)
    return [int(crt(moduli, column, symmetric=True)[0]) for column in residues]
