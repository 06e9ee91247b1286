# application/services/newton_service.py
"""Многоугольники Ньютона: нижняя выпуклая оболочка точек (степень, нормирование).

Для g(t) = (1+t)^d - 1, d = p^e, вершины лежат в (p^r, e - r), а отрезок
между соседними вершинами имеет наклон -1/(p^{r+1} - p^r).
"""
from fractions import Fraction
from typing import Iterable, List, Optional

from core.config import get_settings
from core.exceptions import DuplicateAbscissa, InvalidSpec, LimitExceeded
from domain.arithmetic import binomial_valuation, is_prime
from domain.value_objects.newton import NewtonPolygon, ValuationPoint


def _cross(o: ValuationPoint, a: ValuationPoint, b: ValuationPoint) -> Fraction:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def lower_hull(points: Iterable[ValuationPoint]) -> NewtonPolygon:
    """Монотонная цепочка слева направо; коллинеарные внутренние точки отбрасываются"""
    ordered = sorted(points, key=lambda point: point.x)
    if not ordered:
        raise ValueError("lower hull of an empty point set")
    for left, right in zip(ordered, ordered[1:]):
        if left.x == right.x:
            raise DuplicateAbscissa(f"two points share abscissa {left.x}")

    hull: List[ValuationPoint] = []
    for point in ordered:
        while len(hull) > 1 and _cross(hull[-2], hull[-1], point) <= 0:
            hull.pop()
        hull.append(point)
    return NewtonPolygon(tuple(hull))


def binomial_valuation_points(p: int, e: int, degree_cap: Optional[int] = None) -> List[ValuationPoint]:
    """(i, v_p(C(p^e, i))) для i = 1..p^e по формуле Лежандра"""
    if not is_prime(p):
        raise InvalidSpec(f"{p} is not prime")
    if e < 1:
        raise InvalidSpec(f"exponent must be >= 1, got {e}")
    cap = get_settings().algebra.degree_cap if degree_cap is None else degree_cap
    d = p ** e
    if d > cap:
        raise LimitExceeded(d, cap, "binomial polynomial")
    return [ValuationPoint(i, Fraction(binomial_valuation(d, i, p))) for i in range(1, d + 1)]


def expected_binomial_vertices(p: int, e: int) -> List[ValuationPoint]:
    return [ValuationPoint(p ** r, Fraction(e - r)) for r in range(e + 1)]


def expected_binomial_slopes(p: int, e: int) -> List[Fraction]:
    return [Fraction(-1, p ** (r + 1) - p ** r) for r in range(e)]
