# domain/value_objects/newton.py
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple


@dataclass(frozen=True)
class ValuationPoint:
    """Точка (степень монома, нормирование коэффициента)"""
    x: int
    y: Fraction

    def __post_init__(self):
        if self.x < 0:
            raise ValueError(f"abscissa must be nonnegative, got {self.x}")
        if not isinstance(self.y, Fraction):
            object.__setattr__(self, "y", Fraction(self.y))


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: Tuple[ValuationPoint, ...]
    slopes: Tuple[Tuple[Fraction, int], ...] = field(init=False)

    def __post_init__(self):
        xs = [v.x for v in self.vertices]
        if any(a >= b for a, b in zip(xs, xs[1:])):
            raise ValueError("Newton polygon vertices must be strictly increasing in x")
        slopes: List[Tuple[Fraction, int]] = []
        for left, right in zip(self.vertices, self.vertices[1:]):
            length = right.x - left.x
            slopes.append(((right.y - left.y) / length, length))
        # нижняя выпуклая оболочка: наклоны строго растут
        if any(a[0] >= b[0] for a, b in zip(slopes, slopes[1:])):
            raise ValueError("slopes of a lower hull must strictly increase")
        object.__setattr__(self, "slopes", tuple(slopes))
