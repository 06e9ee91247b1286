# domain/value_objects/norm.py
from dataclasses import dataclass


@dataclass(frozen=True)
class NormResult:
    """|N_{Q(ζ)/Q}(Res_c(G, h))|; знак хранится только для отладки"""
    value: int
    zero: bool
    signed: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("norm value is an absolute value")
        if self.zero != (self.value == 0):
            raise ValueError("zero flag must match the value")

    @classmethod
    def from_signed(cls, signed: int) -> "NormResult":
        return cls(abs(signed), signed == 0, signed)

    @property
    def is_unit(self) -> bool:
        return self.value == 1
