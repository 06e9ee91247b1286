# core/exceptions.py
"""Иерархия исключений Misiurewicz Lab.

Все доменные ошибки наследуют MlabError, поэтому CLI может перехватить их
одним except и вернуть код выхода 2.
"""


class MlabError(Exception):
    """Базовая ошибка приложения"""


class LimitExceeded(MlabError):
    """Промежуточный многочлен превысил ограничение на степень"""

    def __init__(self, degree: int, cap: int, what: str = "polynomial"):
        self.degree = degree
        self.cap = cap
        super().__init__(f"{what} of degree {degree} exceeds degree cap {cap}")


class OrderMismatch(MlabError):
    """Элементы из разных колец Z[ζ_k]"""


class RingMismatch(MlabError):
    """Многочлены над разными кольцами коэффициентов"""


class DivisionByZero(MlabError, ZeroDivisionError):
    pass


class NonZeroRemainder(MlabError, ArithmeticError):
    """Деление должно было быть точным, но остаток ненулевой"""


class NonMonicLeft(MlabError):
    """Результант определен только для приведенного левого аргумента"""


class NonMonic(MlabError):
    pass


class NotPurePower(MlabError):
    """Число не является степенью заданного простого"""

    def __init__(self, value: int, p: int):
        self.value = value
        self.p = p
        super().__init__(f"{value} is not a pure power of {p}")


class InvalidSpec(MlabError, ValueError):
    """Недопустимый набор параметров (d, m, n, ζ)"""


class BadPrime(MlabError):
    """Простое q делит порядок корня из единицы"""


class DuplicateAbscissa(MlabError):
    pass


class CacheCorrupted(MlabError):
    """Запись кеша не читается или нарушает инварианты"""
