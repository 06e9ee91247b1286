# infrastructure/cache/cache_interface.py
from abc import ABC, abstractmethod
from typing import Callable, Generic, Optional, TypeVar

V = TypeVar("V")


class CacheInterface(ABC, Generic[V]):
    """Хранилище построенных многочленов по ключу семейства.

    Ключи вида d{d}_m{m}_n{n}_k{k}_s{s}; None означает промах, поэтому
    хранить None нельзя.
    """

    @abstractmethod
    def get(self, key: str) -> Optional[V]:
        ...

    @abstractmethod
    def set(self, key: str, value: V) -> None:
        ...

    @abstractmethod
    def delete(self, key: str) -> None:
        ...

    @abstractmethod
    def clear(self) -> None:
        ...

    def get_or_build(self, key: str, build: Callable[[], V]) -> V:
        """Значение из кеша или результат build(), который сразу сохраняется"""
        value = self.get(key)
        if value is None:
            value = build()
            self.set(key, value)
        return value
