# infrastructure/cache/simple_cache.py
import threading
from typing import Any, Dict, Optional

from infrastructure.cache.cache_interface import CacheInterface


class SimpleCache(CacheInterface[Any]):
    """In-memory мемо-хранилище: чтение без блокировки, запись под замком.

    Значения неизменяемы, поэтому гонка двух писателей безвредна:
    оба кладут одно и то же.
    """

    def __init__(self):
        self._cache: Dict[str, Any] = {}
        self._lock = threading.Lock()

    def get(self, key: str) -> Optional[Any]:
        return self._cache.get(key)

    def set(self, key: str, value: Any) -> None:
        with self._lock:
            self._cache[key] = value

    def delete(self, key: str) -> None:
        with self._lock:
            self._cache.pop(key, None)

    def clear(self) -> None:
        with self._lock:
            self._cache.clear()

    def __contains__(self, key: str) -> bool:
        return key in self._cache

    def __len__(self) -> int:
        return len(self._cache)
