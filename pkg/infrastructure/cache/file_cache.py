# infrastructure/cache/file_cache.py
import os
import tempfile
from pathlib import Path
from typing import Optional

import structlog
from tenacity import retry, retry_if_exception_type, stop_after_attempt, wait_exponential

from infrastructure.cache.cache_interface import CacheInterface

logger = structlog.get_logger(__name__)

SUFFIX = ".json"


def atomic_write_text(path: Path, text: str) -> None:
    """Запись через временный файл в том же каталоге и os.replace"""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
            handle.flush()
            os.fsync(handle.fileno())
        _replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


@retry(
    retry=retry_if_exception_type(PermissionError),
    stop=stop_after_attempt(3),
    wait=wait_exponential(multiplier=0.05, min=0.05, max=0.5),
    reraise=True,
)
def _replace(source: str, target: Path) -> None:
    # на Windows замена занятого читателем файла дает PermissionError
    os.replace(source, target)


class FileCache(CacheInterface[str]):
    """Дисковый кеш: одна запись на файл, значения это текст"""

    def __init__(self, directory: Path):
        self.directory = Path(directory)

    def path_for(self, key: str) -> Path:
        return self.directory / f"{key}{SUFFIX}"

    def get(self, key: str) -> Optional[str]:
        path = self.path_for(key)
        try:
            return path.read_text(encoding="utf-8")
        except FileNotFoundError:
            return None
        except (OSError, UnicodeDecodeError) as e:
            logger.warning("cache entry unreadable", key=key, error=str(e))
            return None

    def set(self, key: str, value: str) -> None:
        atomic_write_text(self.path_for(key), value)
        logger.debug("cache entry written", key=key)

    def delete(self, key: str) -> None:
        self.path_for(key).unlink(missing_ok=True)

    def clear(self) -> None:
        if self.directory.is_dir():
            for path in self.directory.glob(f"*{SUFFIX}"):
                path.unlink(missing_ok=True)
