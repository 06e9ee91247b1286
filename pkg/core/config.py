# core/config.py
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class AlgebraSettings(BaseModel):
    """Ограничения точной арифметики"""
    degree_cap: int = Field(default=4096, ge=1)
    karatsuba_threshold: int = Field(default=32, ge=2)


class NormSettings(BaseModel):
    """Как считать нормы результантов"""
    method: Literal["prs", "modular"] = "prs"
    modular_prime_bits: int = Field(default=61, ge=16)
    # нормы a_i по корням G большей степени считаются модульно по орбите
    prs_degree_limit: int = Field(default=64, ge=1)


class CertifierSettings(BaseModel):
    q_max: int = Field(default=500, ge=2)
    rational_root_bound: int = Field(default=10, ge=0)


class CacheSettings(BaseSettings):
    """Дисковый кеш многочленов (единственная переменная окружения: MLAB_CACHE_DIR)"""
    cache_dir: Optional[Path] = None
    model_config = SettingsConfigDict(
        env_prefix="MLAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


class ReportSettings(BaseModel):
    format: Literal["text", "json", "csv"] = "text"
    jobs: int = Field(default=1, ge=1)
    record_timings: bool = False
    # ℓ > n при j = m гипотеза не описывает
    conjecture_beyond_n: bool = False


class GridSettings(BaseModel):
    """Границы настольной сетки для verify all"""
    construction_degree_limit: int = Field(default=512, ge=1)
    norm_degree_limit: int = Field(default=64, ge=1)
    certify_degree_limit: int = Field(default=64, ge=1)


class AppSettings(BaseModel):
    app_name: str = "Misiurewicz Lab"
    version: str = "1.0.0"
    log_level: str = "INFO"

    algebra: AlgebraSettings = AlgebraSettings()
    norm: NormSettings = NormSettings()
    certifier: CertifierSettings = CertifierSettings()
    cache: CacheSettings = Field(default_factory=CacheSettings)
    report: ReportSettings = ReportSettings()
    grid: GridSettings = GridSettings()

    def with_overrides(self, **sections: dict) -> "AppSettings":
        """Копия настроек с переопределенными полями секций (для флагов CLI)"""
        update = {}
        for name, values in sections.items():
            if values:
                section = getattr(self, name)
                update[name] = type(section).model_validate({**section.model_dump(), **values})
        return self.model_copy(update=update)


settings = AppSettings()


def get_settings() -> AppSettings:
    return settings
