# infrastructure/serialization/poly_codec.py
"""Текстовый формат записей кеша многочленов (mlab-poly/1).

Коэффициенты хранятся десятичными строками: внешний индекс это степень c,
внутренний это координата в степенном базисе Z[ζ_k] (для k = 1 одна координата).
"""
import json
from pathlib import Path
from typing import Callable, List, Optional, Union

import structlog
from pydantic import BaseModel, ValidationError, field_validator, model_validator

from core.exceptions import CacheCorrupted, RingMismatch
from domain.arithmetic import totient
from domain.value_objects.family import FamilySpec
from domain.value_objects.polynomial import UniPoly
from domain.value_objects.rings import RingKind, RingTag, ring_for
from infrastructure.cache.file_cache import FileCache

logger = structlog.get_logger(__name__)

SCHEMA_VERSION = "mlab-poly/1"


class CacheEntry(BaseModel):
    """Запись кеша: метаданные FamilySpec и коэффициенты"""
    schema_version: str
    d: int
    m: int
    n: int
    k: int
    s: int
    degree: int
    coeffs: List[List[str]]

    @field_validator("coeffs")
    @classmethod
    def _decimal_strings(cls, value: List[List[str]]) -> List[List[str]]:
        for row in value:
            for item in row:
                int(item)
        return value

    @model_validator(mode="after")
    def _shape(self) -> "CacheEntry":
        if self.degree != len(self.coeffs) - 1:
            raise ValueError(f"degree {self.degree} does not match {len(self.coeffs)} coefficients")
        width = totient(self.k)
        if any(len(row) != width for row in self.coeffs):
            raise ValueError(f"every coefficient needs {width} coordinates")
        if self.coeffs and [int(x) for x in self.coeffs[-1]] != [1] + [0] * (width - 1):
            raise ValueError("leading coefficient is not 1")
        return self

    @property
    def ring(self) -> RingTag:
        return RingTag.integer() if self.k == 1 else RingTag.cyclotomic(self.k)

    def matches(self, spec: FamilySpec) -> bool:
        return (self.d, self.m, self.n, self.k, self.s) == (spec.d, spec.m, spec.n, spec.k, spec.s)

    def to_poly(self) -> UniPoly:
        ring = self.ring
        if ring.kind == RingKind.INTEGER:
            return UniPoly.from_ints(int(row[0]) for row in self.coeffs)
        impl = ring_for(ring)
        return UniPoly.from_coefficients(ring, (impl.from_vector([int(x) for x in row]) for row in self.coeffs))


def _coordinates(p: UniPoly) -> List[List[str]]:
    if p.ring.kind == RingKind.INTEGER:
        return [[str(c)] for c in p.coeffs]
    if p.ring.kind != RingKind.CYCLOTOMIC:
        raise RingMismatch(f"only Z and Z[zeta_k] polynomials are cached, got {p.ring}")
    impl = ring_for(p.ring)
    return [[str(x) for x in impl.to_vector(c)] for c in p.coeffs]


def serialize_poly(p: UniPoly, meta: FamilySpec) -> str:
    """Канонический текст: ключи по алфавиту, десятичные строки, перевод строки в конце"""
    if p.ring != meta.ring:
        raise RingMismatch(f"{meta} lives over {meta.ring}, polynomial over {p.ring}")
    entry = CacheEntry(
        schema_version=SCHEMA_VERSION,
        d=meta.d,
        m=meta.m,
        n=meta.n,
        k=meta.k,
        s=meta.s,
        degree=p.degree,
        coeffs=_coordinates(p),
    )
    return json.dumps(entry.model_dump(), sort_keys=True, separators=(",", ":")) + "\n"


def parse_entry(text: str) -> CacheEntry:
    try:
        return CacheEntry.model_validate(json.loads(text))
    except (json.JSONDecodeError, ValidationError, ValueError, TypeError) as e:
        raise CacheCorrupted(f"cache entry does not parse: {e}") from e


def parse_poly(text: str) -> UniPoly:
    return parse_entry(text).to_poly()


def load_or_build(
    spec: FamilySpec,
    cache_dir: Optional[Union[str, Path]],
    builder: Callable[[FamilySpec], UniPoly],
) -> UniPoly:
    """Прочитать многочлен из кеша или построить и записать атомарно"""
    if cache_dir is None:
        return builder(spec)

    cache = FileCache(Path(cache_dir))
    text = cache.get(spec.key)
    if text is not None:
        try:
            entry = parse_entry(text)
        except CacheCorrupted as e:
            logger.warning("⚠️ corrupted cache entry, rebuilding", key=spec.key, error=str(e))
        else:
            if entry.schema_version == SCHEMA_VERSION and entry.matches(spec):
                logger.debug("cache hit", key=spec.key)
                return entry.to_poly()
            logger.info("cache entry from another schema or spec, rebuilding",
                        key=spec.key, schema=entry.schema_version)

    poly = builder(spec)
    cache.set(spec.key, serialize_poly(poly, spec))
    return poly
