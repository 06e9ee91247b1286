# tests/conftest.py
import pytest

from core.config import AppSettings
from domain.value_objects.family import FamilySpec, ZetaDescriptor
from domain.value_objects.rings import RingTag
from application.services.certifier_service import CertifierService
from application.services.norm_service import NormService
from application.services.orbit_service import FamilyService
from application.services.verification_service import VerificationService

Z = RingTag.integer()


@pytest.fixture
def settings() -> AppSettings:
    return AppSettings()


@pytest.fixture
def family(settings) -> FamilyService:
    return FamilyService(settings)


@pytest.fixture
def norms(settings) -> NormService:
    return NormService(settings)


@pytest.fixture
def certifier(family, norms, settings) -> CertifierService:
    return CertifierService(family, norms, settings)


@pytest.fixture
def verifier(settings, family, norms, certifier) -> VerificationService:
    return VerificationService(settings, family, norms, certifier)


def mis(d: int, m: int, n: int, k: int = None, s: int = 1) -> FamilySpec:
    """Короткая запись FamilySpec для тестов"""
    zeta = ZetaDescriptor(k, s) if k else None
    return FamilySpec.misiurewicz(d, m, n, zeta)
