# domain/entities/certificate.py
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from domain.value_objects.family import FamilySpec
from domain.value_objects.polynomial import UniPoly
from domain.value_objects.rings import RingTag


class CertificateStatus(str, Enum):
    PROVEN = "proven"
    INCONCLUSIVE = "inconclusive"


class CertificateKind(str, Enum):
    """Чем доказана неприводимость"""
    RABIN = "rabin"
    DEGREE_BOUND = "degree-bound"


@dataclass(frozen=True)
class ResidueField:
    """F_{q^t} = F_q[y]/(modulus), modulus делит Φ_k по модулю q"""
    q: int
    t: int
    modulus: UniPoly

    def __post_init__(self):
        if self.modulus.ring != RingTag.prime_field(self.q):
            raise ValueError(f"residue modulus must live over F_{self.q}")
        if not self.modulus.is_monic() or self.modulus.degree != self.t:
            raise ValueError(f"residue modulus must be monic of degree {self.t}")

    @property
    def ring(self) -> RingTag:
        if self.t == 1:
            return RingTag.prime_field(self.q)
        return RingTag.ext_field(self.q, self.modulus.coeffs)

    @property
    def size(self) -> int:
        return self.q ** self.t

    def to_dict(self) -> Dict[str, Any]:
        return {"q": self.q, "t": self.t, "modulus": list(self.modulus.coeffs)}


@dataclass
class IrreducibilityCertificate:
    spec: FamilySpec
    status: CertificateStatus
    kind: CertificateKind = CertificateKind.RABIN
    q: Optional[int] = None
    residue_field: Optional[ResidueField] = None
    tried: List[int] = field(default_factory=list)
    reason: str = ""

    @property
    def proven(self) -> bool:
        return self.status == CertificateStatus.PROVEN

    def to_dict(self) -> Dict[str, Any]:
        """Преобразовать в словарь для сериализации"""
        return {
            "spec": self.spec.to_params(),
            "status": self.status.value,
            "kind": self.kind.value,
            "q": self.q,
            "field": self.residue_field.to_dict() if self.residue_field else None,
            "tried": list(self.tried),
            "reason": self.reason,
        }
