# domain/entities/report.py
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

# порядок параметров в ключе сортировки отчетов
PARAM_ORDER = ("d", "m", "n", "k", "s", "j", "l", "i")


class Verdict(str, Enum):
    """Итог проверки одного утверждения"""
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


@dataclass
class VerificationReport:
    """Один экземпляр утверждения: ожидаемое и вычисленное точные значения"""
    claim: str
    params: Dict[str, int]
    expected: str
    computed: str
    verdict: Verdict
    elapsed_ms: int = 0

    # многочлены и нормы для пакета контрпримеров, в отчет не попадают
    evidence: Dict[str, Any] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def judge(
        cls,
        claim: str,
        params: Dict[str, int],
        expected: str,
        computed: str,
        evidence: Optional[Dict[str, Any]] = None,
    ) -> "VerificationReport":
        verdict = Verdict.PASS if expected == computed else Verdict.FAIL
        return cls(claim, dict(params), expected, computed, verdict, evidence=evidence or {})

    @classmethod
    def skipped(
        cls, claim: str, params: Dict[str, int], reason: str, expected: str = "n/a"
    ) -> "VerificationReport":
        return cls(claim, dict(params), expected, f"skipped: {reason}", Verdict.SKIPPED)

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS

    @property
    def failed(self) -> bool:
        return self.verdict == Verdict.FAIL

    def sort_key(self) -> Tuple:
        return (self.claim,) + tuple(self.params.get(name, -1) for name in PARAM_ORDER)

    def params_text(self) -> str:
        """d=2;m=2;n=1 в порядке ключа сортировки, прочие ключи по алфавиту"""
        known = [name for name in PARAM_ORDER if name in self.params]
        extra = sorted(name for name in self.params if name not in PARAM_ORDER)
        return ";".join(f"{name}={self.params[name]}" for name in known + extra)

    def to_dict(self) -> Dict[str, Any]:
        """Преобразовать в словарь для сериализации"""
        return {
            "claim": self.claim,
            "params": {name: self.params[name] for name in sorted(self.params)},
            "expected": self.expected,
            "computed": self.computed,
            "verdict": self.verdict.value,
            "elapsed_ms": self.elapsed_ms,
        }
