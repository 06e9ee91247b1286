# infrastructure/reports/report_writer.py
"""Отрисовка отчетов (text / json / csv) и пакет контрпримеров"""
import io
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd
import structlog

from domain.entities.report import VerificationReport, Verdict
from infrastructure.cache.file_cache import atomic_write_text

logger = structlog.get_logger(__name__)

CSV_COLUMNS = ["claim", "params", "expected", "computed", "verdict", "elapsed_ms"]
BUNDLE_SCHEMA = "mlab-bundle/1"

_VERDICT_MARKS = {Verdict.PASS: "✅", Verdict.FAIL: "❌", Verdict.SKIPPED: "⏭️"}


def render_json(reports: Sequence[VerificationReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def render_csv(reports: Sequence[VerificationReport]) -> str:
    frame = pd.DataFrame(
        [
            {
                "claim": r.claim,
                "params": r.params_text(),
                "expected": r.expected,
                "computed": r.computed,
                "verdict": r.verdict.value,
                "elapsed_ms": r.elapsed_ms,
            }
            for r in reports
        ],
        columns=CSV_COLUMNS,
    )
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def summarize(reports: Sequence[VerificationReport]) -> Dict[str, int]:
    counts = {verdict.value: 0 for verdict in Verdict}
    for r in reports:
        counts[r.verdict.value] += 1
    return counts


def render_text(reports: Sequence[VerificationReport]) -> str:
    lines = []
    for r in reports:
        mark = _VERDICT_MARKS[r.verdict]
        line = f"{mark} {r.claim} [{r.params_text()}] expected={r.expected} computed={r.computed}"
        if r.elapsed_ms:
            line += f" ({r.elapsed_ms} ms)"
        lines.append(line)
    counts = summarize(reports)
    lines.append(f"📊 pass={counts['pass']} fail={counts['fail']} skipped={counts['skipped']}")
    return "\n".join(lines) + "\n"


RENDERERS = {"text": render_text, "json": render_json, "csv": render_csv}


def render_reports(reports: Sequence[VerificationReport], fmt: str = "text") -> str:
    try:
        renderer = RENDERERS[fmt]
    except KeyError:
        raise ValueError(f"unknown report format {fmt!r}") from None
    return renderer(reports)


def write_reports(reports: Sequence[VerificationReport], path: Path, fmt: str = "text") -> None:
    """Файл появляется целиком или не появляется вовсе"""
    atomic_write_text(Path(path), render_reports(reports, fmt))
    logger.info("reports written", path=str(path), count=len(reports), format=fmt)


def build_bundle(reports: Sequence[VerificationReport]) -> Optional[Dict[str, Any]]:
    """Упавшие отчеты вместе с многочленами и нормами; None, если падений нет"""
    failed: List[VerificationReport] = [r for r in reports if r.failed]
    if not failed:
        return None
    return {
        "schema": BUNDLE_SCHEMA,
        "failures": [
            {**r.to_dict(), "evidence": {key: _jsonable(value) for key, value in sorted(r.evidence.items())}}
            for r in failed
        ],
    }


def _jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


def render_bundle(reports: Sequence[VerificationReport]) -> Optional[str]:
    bundle = build_bundle(reports)
    if bundle is None:
        return None
    return json.dumps(bundle, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_bundle(reports: Sequence[VerificationReport], path: Path) -> bool:
    text = render_bundle(reports)
    if text is None:
        return False
    atomic_write_text(Path(path), text)
    logger.error("🧾 counterexample bundle written", path=str(path),
                 failures=sum(1 for r in reports if r.failed))
    return True
