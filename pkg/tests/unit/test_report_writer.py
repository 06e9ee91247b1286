# tests/unit/test_report_writer.py
import json

import pytest

from domain.entities.report import VerificationReport, Verdict
from infrastructure.reports.report_writer import (
    BUNDLE_SCHEMA,
    CSV_COLUMNS,
    build_bundle,
    render_reports,
    summarize,
    write_bundle,
    write_reports,
)


@pytest.fixture
def reports():
    return [
        VerificationReport.judge("thm1.1", {"d": 2, "m": 2, "n": 1, "k": 2, "s": 1, "i": 1}, "2", "2"),
        VerificationReport.judge("lehmer", {"m": 6, "n": 3}, "nonunit", "unit", evidence={"norm": 1}),
        VerificationReport.skipped("thm1.1", {"d": 6, "m": 2, "n": 1, "k": 6, "s": 1}, "d not a prime power"),
    ]


class TestReport:
    def test_verdicts(self, reports):
        assert [r.verdict for r in reports] == [Verdict.PASS, Verdict.FAIL, Verdict.SKIPPED]
        assert reports[2].computed == "skipped: d not a prime power"

    def test_params_text(self, reports):
        assert reports[0].params_text() == "d=2;m=2;n=1;k=2;s=1;i=1"

    def test_sort_key(self, reports):
        ordered = sorted(reports, key=VerificationReport.sort_key)
        assert [r.claim for r in ordered] == ["lehmer", "thm1.1", "thm1.1"]
        assert ordered[1].params["d"] == 2

    def test_evidence_stays_out_of_dict(self, reports):
        assert set(reports[1].to_dict()) == {"claim", "params", "expected", "computed", "verdict", "elapsed_ms"}


class TestRender:
    def test_json(self, reports):
        payload = json.loads(render_reports(reports, "json"))
        assert [item["verdict"] for item in payload] == ["pass", "fail", "skipped"]
        assert payload[0]["params"] == {"d": 2, "i": 1, "k": 2, "m": 2, "n": 1, "s": 1}

    def test_csv_header(self, reports):
        lines = render_reports(reports, "csv").splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert lines[0] == "claim,params,expected,computed,verdict,elapsed_ms"
        assert lines[1] == "thm1.1,d=2;m=2;n=1;k=2;s=1;i=1,2,2,pass,0"
        assert len(lines) == 4

    def test_text(self, reports):
        text = render_reports(reports, "text")
        assert text.splitlines()[-1] == "📊 pass=1 fail=1 skipped=1"
        assert text.startswith("✅ thm1.1")

    def test_deterministic(self, reports):
        assert render_reports(reports, "json") == render_reports(list(reports), "json")

    def test_unknown_format(self, reports):
        with pytest.raises(ValueError):
            render_reports(reports, "xml")

    def test_summarize(self, reports):
        assert summarize(reports) == {"pass": 1, "fail": 1, "skipped": 1}


class TestFiles:
    def test_write_reports(self, reports, tmp_path):
        path = tmp_path / "out" / "reports.csv"
        write_reports(reports, path, "csv")
        assert path.read_text().startswith("claim,params")

    def test_bundle(self, reports, tmp_path):
        bundle = build_bundle(reports)
        assert bundle["schema"] == BUNDLE_SCHEMA
        [failure] = bundle["failures"]
        assert failure["claim"] == "lehmer"
        assert failure["evidence"] == {"norm": 1}

        path = tmp_path / "bundle.json"
        assert write_bundle(reports, path)
        assert json.loads(path.read_text()) == bundle

    def test_no_bundle_without_failures(self, reports, tmp_path):
        path = tmp_path / "bundle.json"
        assert build_bundle(reports[:1]) is None
        assert not write_bundle(reports[:1], path)
        assert not path.exists()
