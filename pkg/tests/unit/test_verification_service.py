# tests/unit/test_verification_service.py
import pytest

from core.config import AppSettings, ReportSettings
from domain.entities.report import Verdict
from domain.value_objects.family import FamilySpec
from domain.value_objects.norm import NormResult
from application.services.verification_service import (
    NOT_PRIME_POWER,
    IdentityBounds,
    VerificationService,
    desk_grid,
    run_cells,
    tail_size,
)
from tests.conftest import mis


def verdicts(reports):
    return [r.verdict for r in reports]


def test_tail_size():
    assert tail_size(2, 2, 1) == 1
    assert tail_size(2, 3, 2) == 3
    assert tail_size(3, 2, 2) == 3


class TestConstruction:
    @pytest.mark.parametrize("spec, degree", [(mis(2, 2, 2), 2), (mis(2, 3, 1), 3), (mis(3, 2, 1, k=3), 2)])
    def test_examples(self, verifier, spec, degree):
        report = verifier.verify_construction(spec)
        assert report.claim == "thm2.1"
        assert report.passed
        assert report.computed == f"monic degree={degree} squarefree"

    def test_gleason(self, verifier):
        assert verifier.verify_construction(FamilySpec.gleason(2, 4)).passed

    def test_limit_is_skipped(self):
        settings = AppSettings().with_overrides(algebra={"degree_cap": 4})
        report = VerificationService(settings).verify_construction(mis(2, 5, 1))
        assert report.verdict == Verdict.SKIPPED
        assert report.expected == "monic degree=15 squarefree"


class TestTheorem11:
    def test_examples(self, verifier):
        reports = verifier.verify_thm_1_1(mis(2, 2, 1), i_max=3)
        assert [r.computed for r in reports] == ["2", "2", "2"]
        assert all(r.passed for r in reports)

    def test_period_two(self, verifier):
        reports = verifier.verify_thm_1_1(mis(2, 2, 2), i_max=2)
        assert [(r.params["i"], r.expected, r.computed) for r in reports] == [(1, "1", "1"), (2, "2", "2")]

    def test_default_range_is_three_periods(self, verifier):
        assert len(verifier.verify_thm_1_1(mis(2, 2, 2))) == 6

    @pytest.mark.parametrize("d, m, n", [
        (2, 2, 1), (2, 2, 2), (2, 3, 1), (2, 3, 2), (3, 2, 1), (3, 2, 2), (3, 3, 1), (3, 3, 2),
        (4, 2, 1), (4, 3, 1), (5, 2, 1),
    ])
    def test_grid(self, verifier, d, m, n):
        reports = verifier.verify_thm_1_1(mis(d, m, n))
        assert all(r.passed for r in reports), [r.computed for r in reports]

    def test_forced_orbit_path(self):
        settings = AppSettings().with_overrides(norm={"prs_degree_limit": 1})
        reports = VerificationService(settings).verify_thm_1_1(mis(2, 3, 1))
        assert [r.computed for r in reports] == ["2", "2", "2"]
        assert {r.evidence["method"] for r in reports} == {"orbit-modular"}

    def test_orbit_beyond_degree_cap(self, verifier):
        reports = verifier.verify_thm_1_1(mis(4, 2, 3))
        assert len(reports) == 9
        assert all(r.passed for r in reports), [r.computed for r in reports]
        assert [r.evidence["method"] for r in reports] == ["prs"] * 7 + ["orbit-modular"] * 2
        assert reports[8].computed == str(2 ** 15)

    def test_non_prime_power_is_skipped(self, verifier):
        [report] = verifier.verify_thm_1_1(mis(6, 2, 1))
        assert report.verdict == Verdict.SKIPPED
        assert report.computed == f"skipped: {NOT_PRIME_POWER}"

    def test_foreign_prime_fails_with_diagnostic(self, verifier, mocker):
        mocker.patch.object(verifier.norms, "eval_norm", return_value=NormResult.from_signed(-6))
        [report] = verifier.verify_thm_1_1(mis(2, 2, 1), i_max=1)
        assert report.failed
        assert report.computed == "6 (not a pure power of 2)"
        assert report.evidence["norm"] == -6


class TestTheorem15:
    def test_part_b(self, verifier):
        report = verifier.verify_thm_1_5(mis(2, 3, 1), 2, 1)
        assert (report.claim, report.expected, report.computed) == ("thm1.5b", "2", "2")

    def test_part_a(self, verifier):
        report = verifier.verify_thm_1_5(mis(2, 3, 1), 2, 2)
        assert (report.claim, report.expected, report.computed) == ("thm1.5a", "1", "1")

    def test_part_c(self, verifier):
        report = verifier.verify_thm_1_5(mis(2, 2, 1), 3, 1)
        assert (report.claim, report.expected, report.computed) == ("thm1.5c", "2", "2")

    def test_grid(self, verifier):
        for d in (2, 3):
            for m in (2, 3):
                for n in (1, 2):
                    for j in (2, 3, 4):
                        for ell in (1, 2):
                            if j != m:
                                report = verifier.verify_thm_1_5(mis(d, m, n), j, ell)
                                assert report.passed, (d, m, n, j, ell, report.computed)

    def test_j_equal_m_routed_to_scan(self, verifier):
        report = verifier.verify_thm_1_5(mis(2, 2, 1), 2, 1)
        assert report.claim == "thm1.5"
        assert report.verdict == Verdict.SKIPPED

    def test_non_prime_power(self, verifier):
        assert verifier.verify_thm_1_5(mis(6, 2, 1), 3, 1).verdict == Verdict.SKIPPED


class TestConjecture16:
    def test_period_two(self, verifier):
        reports = verifier.scan_conj_1_6(mis(2, 2, 2))
        assert [(r.params["l"], r.expected, r.computed) for r in reports] == [
            (1, "nonunit", "nonunit"),
            (2, "nonunit", "nonunit"),
        ]
        assert reports[0].evidence["norm"] in (5, -5)
        assert reports[1].evidence["norm"] == 0

    def test_grid(self, verifier):
        for d, n_max in ((2, 3), (3, 2)):
            for m in (2, 3):
                for n in range(1, n_max + 1):
                    reports = verifier.scan_conj_1_6(mis(d, m, n))
                    assert len(reports) == n
                    assert all(r.passed for r in reports)

    def test_beyond_n_is_unspecified(self, verifier):
        reports = verifier.scan_conj_1_6(mis(2, 2, 2), beyond_n=True)
        assert len(reports) == 4
        assert all(r.verdict == Verdict.SKIPPED and r.expected == "unspecified" for r in reports[2:])

    def test_candidate_is_rechecked(self, verifier, mocker):
        mocker.patch.object(verifier.norms, "eval_norm", return_value=NormResult.from_signed(1))
        report = verifier.scan_conj_1_6(mis(2, 2, 2))[0]
        assert report.failed
        assert report.evidence["recheck_method"] == "modular"
        assert abs(report.evidence["recheck_norm"]) == 5


class TestLehmer:
    @pytest.mark.parametrize("m, n, expected", [(4, 1, "nonunit"), (6, 3, "nonunit"), (5, 3, "unit")])
    def test_examples(self, verifier, m, n, expected):
        report = verifier.verify_lehmer(m, n)
        assert report.passed
        assert report.computed == expected

    def test_grid(self, verifier):
        for m in range(2, 21):
            for n in range(1, m):
                assert verifier.verify_lehmer(m, n).passed, (m, n)

    def test_precondition(self, verifier):
        assert verifier.verify_lehmer(3, 3).verdict == Verdict.SKIPPED


class TestIdentities:
    def test_quadratic_family_passes(self, verifier):
        reports = verifier.verify_identities(2)
        claims = {r.claim for r in reports}
        assert {"ident.mobius-inv", "ident.gleason-res", "ident.bek10", "ident.w-indep",
                "ident.common-root", "ident.orbit-diff", "ident.tail-diff"} <= claims
        assert not [r for r in reports if r.failed]

    def test_examples(self, verifier):
        assert verifier.check_mobius_inversion(2, 4).passed
        assert verifier.check_gleason_resultant(2, 2, 3).computed == "1"
        assert verifier.check_bek_congruence(2, 2, 1).passed
        assert verifier.check_mobius_sum(1000).passed

    def test_w_independence_over_two_orders(self, verifier):
        spec = mis(4, 3, 1)
        for ell in (1, 2):
            report = verifier.check_w_independence(spec, 2, ell)
            assert report.passed
            assert len(report.evidence["norms"]) == 3

    def test_bek_congruence_cubic(self, verifier):
        for j in (2, 3):
            for ell in (1, 2, 3):
                assert verifier.check_bek_congruence(3, j, ell).passed

    def test_bek_congruence_quartic_period_four(self, verifier):
        report = verifier.check_bek_congruence(4, 3, 4)
        assert report.passed, report.computed

    def test_common_root(self, verifier):
        reports = verifier.check_common_root(mis(2, 3, 2))
        assert [(r.params["i"], r.computed) for r in reports] == [(1, "nonzero"), (2, "zero")]
        assert all(r.passed for r in reports)

    def test_support_for_composite_degree(self, verifier):
        for i in (1, 2, 3):
            assert verifier.check_support(mis(6, 2, 1), i).passed

    def test_composite_degree_skips_prime_power_checks(self, verifier):
        bounds = IdentityBounds(N_max=3, n_max=2, i_max=1)
        reports = verifier.verify_identities(6, bounds)
        bek = [r for r in reports if r.claim == "ident.bek10"]
        assert verdicts(bek) == [Verdict.SKIPPED]
        assert not [r for r in reports if r.failed]

    def test_forced_failure(self, verifier, mocker):
        mocker.patch("application.services.verification_service.mobius_sum", return_value=7)
        assert verifier.check_mobius_sum(10).failed


class TestNewtonAndCertificates:
    def test_newton(self, verifier):
        report = verifier.verify_newton(2, 2)
        assert report.claim == "newton.3.4"
        assert report.passed
        assert report.computed == "(1,2) (2,1) (4,0) slopes -1 -1/2"

    def test_certificate(self, verifier):
        report = verifier.verify_certificate(mis(2, 2, 2))
        assert report.passed
        assert report.evidence["q"] == 3

    def test_degree_bound(self, verifier):
        assert verifier.verify_certificate(mis(2, 3, 1), degree_bound=True).passed
        skipped = verifier.verify_certificate(mis(2, 2, 2), degree_bound=True)
        assert skipped.verdict == Verdict.SKIPPED
        assert skipped.computed.startswith("skipped: inconclusive")


class TestGrid:
    def test_cells_name_service_methods(self, settings):
        cells = list(desk_grid(settings))
        assert {method for method, _ in cells} <= set(dir(VerificationService))
        assert ("verify_thm_1_1", {"spec": mis(6, 2, 1)}) in cells

    def test_acceptance_cells_are_present(self, settings):
        cells = list(desk_grid(settings))
        assert ("scan_conj_1_6", {"spec": mis(3, 3, 3)}) in cells
        assert ("scan_conj_1_6", {"spec": mis(3, 4, 3)}) in cells
        assert ("verify_certificate", {"spec": mis(5, 4, 1), "degree_bound": True}) in cells
        for d, m, n in [(2, 5, 4), (3, 3, 4), (4, 5, 1), (5, 4, 1), (5, 4, 2)]:
            assert ("verify_thm_1_1", {"spec": mis(d, m, n)}) in cells

    def test_out_of_range_cells_are_reported(self, settings):
        cells = list(desk_grid(settings))
        skip = ("skip_cell", {
            "claim": "thm1.1",
            "params": mis(5, 5, 1).to_params(),
            "reason": "degree 624 above grid limit 512",
        })
        assert skip in cells
        [report] = run_cells([skip], settings, jobs=1)
        assert report.claim == "thm1.1"
        assert report.verdict == Verdict.SKIPPED
        assert report.computed == "skipped: degree 624 above grid limit 512"

    def test_deterministic(self, settings):
        assert list(desk_grid(settings)) == list(desk_grid(settings))

    def test_run_cells_sorted(self, settings):
        cells = [
            ("verify_lehmer", {"m": 6, "n": 3}),
            ("verify_construction", {"spec": mis(2, 2, 2)}),
            ("verify_lehmer", {"m": 4, "n": 1}),
        ]
        reports = run_cells(cells, settings, jobs=1)
        assert [(r.claim, r.params.get("m")) for r in reports] == [("lehmer", 4), ("lehmer", 6), ("thm2.1", 2)]

    def test_timings(self):
        settings = AppSettings(report=ReportSettings(record_timings=False))
        report = VerificationService(settings).verify_lehmer(4, 1)
        assert report.elapsed_ms == 0
