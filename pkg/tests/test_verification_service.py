"""
Unit Tests for Verification Service

Tests the named suites behind `cm verify` on the bundled configs.
"""

from pathlib import Path

import pytest

from src.domain.exceptions import UsageError
from src.domain.models.report import Verdict
from src.infrastructure.container import build_services

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


class TestVerificationService:
    """Test suite for VerificationService.run."""

    def setup_method(self):
        """Set up test fixtures."""
        self.services = build_services()
        self.service = self.services.verification

    def _load(self, *names):
        return [self.services.load(str(CONFIGS / f"{name}.json")) for name in names]

    # ==================== Dispatch Tests ====================

    def test_unknown_suite(self):
        """Test that an unknown suite is a usage error."""
        with pytest.raises(UsageError):
            self.service.run("lambda-rings", self._load("qeps"))

    def test_single_config_suite_rejects_two(self):
        """Test that bloch-k2 takes exactly one config."""
        with pytest.raises(UsageError):
            self.service.run("bloch-k2", self._load("f7eps", "z2x"))

    def test_suite_needs_configs(self):
        """Test that hc0 without configs is a usage error."""
        with pytest.raises(UsageError):
            self.service.run("hc0", [])

    def test_specseq_takes_no_configs(self):
        """Test that specseq-convergence refuses config files."""
        with pytest.raises(UsageError):
            self.service.run("specseq-convergence", self._load("qeps"))

    # ==================== Suite Tests ====================

    def test_bloch_k2_in_characteristic_two(self):
        """Test Z/2 on both sides with the denominator hypothesis violated."""
        report = self.service.run("bloch-k2", self._load("z2x"))
        assert report.verdict is Verdict.HYPOTHESES_VIOLATED_YES
        assert report.exit_code == 0
        assert [g.text for g in report.groups] == ["Z/2", "F_2"]

    @pytest.mark.slow
    def test_goodwillie_milnor_f7(self):
        """Test the comparison for F_7[e]/e^2 at n = 1."""
        report = self.service.run("goodwillie-milnor", self._load("f7eps"), n=1)
        assert report.verdict is Verdict.YES
        assert report.hypotheses == {"5_fold_stable": True, "denominators_invertible": True}

    @pytest.mark.slow
    def test_vdk_d2_f7(self):
        """Test K^M_2 against D_2 for F_7[e]/e^2, both trivial."""
        report = self.service.run("vdk-d2", self._load("f7eps"))
        assert report.verdict is Verdict.YES
        assert report.hypotheses == {"5_fold_stable": True}
        assert [g.name for g in report.groups] == ["K^M_2(R)", "D_2(R)"]
        assert all(g.text == "0" for g in report.groups)

    def test_hc0(self):
        """Test HC_0 = dim R on several algebras."""
        report = self.service.run("hc0", self._load("qeps", "qxy", "z2x"))
        assert report.verdict is Verdict.YES
        assert len(report.groups) == 3

    def test_hc1(self):
        """Test both routes against Ω^1/dR."""
        report = self.service.run("hc1", self._load("qxy", "qeps"))
        assert report.verdict is Verdict.YES
        assert report.details["Q[x,y]/(x,y)^2"]["agree"] is True

    def test_keller_identities(self):
        """Test that Keller's mixed complex satisfies its identities."""
        report = self.service.run("keller-identities", self._load("qeps", "z2x"), n=2)
        assert report.verdict is Verdict.YES
        assert report.details["assertions"] > 0

    def test_simplicial_identities(self):
        """Test the simplicial and cyclic identities up to degree 3."""
        report = self.service.run("simplicial-identities", self._load("qeps"), n=3)
        assert report.verdict is Verdict.YES
        assert not any(report.details["failures"].values())

    @pytest.mark.slow
    def test_simplicial_identities_in_degree_four(self):
        """Test the identities up to degree 4 over Q and F_2, at least 200 of them."""
        report = self.service.run("simplicial-identities", self._load("qeps", "z2x"), n=4)
        assert report.verdict is Verdict.YES
        assert report.details["assertions"] >= 200

    def test_periodicity(self):
        """Test exactness of the SBI sequence."""
        report = self.service.run("periodicity", self._load("qeps"), n=2)
        assert report.verdict is Verdict.YES

    def test_periodicity_with_two_variables(self):
        """Test exactness of the SBI sequence for Q[x,y]/(x,y)^2."""
        report = self.service.run("periodicity", self._load("qxy"), n=2)
        assert report.verdict is Verdict.YES

    def test_sbi_shift(self):
        """Test relative HN_1 against HC_0 over Q."""
        report = self.service.run("sbi-shift", self._load("qeps"), n=1, depth=3)
        assert report.hypotheses == {"characteristic_zero": True}
        assert report.verdict is Verdict.YES

    def test_stability(self):
        """Test brute-force stability against residue fields."""
        report = self.service.run("stability", self._load("f5", "z2x"), n=5)
        assert report.verdict is Verdict.YES
        assert report.details["F5"]["residue_fields"] == [5]

    @pytest.mark.slow
    def test_stability_over_four_algebras(self):
        """Test stability up to m = 5 for F_5, F_7, F_7[e]/e^2 and F_2[x]/x^2."""
        report = self.service.run("stability", self._load("f5", "f7", "f7eps", "z2x"), n=5)
        assert report.verdict is Verdict.YES
        assert report.details["F7"]["residue_fields"] == [7]
        assert report.details["F7[e]/e^2"]["residue_fields"] == [7]
        assert report.details["F2[x]/x^2"]["residue_fields"] == [2]

    def test_specseq_convergence(self):
        """Test a handful of seeded random bicomplexes."""
        report = self.service.run("specseq-convergence", [], seed=1, count=3)
        assert report.verdict is Verdict.YES
        assert len(report.details["bicomplexes"]) == 3

    @pytest.mark.slow
    def test_specseq_convergence_default_count(self):
        """Test the default 25 random bicomplexes of size 4."""
        report = self.service.run("specseq-convergence", [], seed=0)
        assert report.verdict is Verdict.YES
        assert len(report.details["bicomplexes"]) == 25
