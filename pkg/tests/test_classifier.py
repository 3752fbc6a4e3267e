# type: ignore

import pytest
from utils import exponential_space, lorentz_space, root_weight, square_space

from olspace.classifier import (
    IMPLICATIONS,
    NO_RULE,
    ClassificationReport,
    InconsistentReportError,
    Premise,
    Property,
    PropertyVerdict,
    classify,
    classify_d2p_bundle,
    classify_daugavet,
    classify_kothe_dual,
    classify_m_ideal,
    classify_rnp,
)
from olspace.domain import Domain, Kind
from olspace.exceptions import UnsupportedSpaceError
from olspace.spaces import Side
from olspace.verdict import Verdict, all_of, any_of
from olspace.verify import expected_classifications
from olspace.weights import ConstantWeight

MATRIX = expected_classifications()


class TestVerdict:
    def test_kleene_conjunction(self):
        assert all_of([Verdict.HOLDS, Verdict.HOLDS]) is Verdict.HOLDS
        assert all_of([Verdict.HOLDS, Verdict.UNKNOWN]) is Verdict.UNKNOWN
        assert all_of([Verdict.UNKNOWN, Verdict.FAILS]) is Verdict.FAILS

    def test_kleene_disjunction(self):
        assert any_of([Verdict.FAILS, Verdict.FAILS]) is Verdict.FAILS
        assert any_of([Verdict.FAILS, Verdict.UNKNOWN]) is Verdict.UNKNOWN
        assert any_of([Verdict.UNKNOWN, Verdict.HOLDS]) is Verdict.HOLDS

    def test_negate_keeps_unknown(self):
        assert Verdict.HOLDS.negate() is Verdict.FAILS
        assert Verdict.UNKNOWN.negate() is Verdict.UNKNOWN
        assert not Verdict.UNKNOWN.decided


class TestRegressionMatrix:
    @pytest.mark.parametrize("row", MATRIX, ids=[row.label for row in MATRIX])
    def test_expected_verdicts(self, row):
        report = classify(row.build())
        for prop, expected in row.expected.items():
            assert report.verdict(prop) is expected, f"{row.label}: {prop.value}"

    @pytest.mark.parametrize("row", MATRIX, ids=[row.label for row in MATRIX])
    def test_report_is_consistent_and_complete(self, row):
        report = classify(row.build())
        report.check_consistency()
        assert [entry.property for entry in report.entries] == list(Property)
        for prop in row.noted:
            assert report.get(prop).note

    def test_sd2p_follows_delta2(self):
        assert classify(exponential_space()).verdict(Property.SD2P) is Verdict.HOLDS
        assert classify(square_space()).verdict(Property.SD2P) is Verdict.FAILS


class TestRules:
    def test_lorentz_rnp_depends_on_initial_weight(self):
        assert classify_rnp(lorentz_space()).verdict is Verdict.FAILS
        assert classify_rnp(lorentz_space(root_weight())).verdict is Verdict.HOLDS

    def test_sequence_rnp_uses_delta2_at_zero(self):
        spec = exponential_space(ConstantWeight(domain=Domain(kind=Kind.SEQUENCE)))
        entry = classify_rnp(spec)
        assert entry.verdict is Verdict.HOLDS
        assert entry.premises[0].condition == "φ satisfies Δ₂ near zero"

    def test_bundle_without_rnp_lists_failed_delta2(self):
        entries = classify_d2p_bundle(exponential_space())
        assert {entry.verdict for entry in entries} == {Verdict.HOLDS}
        assert all("characterization" in entry.note for entry in entries)

    def test_nonlinear_phi_excludes_diametral_properties(self):
        entries = {entry.property: entry for entry in classify_daugavet(square_space())}
        assert entries[Property.DAUGAVET].verdict is Verdict.FAILS
        assert entries[Property.ISOMETRICALLY_L1].verdict is Verdict.FAILS

    def test_constant_weight_lorentz_is_scaled_l1(self):
        entries = {entry.property: entry for entry in classify_daugavet(lorentz_space(ConstantWeight(3.0)))}
        assert entries[Property.ISOMETRICALLY_L1].verdict is Verdict.HOLDS
        assert "3" in entries[Property.ISOMETRICALLY_L1].note

    def test_m_ideal_for_nondegenerate_phi(self):
        assert classify_m_ideal(square_space()).verdict is Verdict.HOLDS

    @pytest.mark.parametrize(
        "rule", [classify_rnp, classify_d2p_bundle, classify_daugavet, classify_m_ideal], ids=lambda rule: rule.__name__
    )
    def test_lambda_rules_reject_m_side(self, rule):
        with pytest.raises(UnsupportedSpaceError):
            rule(square_space(side=Side.M))

    def test_kothe_dual_rejects_lambda_side(self):
        with pytest.raises(UnsupportedSpaceError):
            classify_kothe_dual(square_space())


class TestKotheDual:
    def test_finite_n_function_dual_has_no_ld2p(self):
        report = classify(square_space(side=Side.M))
        for prop in (Property.SD2P, Property.D2P, Property.LD2P, Property.DAUGAVET):
            assert report.verdict(prop) is Verdict.FAILS
        assert report.verdict(Property.RNP) is Verdict.UNKNOWN

    def test_infinite_conjugate_is_not_covered(self):
        report = classify(lorentz_space().dual())
        assert report.verdict(Property.LD2P) is Verdict.UNKNOWN
        assert report.get(Property.LD2P).rule == NO_RULE


class TestConsistency:
    def _report(self, verdicts, premises=()):
        entries = tuple(
            PropertyVerdict(property=prop, verdict=verdicts.get(prop, Verdict.UNKNOWN), rule="test", premises=premises)
            for prop in Property
        )
        return ClassificationReport(space="test", entries=entries)

    @pytest.mark.parametrize(("premise", "conclusion"), IMPLICATIONS)
    def test_broken_implication_is_rejected(self, premise, conclusion):
        report = self._report({premise: Verdict.HOLDS, conclusion: Verdict.FAILS})
        with pytest.raises(InconsistentReportError):
            report.check_consistency()

    def test_rnp_with_ld2p_is_rejected(self):
        report = self._report({Property.RNP: Verdict.HOLDS, Property.LD2P: Verdict.HOLDS})
        with pytest.raises(InconsistentReportError, match="RNP holds together with LD2P"):
            report.check_consistency()

    def test_decided_verdict_from_unknown_premise_is_rejected(self):
        premises = (Premise(condition="undecided", verdict=Verdict.UNKNOWN),)
        report = self._report({Property.RNP: Verdict.HOLDS}, premises)
        with pytest.raises(InconsistentReportError, match="unknown premise"):
            report.check_consistency()

    def test_report_serializes_verdict_values(self):
        entry = classify(square_space()).model_dump(mode="json")["entries"][0]
        assert entry["property"] == "RNP"
        assert entry["verdict"] == "holds"
        assert entry["premises"][0]["verdict"] == "holds"
