import pytest
from hypothesis import given, settings

from magellium.samplex.system.common.errors import CapacityError
from magellium.samplex.system.common.settings import Caps
from magellium.samplex.system.explainers.application.business.services.oracles import (
    COMPARISONS,
    CONCISE,
    OracleComparison,
    OracleReport,
    compare_all,
    compare_concise,
)

from tests.conftest import contexts


def test_comparison_keeps_the_first_mismatch():
    comparison = OracleComparison("check")
    comparison.record(True, lambda: "never described")
    comparison.record(False, lambda: "first")
    comparison.record(False, lambda: "second")
    assert (comparison.checked, comparison.mismatches, comparison.first_mismatch) == (3, 2, "first")

    total = OracleComparison("check")
    total.merge(comparison)
    total.merge(OracleComparison("check", checked=4))
    assert total.to_document() == {"comparison": "check", "checked": 7, "mismatches": 2, "first_mismatch": "first"}
    assert "first_mismatch" not in OracleComparison("clean", checked=1).to_document()


def test_concise_explanations_on_three_rows(three_rows):
    comparison = compare_concise(three_rows.dataset, three_rows.classifier, Caps())
    assert comparison.checked == 2 * three_rows.dataset.m
    assert comparison.mismatches == 0


@settings(max_examples=10_000)
@given(contexts())
def test_operations_agree_with_their_oracles(context):
    report = compare_all(OracleReport("generated"), [context], Caps())
    assert report.contexts == 1
    assert report.mismatches == 0, report.to_document()
    assert [entry["comparison"] for entry in report.to_document()["comparisons"]] == list(COMPARISONS)


def test_every_comparison_runs_on_two_rows(two_rows_xor):
    report = compare_all(OracleReport("two-rows"), [(two_rows_xor.dataset, two_rows_xor.classifier)], Caps())
    assert report.mismatches == 0
    assert all(comparison.checked > 0 for comparison in report.comparisons.values())
    assert report.comparisons[CONCISE].checked == 4


def test_large_datasets_are_refused(zoo):
    with pytest.raises(CapacityError):
        compare_all(OracleReport("zoo"), [(zoo.dataset, zoo.classifier)], Caps())
