import pytest

from magellium.samplex.system.common.errors import UniverseShapeError, ValidationError, DatasetFormatError
from magellium.samplex.system.common.settings import Caps
from magellium.samplex.system.core.axioms import AxiomId, ExplainerId, Expectation, PropertyId, VerdictStatus
from magellium.samplex.system.core.classifiers import TableClassifier
from magellium.samplex.system.core.datasets import Dataset
from magellium.samplex.system.core.theories import Theory
from magellium.samplex.system.axioms.application.business.services.harness import (
    CRITERIA,
    EXPECTED_MATRIX,
    MATRIX_EXPLAINERS,
    AxiomHarness,
    Verdict,
    axiom_matrix,
    characterize,
    check_axiom,
    check_implications,
)
from magellium.samplex.system.axioms.application.business.services.properties import (
    coherence_violation,
    local_violation,
    monotonicity_violation,
)
from magellium.samplex.system.axioms.application.business.services.registry import ExplainerRegistry
from magellium.samplex.system.axioms.application.business.services.universes import (
    Universe,
    UniverseContext,
    context_of,
    desk_universe,
    single_context_universe,
)
from magellium.samplex.system.axioms.infrastructure.adapters.outputs.fixtures import (
    YamlFixtureRepository,
    load_fixtures,
    parse_refutation,
)

from tests.conftest import question_on


@pytest.fixture(scope="module")
def fixtures() -> YamlFixtureRepository:
    return YamlFixtureRepository()


@pytest.fixture()
def harness() -> AxiomHarness:
    return AxiomHarness(ExplainerRegistry(Caps()))


@pytest.fixture(scope="module")
def desk() -> Universe:
    return desk_universe()


def parse_all(theory, *texts):
    return frozenset(theory.parse_assignment(text) for text in texts)


class TestLocalCriteria:

    def test_trivial_output_is_reducible_and_incomplete(self, two_rows):
        question = question_on(two_rows, 0)
        trivial = frozenset({question.target.as_assignment()})
        violation = local_violation(AxiomId.IRREDUCIBILITY, question, trivial)
        assert violation is not None
        assert violation.explanations[1] == two_rows.theory.parse_assignment("f2=0")
        assert violation.replay()
        completeness = local_violation(AxiomId.COMPLETENESS, question, trivial)
        assert completeness.explanations == (two_rows.theory.parse_assignment("f2=0"),)
        assert local_violation(AxiomId.FEASIBILITY, question, trivial) is None
        assert local_violation(AxiomId.VALIDITY, question, trivial) is None

    def test_invalid_and_infeasible_outputs(self, two_rows):
        question = question_on(two_rows, 0)
        theory = two_rows.theory
        invalid = local_violation(AxiomId.VALIDITY, question, parse_all(theory, "f1=0"))
        assert invalid.witnesses == (theory.instance(["0", "1"]),)
        assert local_violation(AxiomId.FEASIBILITY, question, parse_all(theory, "f2=1")) is not None
        assert local_violation(AxiomId.SUCCESS, question, frozenset()) is not None

    def test_strong_criteria_need_the_feature_space(self, two_rows):
        question = question_on(two_rows, 0)
        with pytest.raises(ValidationError):
            local_violation(AxiomId.STRONG_COMPLETENESS, question, frozenset())
        with pytest.raises(ValidationError):
            local_violation(AxiomId.COHERENCE, question, frozenset())


def test_pairwise_criteria(two_rows, fixtures):
    theory = two_rows.theory
    first, second = question_on(two_rows, 0), question_on(two_rows, 1)
    assert coherence_violation(first, parse_all(theory, "f2=0"), second, parse_all(theory, "f2=1")) is None
    violation = coherence_violation(first, parse_all(theory, "f1=0,f2=0"), second, parse_all(theory, "f1=0"))
    assert violation.criterion == AxiomId.COHERENCE
    assert violation.replay()

    universe = fixtures.load("two-rows")
    (smaller, bigger), = [
        (left, right) for left, right in universe.monotonicity_pairs()
        if left.context is not right.context and left.question.target == first.target
    ]
    lost = monotonicity_violation(
        smaller.question, parse_all(theory, "f2=0"), bigger.question, parse_all(theory, "f1=0,f2=0"),
    )
    assert lost.explanations == (theory.parse_assignment("f2=0"),)
    assert lost.replay()


class TestFixtures:

    def test_bundled_fixtures_are_read(self, fixtures):
        names = [universe.name for universe in fixtures.load_all()]
        assert names[:3] == ["two-rows", "three-rows", "three-class"]
        assert fixtures.load("two-rows").certifies == ("I4", "I5")
        assert fixtures.load("three-class").certifies == ("I1", "I2", "I3")
        assert (ExplainerId.LDW, AxiomId.MONOTONICITY) in fixtures.load("two-rows").refutes
        assert [universe.name for universe in load_fixtures()] == names

    def test_partial_classifiers_have_no_feature_space(self, fixtures):
        three_rows = fixtures.load("three-rows")
        assert not three_rows.contexts[0].feature_space
        assert fixtures.load("two-rows").contexts[0].feature_space

    def test_unknown_fixture(self, fixtures):
        with pytest.raises(ValidationError):
            fixtures.load("missing")

    def test_malformed_fixture_files(self, tmp_path):
        path = tmp_path / "fixtures.yml"
        path.write_text("fixtures: {}\n", encoding="utf-8")
        with pytest.raises(DatasetFormatError):
            YamlFixtureRepository(path).load_all()
        path.write_text(
            "fixtures:\n  - name: broken\n    classifiers: {k: {'0,0': '0'}}\n"
            "    contexts: [{name: D, classifier: other, dataset: ['0,0']}]\n",
            encoding="utf-8",
        )
        with pytest.raises(DatasetFormatError):
            YamlFixtureRepository(path).load_all()

    def test_refutation_text(self):
        assert parse_refutation("Lir/CounterMonotonicity") == (ExplainerId.LIR, AxiomId.COUNTER_MONOTONICITY)
        assert parse_refutation("Lc/Fidelity") == (ExplainerId.LC, PropertyId.FIDELITY)
        with pytest.raises(DatasetFormatError):
            parse_refutation("Ldw")


def test_universe_targets_must_be_in_the_dataset():
    theory = Theory.binary(1)
    classifier = TableClassifier(theory, {theory.instance(["0"]): "0"})
    with pytest.raises(UniverseShapeError):
        Universe("bad", (UniverseContext(
            "c", "k", classifier, Dataset.of_rows(theory, [["0"]]), targets=(theory.instance(["1"]),),
        ),))


def test_desk_universe_shape(desk):
    assert desk.name == "desk-2x2"
    assert len(desk.contexts) == 16 * 15
    assert desk.size() == 16 * 32
    assert all(context.feature_space for context in desk.contexts)
    assert desk.digest() == desk_universe().digest()


class TestHarness:

    def test_monotonicity_of_dataset_explanations_fails_on_two_rows(self, harness, fixtures):
        verdict = harness.check(ExplainerId.LDW, AxiomId.MONOTONICITY, fixtures.load("two-rows"))
        assert verdict.status == VerdictStatus.VIOLATED
        assert verdict.counterexample.replay()
        assert verdict.to_document()["counterexample"]["criterion"] == "Monotonicity"

    def test_dataset_explanations_are_complete_on_the_desk(self, harness, desk):
        verdict = harness.check(ExplainerId.LDW, AxiomId.COMPLETENESS, desk)
        assert verdict.status == VerdictStatus.HOLDS_ON_UNIVERSE
        assert verdict.questions_checked == desk.size()

    def test_strong_criteria_are_inapplicable_without_the_feature_space(self, harness, fixtures):
        verdict = harness.check(ExplainerId.LDW, AxiomId.STRONG_COMPLETENESS, fixtures.load("three-rows"))
        assert verdict.status == VerdictStatus.INAPPLICABLE
        assert verdict.reason

    def test_workers_do_not_change_the_counterexample(self, fixtures):
        universe = fixtures.load("three-class")
        single = AxiomHarness(ExplainerRegistry(Caps())).check(ExplainerId.LDC, AxiomId.COHERENCE, universe)
        pooled = AxiomHarness(ExplainerRegistry(Caps()), max_workers=4).check(ExplainerId.LDC, AxiomId.COHERENCE, universe)
        assert single.status == pooled.status == VerdictStatus.VIOLATED
        assert single.counterexample.to_document() == pooled.counterexample.to_document()

    def test_check_axiom_uses_its_own_harness(self, fixtures):
        verdict = check_axiom(ExplainerId.LTR, AxiomId.FEASIBILITY, fixtures.load("three-rows"), ExplainerRegistry(Caps()))
        assert verdict.status == VerdictStatus.HOLDS_ON_UNIVERSE
        assert verdict.questions_checked == 3

    def test_single_context_universe(self, harness, three_rows):
        universe = single_context_universe("three-rows", three_rows.classifier, three_rows.dataset)
        verdict = harness.check(ExplainerId.LIR, AxiomId.VALIDITY, universe)
        assert verdict.status == VerdictStatus.HOLDS_ON_UNIVERSE
        assert verdict.questions_checked == 3

    def test_characterization_of_irrefutable_explanations(self, harness, fixtures):
        found = characterize(harness, ExplainerId.LIR, fixtures.load("three-rows"))
        assert found.outputs_dwaxps_only
        assert not found.equals_ldw
        assert characterize(harness, ExplainerId.LDW, fixtures.load("three-rows")).equals_ldw


def test_registry_memoises_outputs(three_rows):
    registry = ExplainerRegistry(Caps())
    context = context_of("three-rows", "k", three_rows.classifier, three_rows.dataset)
    question = context.questions()[0]
    first = registry.explain(ExplainerId.LIR, context, question)
    assert registry.explain(ExplainerId.LIR, context, question) is first
    assert first == parse_all(three_rows.theory, "f2=0", "f1=0,f2=0")
    assert registry.envelope(ExplainerId.LCO, context) is registry.envelope(ExplainerId.LCO, context)


def test_broken_implications_are_reported():
    def verdict(criterion, status):
        return Verdict(ExplainerId.LTR, criterion, status, "u", "d")

    holds, violated = VerdictStatus.HOLDS_ON_UNIVERSE, VerdictStatus.VIOLATED
    broken = check_implications([verdict(AxiomId.COMPLETENESS, holds), verdict(AxiomId.STRONG_COMPLETENESS, violated)])
    assert broken == ["Ltr: {Completeness} => StrongCompleteness"]
    assert check_implications([verdict(AxiomId.COMPLETENESS, violated), verdict(AxiomId.STRONG_COMPLETENESS, violated)]) == []


def test_expected_matrix_covers_every_cell():
    assert len(EXPECTED_MATRIX) == len(MATRIX_EXPLAINERS) * len(CRITERIA)
    assert EXPECTED_MATRIX[(ExplainerId.LDW, AxiomId.COMPLETENESS)] == Expectation.SATISFIED
    assert EXPECTED_MATRIX[(ExplainerId.LCO, AxiomId.MONOTONICITY)] == Expectation.UNKNOWN


def test_axiom_matrix_matches_the_expected_verdicts(desk, fixtures):
    report = axiom_matrix(AxiomHarness(ExplainerRegistry(Caps())), desk, fixtures.load_all())
    assert [entry.to_document() for entry in report.discrepancies] == []
    assert report.broken_implications == ()
    assert report.entry(ExplainerId.LIR, AxiomId.MONOTONICITY).found == VerdictStatus.VIOLATED
    assert report.grid()[0].split(" | ")[1:] == [explainer.value for explainer in MATRIX_EXPLAINERS]
