"""Axiom harness: verdicts per (explainer, criterion) and the expected-matrix comparison.

A verdict is ``holds-on-universe`` when no counterexample exists in the
universe, never "proved". Questions are evaluated in canonical universe
order, so the reported counterexample is the first one in that order
whatever the number of workers.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from magellium.samplex.system.common.errors import CapacityError, UniverseShapeError, UndefinedInstanceError
from magellium.samplex.system.common.logger import LoggerFactory
from magellium.samplex.system.core.axioms import AxiomId, Criterion, ExplainerId, Expectation, PropertyId, VerdictStatus
from magellium.samplex.system.core.questions import Question
from magellium.samplex.system.core.theories import PartialAssignment
from magellium.samplex.system.explainers.application.business.services.abductive import all_dwaxp
from magellium.samplex.system.axioms.application.business.services.properties import (
    Counterexample,
    coherence_violation,
    counter_monotonicity_violation,
    local_violation,
    monotonicity_violation,
)
from magellium.samplex.system.axioms.application.business.services.registry import ExplainerRegistry
from magellium.samplex.system.axioms.application.business.services.universes import QuestionRef, Universe


LOGGER = LoggerFactory.get_logger(__name__)

S = Expectation.SATISFIED
X = Expectation.VIOLATED
U = Expectation.UNKNOWN

CRITERIA: tuple[Criterion, ...] = tuple(AxiomId) + (PropertyId.FIDELITY,)

MATRIX_EXPLAINERS: tuple[ExplainerId, ...] = (
    ExplainerId.LW, ExplainerId.LC, ExplainerId.LDW, ExplainerId.LDC,
    ExplainerId.LCO, ExplainerId.LTR, ExplainerId.LIR, ExplainerId.LSU,
)

# columns follow MATRIX_EXPLAINERS
_ROWS: dict[Criterion, tuple[Expectation, ...]] = {
    AxiomId.FEASIBILITY: (S, S, S, S, S, S, S, S),
    AxiomId.VALIDITY: (S, S, S, S, S, S, S, S),
    AxiomId.SUCCESS: (S, S, S, S, S, S, S, S),
    AxiomId.COHERENCE: (S, S, X, X, S, S, S, S),
    AxiomId.IRREDUCIBILITY: (X, X, X, S, X, X, X, X),
    AxiomId.STRONG_IRREDUCIBILITY: (X, S, X, S, U, X, X, X),
    AxiomId.COMPLETENESS: (X, X, S, X, X, X, X, X),
    AxiomId.STRONG_COMPLETENESS: (S, X, S, X, U, X, X, X),
    AxiomId.MONOTONICITY: (S, S, X, X, U, S, X, X),
    AxiomId.COUNTER_MONOTONICITY: (S, S, S, X, U, S, X, X),
    PropertyId.FIDELITY: (S, X, S, X, U, X, X, X),
}

EXPECTED_MATRIX: Mapping[tuple[ExplainerId, Criterion], Expectation] = {
    (explainer, criterion): row[column]
    for criterion, row in _ROWS.items()
    for column, explainer in enumerate(MATRIX_EXPLAINERS)
}


@dataclass(frozen=True)
class Verdict:
    explainer: ExplainerId
    criterion: Criterion
    status: VerdictStatus
    universe: str
    universe_digest: str
    questions_checked: int = 0
    counterexample: Counterexample | None = None
    reason: str = ""

    def to_document(self) -> dict[str, Any]:
        document: dict[str, Any] = {
            "explainer": self.explainer.value,
            "criterion": self.criterion.value,
            "status": self.status.value,
            "universe": self.universe,
            "universe_digest": self.universe_digest,
            "questions_checked": self.questions_checked,
        }
        if (self.reason):
            document["reason"] = self.reason
        if (self.counterexample is not None):
            document["counterexample"] = self.counterexample.to_document()
        return document


class AxiomHarness:
    """Evaluates criteria for explainers over universes, using one registry for all of them."""

    LOGGER = LoggerFactory.get_logger(__name__)

    def __init__(self, registry: ExplainerRegistry, max_workers: int = 1):
        self.__registry = registry
        self.__max_workers = max_workers

    @property
    def registry(self) -> ExplainerRegistry:
        return self.__registry

    def __outputs(self, explainer: ExplainerId, refs: Sequence[QuestionRef]) -> list[frozenset[PartialAssignment]]:
        def run(ref: QuestionRef) -> frozenset[PartialAssignment]:
            return self.__registry.explain(explainer, ref.context, ref.question)

        if (self.__max_workers <= 1 or len(refs) < 2):
            return [run(ref) for ref in refs]
        with ThreadPoolExecutor(max_workers=self.__max_workers) as executor:
            return list(executor.map(run, refs))

    def __usable(self, explainer: ExplainerId, criterion: Criterion, ref: QuestionRef) -> bool:
        needs_space = criterion.needs_feature_space or ExplainerRegistry.needs_feature_space(explainer)
        return ref.context.feature_space or not needs_space

    def check(self, explainer: ExplainerId, criterion: Criterion, universe: Universe) -> Verdict:
        try:
            return self.__check(explainer, criterion, universe)
        except CapacityError as exception:
            return self.__verdict(explainer, criterion, universe, VerdictStatus.INAPPLICABLE, reason=exception.message)
        except UndefinedInstanceError as exception:
            return self.__verdict(explainer, criterion, universe, VerdictStatus.INAPPLICABLE, reason=exception.message)

    def __verdict(self, explainer, criterion, universe, status, checked=0, counterexample=None, reason="") -> Verdict:
        return Verdict(explainer, criterion, status, universe.name, universe.digest(), checked, counterexample, reason)

    def __check(self, explainer: ExplainerId, criterion: Criterion, universe: Universe) -> Verdict:
        if (criterion.is_local):
            refs = [ref for ref in universe.questions() if self.__usable(explainer, criterion, ref)]
            if (not refs):
                return self.__verdict(explainer, criterion, universe, VerdictStatus.INAPPLICABLE, reason="no usable question")
            outputs = self.__outputs(explainer, refs)
            cap = self.__registry.caps.subsets
            for ref, output in zip(refs, outputs):
                whole: Question | None = None
                if (criterion.needs_feature_space):
                    whole = ref.context.whole_question(ref.question, self.__registry.caps.feature_space)
                violation = local_violation(criterion, ref.question, output, whole, cap)
                if (violation is not None):
                    return self.__verdict(explainer, criterion, universe, VerdictStatus.VIOLATED, len(refs), violation)
            return self.__verdict(explainer, criterion, universe, VerdictStatus.HOLDS_ON_UNIVERSE, len(refs))

        if (criterion == AxiomId.COHERENCE):
            pairs = list(universe.coherence_pairs())
            check = coherence_violation
        elif (criterion == AxiomId.MONOTONICITY):
            pairs = list(universe.monotonicity_pairs())
            check = monotonicity_violation
        elif (criterion == AxiomId.COUNTER_MONOTONICITY):
            pairs = list(universe.monotonicity_pairs())
            check = counter_monotonicity_violation
        else:
            raise UniverseShapeError(f"no evaluation rule for {criterion.value}")
        pairs = [
            (first, second) for first, second in pairs
            if self.__usable(explainer, criterion, first) and self.__usable(explainer, criterion, second)
        ]
        if (not pairs):
            return self.__verdict(explainer, criterion, universe, VerdictStatus.INAPPLICABLE, reason="no question pair")
        firsts = self.__outputs(explainer, [first for first, _ in pairs])
        seconds = self.__outputs(explainer, [second for _, second in pairs])
        for (first, second), first_output, second_output in zip(pairs, firsts, seconds):
            violation = check(first.question, first_output, second.question, second_output)
            if (violation is not None):
                return self.__verdict(explainer, criterion, universe, VerdictStatus.VIOLATED, len(pairs), violation)
        return self.__verdict(explainer, criterion, universe, VerdictStatus.HOLDS_ON_UNIVERSE, len(pairs))


def check_axiom(explainer: ExplainerId, criterion: Criterion, universe: Universe, registry: ExplainerRegistry) -> Verdict:
    return AxiomHarness(registry).check(explainer, criterion, universe)


@dataclass(frozen=True)
class MatrixEntry:
    explainer: ExplainerId
    criterion: Criterion
    expected: Expectation
    desk: Verdict
    witness: Verdict | None = None

    @property
    def found(self) -> VerdictStatus:
        if (self.expected == Expectation.UNKNOWN):
            return VerdictStatus.SKIPPED
        if (self.witness is not None):
            return self.witness.status
        return self.desk.status

    @property
    def discrepancy(self) -> bool:
        if (self.expected == Expectation.SATISFIED):
            return self.desk.status != VerdictStatus.HOLDS_ON_UNIVERSE
        if (self.expected == Expectation.VIOLATED):
            return self.found != VerdictStatus.VIOLATED
        return False

    def to_document(self) -> dict[str, Any]:
        document: dict[str, Any] = {
            "explainer": self.explainer.value,
            "criterion": self.criterion.value,
            "expected": self.expected.value,
            "found": self.found.value,
            "discrepancy": self.discrepancy,
            "desk": self.desk.status.value,
        }
        shown = self.witness if self.witness is not None else self.desk
        if (self.expected != Expectation.UNKNOWN):
            document["universe"] = shown.universe
            document["universe_digest"] = shown.universe_digest
            if (shown.reason):
                document["reason"] = shown.reason
            if (shown.counterexample is not None):
                document["counterexample"] = shown.counterexample.to_document()
        return document


@dataclass(frozen=True)
class MatrixReport:
    universe: str
    universe_digest: str
    entries: tuple[MatrixEntry, ...]
    broken_implications: tuple[str, ...] = field(default=())

    @property
    def discrepancies(self) -> list[MatrixEntry]:
        return [entry for entry in self.entries if entry.discrepancy]

    def entry(self, explainer: ExplainerId, criterion: Criterion) -> MatrixEntry:
        for entry in self.entries:
            if (entry.explainer == explainer and entry.criterion == criterion):
                return entry
        raise KeyError((explainer, criterion))

    def grid(self) -> list[str]:
        symbols = {
            VerdictStatus.HOLDS_ON_UNIVERSE: "ok", VerdictStatus.VIOLATED: "x",
            VerdictStatus.INAPPLICABLE: "n/a", VerdictStatus.SKIPPED: "-",
        }
        explainers = list(dict.fromkeys(entry.explainer for entry in self.entries))
        criteria = list(dict.fromkeys(entry.criterion for entry in self.entries))
        lines = [" | ".join(["criterion"] + [explainer.value for explainer in explainers])]
        for criterion in criteria:
            cells = [criterion.value]
            for explainer in explainers:
                entry = self.entry(explainer, criterion)
                cells.append(symbols[entry.found] + ("!" if entry.discrepancy else ""))
            lines.append(" | ".join(cells))
        return lines

    def to_document(self) -> dict[str, Any]:
        return {
            "universe": self.universe,
            "universe_digest": self.universe_digest,
            "discrepancies": len(self.discrepancies),
            "broken_implications": list(self.broken_implications),
            "grid": self.grid(),
            "entries": [entry.to_document() for entry in self.entries],
        }


IMPLICATIONS: tuple[tuple[tuple[AxiomId, ...], AxiomId], ...] = (
    ((AxiomId.COMPLETENESS,), AxiomId.STRONG_COMPLETENESS),
    ((AxiomId.STRONG_COMPLETENESS,), AxiomId.SUCCESS),
    ((AxiomId.IRREDUCIBILITY,), AxiomId.STRONG_IRREDUCIBILITY),
    ((AxiomId.SUCCESS, AxiomId.FEASIBILITY, AxiomId.COHERENCE), AxiomId.VALIDITY),
    ((AxiomId.FEASIBILITY, AxiomId.VALIDITY, AxiomId.COMPLETENESS), AxiomId.COUNTER_MONOTONICITY),
)


def implication_text(premises: Iterable[AxiomId], conclusion: AxiomId) -> str:
    return f"{{{', '.join(premise.value for premise in premises)}}} => {conclusion.value}"


def check_implications(verdicts: Iterable[Verdict]) -> list[str]:
    """Implications whose premises all hold while the conclusion is violated, per explainer."""
    statuses: dict[tuple[ExplainerId, Criterion], VerdictStatus] = {
        (verdict.explainer, verdict.criterion): verdict.status for verdict in verdicts
    }
    explainers = list(dict.fromkeys(explainer for explainer, _ in statuses))
    broken: list[str] = []
    for explainer in explainers:
        for premises, conclusion in IMPLICATIONS:
            if (all(statuses.get((explainer, premise)) == VerdictStatus.HOLDS_ON_UNIVERSE for premise in premises)
                    and statuses.get((explainer, conclusion)) == VerdictStatus.VIOLATED):
                broken.append(f"{explainer.value}: {implication_text(premises, conclusion)}")
    return broken


def axiom_matrix(
    harness: AxiomHarness,
    universe: Universe,
    fixtures: Sequence[Universe] = (),
    explainers: Sequence[ExplainerId] = MATRIX_EXPLAINERS,
    criteria: Sequence[Criterion] = CRITERIA,
    expected: Mapping[tuple[ExplainerId, Criterion], Expectation] = EXPECTED_MATRIX,
) -> MatrixReport:
    """Checks every (explainer, criterion) on ``universe``; expected violations missing there are searched in the fixtures."""
    entries: list[MatrixEntry] = []
    verdicts: list[Verdict] = []
    for explainer in explainers:
        for criterion in criteria:
            expectation = expected.get((explainer, criterion), Expectation.UNKNOWN)
            desk = harness.check(explainer, criterion, universe)
            verdicts.append(desk)
            witness: Verdict | None = None
            if (expectation == Expectation.VIOLATED and desk.status != VerdictStatus.VIOLATED):
                ordered = sorted(fixtures, key=lambda fixture: not fixture.refutes_pair(explainer, criterion))
                for fixture in ordered:
                    found = harness.check(explainer, criterion, fixture)
                    if (found.status == VerdictStatus.VIOLATED):
                        witness = found
                        break
            entry = MatrixEntry(explainer, criterion, expectation, desk, witness)
            if (entry.discrepancy):
                LOGGER.warning(
                    f"{explainer.value} / {criterion.value}: expected {expectation.value}, found {entry.found.value}"
                )
            entries.append(entry)
    return MatrixReport(universe.name, universe.digest(), tuple(entries), tuple(check_implications(verdicts)))


@dataclass(frozen=True)
class Characterization:
    explainer: ExplainerId
    equals_ldw: bool
    outputs_dwaxps_only: bool
    differing_question: str = ""

    def to_document(self) -> dict[str, Any]:
        return {
            "explainer": self.explainer.value,
            "equals_ldw": self.equals_ldw,
            "outputs_dwaxps_only": self.outputs_dwaxps_only,
            "differing_question": self.differing_question,
        }


def characterize(harness: AxiomHarness, explainer: ExplainerId, universe: Universe) -> Characterization:
    """Compares an explainer's outputs with the dataset-scoped weak explanations, question by question."""
    equal = True
    contained = True
    differing = ""
    cap = harness.registry.caps.subsets
    for ref in universe.questions():
        if (not ref.context.feature_space and ExplainerRegistry.needs_feature_space(explainer)):
            continue
        output = harness.registry.explain(explainer, ref.context, ref.question)
        weak = all_dwaxp(ref.question, cap).as_frozenset()
        if (output != weak):
            equal = False
            differing = differing or f"{ref.context.name}: {ref.question.target.to_text()}"
        if (not output <= weak):
            contained = False
    return Characterization(explainer, equal, contained, differing)
