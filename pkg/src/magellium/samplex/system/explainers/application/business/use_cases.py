from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any

from magellium.samplex.system.common.errors import (
    DiscrepancyError,
    ExitCode,
    TheoryMismatchError,
    ValidationError,
)
from magellium.samplex.system.common.logger import LoggerFactory
from magellium.samplex.system.core.decision_trees import DecisionTree
from magellium.samplex.system.core.methods import ExplanationMethod
from magellium.samplex.system.core.questions import Question, make_question
from magellium.samplex.system.core.tables import LabelledTable, select_target
from magellium.samplex.system.core.theories import Instance, PartialAssignment, union_consistent
from magellium.samplex.system.explainers.application.business.run_configs import RunConfig, resolve_order
from magellium.samplex.system.explainers.application.business.services.abductive import minimal_elements
from magellium.samplex.system.explainers.application.business.services.coherence import is_irrefutable
from magellium.samplex.system.explainers.application.business.services.explanation import ExplanationService
from magellium.samplex.system.explainers.application.business.services.oracles import OracleReport, compare_all
from magellium.samplex.system.explainers.application.business.services.surrogate import (
    find_axp_tree,
    is_dwaxp_tree,
    lsu_explain,
    rules_to_decision_list,
    tree_accuracy,
)
from magellium.samplex.system.explainers.application.ports.outputs.repository import DatasetRepository
from magellium.samplex.system.axioms.application.business.services.certificates import (
    COMPATIBLE_SETS,
    INCOMPATIBLE_SETS,
    check_incompatibility,
    compatibility_sweep,
)
from magellium.samplex.system.axioms.application.business.services.harness import AxiomHarness, axiom_matrix
from magellium.samplex.system.axioms.application.business.services.universes import (
    Universe,
    desk_universe,
    single_context_universe,
)
from magellium.samplex.system.axioms.application.ports.outputs.fixtures import FixtureRepository


ZOO_DATA = "zoo.csv"
ZOO_DOMAINS = "zoo.domains"
ZOO_INSTANCES = 59
REFERENCE_ANTELOPE_SIZE = 14

# reference size-14 irrefutable explanation of antelope: every literal but fins and domestic
REFERENCE_ANTELOPE_OMITS = ("fins", "domestic")


@dataclass(frozen=True)
class CommandReport:
    document: dict[str, Any]
    failures: int = 0

    @property
    def exit_code(self) -> ExitCode:
        return ExitCode.DISCREPANCY if (self.failures > 0) else ExitCode.SUCCESS


def question_document(question: Question) -> dict[str, Any]:
    return {
        "target": question.target.to_strings(),
        "class": question.label,
        "digest": question.digest(),
    }


class UseCase(ABC):
    def __init__(self):
        raise NotImplementedError()

    @abstractmethod
    def execute(self) -> CommandReport:
        raise NotImplementedError()


class AbstractUseCase(UseCase, ABC):

    LOGGER = LoggerFactory.get_logger(__name__)

    def __init__(self, service: ExplanationService, repository: DatasetRepository, config: RunConfig):
        self.__service = service
        self.__repository = repository
        self.__config = config

    @property
    def _service(self) -> ExplanationService:
        return self.__service

    @property
    def _repository(self) -> DatasetRepository:
        return self.__repository

    @property
    def _config(self) -> RunConfig:
        return self.__config

    def _load_table(self) -> LabelledTable:
        if (self.__config.data is None):
            raise ValidationError(f"{self.__config.command.value} needs a dataset: use --data")
        table: LabelledTable = self.__repository.load(self.__config.data, self.__config.domains)
        if (self.__config.classifier is not None):
            full: LabelledTable = self.__repository.load(self.__config.classifier, self.__config.domains)
            if (full.theory != table.theory):
                raise TheoryMismatchError(
                    "the classifier table and the dataset do not share features, domains and classes",
                    classifier=str(self.__config.classifier),
                )
            table = table.with_classifier(full.classifier)
        if (self.__config.rows is not None):
            table = table.restricted_to_rows(self.__config.rows)
            self.LOGGER.info(f"Dataset restricted to rows {list(self.__config.rows)} ({table.dataset.m} instances)")
        return table

    def _question(self, table: LabelledTable) -> Question:
        if (self.__config.target is None):
            raise ValidationError("a target is required: --target row=N, name=ID or feature=value")
        target: Instance = select_target(table, self.__config.target)
        return make_question(table.theory, table.classifier, table.dataset, target)


class ExplainUseCase(AbstractUseCase):
    def __init__(self, service: ExplanationService, repository: DatasetRepository, config: RunConfig):
        super().__init__(service, repository, config)

    def execute(self) -> CommandReport:
        table = self._load_table()
        question = self._question(table)
        order = resolve_order(table.theory, self._config.order)
        explanations = self._service.explain(question, self._config.method, order, table.multiplicity())
        return CommandReport({
            "command": self._config.command.value,
            "dataset": table.summary(),
            "question": question_document(question),
            "method": self._config.method.value,
            "explanations": explanations.to_document(),
        })


class EnvelopeUseCase(AbstractUseCase):
    def __init__(self, service: ExplanationService, repository: DatasetRepository, config: RunConfig):
        super().__init__(service, repository, config)

    def execute(self) -> CommandReport:
        table = self._load_table()
        document: dict[str, Any] = {"command": self._config.command.value, "dataset": table.summary()}
        if (self._config.all_maximal):
            envelopes = self._service.maximal_envelopes(table.dataset, table.classifier)
            document["maximal_envelopes"] = [envelope.to_document() for envelope in envelopes]
            return CommandReport(document)
        envelope = self._service.irrefutable_envelope(table.dataset, table.classifier)
        document["envelope"] = envelope.to_document()
        document["decision_list"] = self._service.envelope_surrogate(envelope, table.dataset, table.classifier).to_lines()
        return CommandReport(document)


class SurrogateUseCase(AbstractUseCase):
    def __init__(self, service: ExplanationService, repository: DatasetRepository, config: RunConfig):
        super().__init__(service, repository, config)

    def execute(self) -> CommandReport:
        table = self._load_table()
        tree: DecisionTree = self._service.surrogate(table.dataset, table.classifier, table.multiplicity())
        correct, total = tree_accuracy(tree, table.rows)
        order = resolve_order(table.theory, self._config.order)
        targets = [self._question(table).target] if (self._config.target is not None) else list(table.dataset)
        names = {}
        for (instance, _), name in zip(table.rows, table.names):
            names.setdefault(instance, name)

        explanations: list[dict[str, Any]] = []
        for target in targets:
            explanation = find_axp_tree(tree, target, order)
            if (not is_dwaxp_tree(tree, target, explanation)):
                raise DiscrepancyError("tree explanation fails its membership test", target=target.to_text())
            entry: dict[str, Any] = {"instance": target.to_strings(), "class": tree.predict(target), "axp": explanation.to_strings()}
            if (names.get(target) is not None):
                entry = {"name": names[target], **entry}
            explanations.append(entry)
        self.LOGGER.info(f"Tree fitted: root {tree.root_feature}, accuracy {correct}/{total}, {tree.size()} nodes")
        return CommandReport({
            "command": self._config.command.value,
            "dataset": table.summary(),
            "criterion": self._config.criterion.value,
            "root": tree.root_feature,
            "accuracy": {"correct": correct, "total": total},
            "size": tree.size(),
            "depth": tree.depth(),
            "tree": tree.to_document(),
            "rules": rules_to_decision_list(tree).to_lines(),
            "explanations": explanations,
        })


class AxiomsUseCase(AbstractUseCase):
    """Axiom matrix on the desk universe (or on the loaded data), with the incompatibility certificates."""

    def __init__(
        self,
        service: ExplanationService,
        repository: DatasetRepository,
        config: RunConfig,
        harness: AxiomHarness,
        fixtures: FixtureRepository,
    ):
        super().__init__(service, repository, config)
        self.__harness = harness
        self.__fixtures = fixtures

    def __universe(self) -> Universe:
        if (self._config.data is None):
            return desk_universe()
        table = self._load_table()
        return single_context_universe(table.source, table.classifier, table.dataset, self._config.caps.feature_space)

    def execute(self) -> CommandReport:
        caps = self._config.caps
        universe = self.__universe()
        fixtures = self.__fixtures.load_all()
        self.LOGGER.info(f"Checking the axiom matrix on {universe.name} ({universe.size()} questions)...")
        matrix = axiom_matrix(self.__harness, universe, fixtures)

        certifying = [fixture for fixture in fixtures if fixture.certifies]
        failures = len(matrix.discrepancies) + len(matrix.broken_implications)
        certificates: list[dict[str, Any]] = []
        for name, axioms in INCOMPATIBLE_SETS.items():
            fixture = next((fixture for fixture in certifying if name in fixture.certifies), None)
            if (fixture is None):
                raise ValidationError(f"no proof fixture certifies {name}", name=name)
            certificate = check_incompatibility(axioms, fixture, caps)
            if (not certificate.incompatible):
                failures += 1
                self.LOGGER.warning(f"{name} has a satisfying assignment on {fixture.name}")
            certificates.append({"name": name, **certificate.to_document()})

        assignments: list[dict[str, Any]] = []
        for name, axioms in COMPATIBLE_SETS.items():
            for fixture in certifying:
                certificate = check_incompatibility(axioms, fixture, caps)
                if (certificate.incompatible):
                    failures += 1
                    self.LOGGER.warning(f"{name} has no satisfying assignment on {fixture.name}")
                assignments.append({"name": name, **certificate.to_document()})

        sweep = compatibility_sweep(certifying, caps)
        self.LOGGER.info(f"Axiom matrix done: {len(matrix.discrepancies)} discrepancies, {failures} failures overall")
        return CommandReport({
            "command": self._config.command.value,
            "matrix": matrix.to_document(),
            "incompatibility_certificates": certificates,
            "satisfying_assignments": assignments,
            "compatibility_sweep": sweep.to_document(),
            "failures": failures,
        }, failures)


@dataclass(frozen=True)
class ChecklistItem:
    claim: str
    expected: Any
    found: Any
    asserted: bool = True

    @property
    def passed(self) -> bool:
        return self.expected == self.found

    def to_document(self) -> dict[str, Any]:
        return {
            "claim": self.claim,
            "expected": self.expected,
            "found": self.found,
            "status": ("pass" if self.passed else "fail") if self.asserted else "reported",
        }


class DemoZooUseCase(AbstractUseCase):
    """Reproduces the zoo walkthrough: concise, irrefutable and surrogate explanations of antelope and crow."""

    def __init__(self, service: ExplanationService, repository: DatasetRepository, config: RunConfig):
        super().__init__(service, repository, config)

    @staticmethod
    def __literals(explanation: PartialAssignment) -> list[str]:
        return explanation.to_strings()

    def execute(self) -> CommandReport:
        table = self._repository.load_bundled(ZOO_DATA, ZOO_DOMAINS)
        theory = table.theory
        multiplicity = table.multiplicity()
        antelope = make_question(theory, table.classifier, table.dataset, select_target(table, "name=antelope"))
        crow = make_question(theory, table.classifier, table.dataset, select_target(table, "name=crow"))
        milk = theory.feature_index("milk")
        feathers = theory.feature_index("feathers")
        everything = tuple(range(theory.n))
        milk_last = tuple(index for index in everything if index != milk) + (milk,)
        feathers_last = tuple(index for index in everything if index != feathers) + (feathers,)

        items: list[ChecklistItem] = [
            ChecklistItem("rows read", 101, table.rows_read),
            ChecklistItem("distinct instances", ZOO_INSTANCES, table.dataset.m, asserted=False),
        ]

        antelope_concise = self._service.explain(antelope, ExplanationMethod.CAXP, milk_last).members[0]
        crow_concise = self._service.explain(crow, ExplanationMethod.CAXP, feathers_last).members[0]
        items.append(ChecklistItem("concise explanation of antelope", ["milk=1"], self.__literals(antelope_concise)))
        items.append(ChecklistItem("concise explanation of crow", ["feathers=1"], self.__literals(crow_concise)))
        items.append(ChecklistItem(
            "concise explanations of antelope and crow are consistent although the classes differ",
            True,
            union_consistent(antelope_concise, crow_concise) and antelope.label != crow.label,
        ))

        minimal = self._service.explain(antelope, ExplanationMethod.MIN_IRREFUTABLE).members[0]
        reducible = [
            minimal.without(feature).to_text() for feature in sorted(minimal.features)
            if is_irrefutable(antelope, minimal.without(feature))
        ]
        items.append(ChecklistItem("greedy irrefutable explanation of antelope is irrefutable", True, is_irrefutable(antelope, minimal)))
        items.append(ChecklistItem("no literal can be dropped from it", [], reducible))
        items.append(ChecklistItem("size of the greedy irrefutable explanation", REFERENCE_ANTELOPE_SIZE, len(minimal), asserted=False))
        omitted = {theory.feature_index(feature) for feature in REFERENCE_ANTELOPE_OMITS}
        reference = antelope.target.restricted_to(feature for feature in everything if feature not in omitted)
        items.append(ChecklistItem(
            f"reference size-{len(reference)} explanation of antelope is irrefutable",
            True,
            is_irrefutable(antelope, reference),
            asserted=False,
        ))

        tree: DecisionTree = self._service.surrogate(table.dataset, table.classifier, multiplicity)
        correct, total = tree_accuracy(tree, table.rows)
        antelope_tree = find_axp_tree(tree, antelope.target)
        crow_tree = find_axp_tree(tree, crow.target)
        antelope_all = minimal_elements(lsu_explain(antelope, tree, self._config.caps.subsets))
        items.append(ChecklistItem("root of the surrogate tree", "milk", tree.root_feature))
        items.append(ChecklistItem("surrogate accuracy on the rows", f"{total}/{total}", f"{correct}/{total}"))
        items.append(ChecklistItem("surrogate explanation of antelope", ["milk=1"], self.__literals(antelope_tree)))
        items.append(ChecklistItem(
            "surrogate explanation of antelope is unique",
            [["milk=1"]],
            [self.__literals(explanation) for explanation in antelope_all],
        ))
        items.append(ChecklistItem("surrogate explanation of crow", ["feathers=1", "milk=0"], sorted(self.__literals(crow_tree))))
        items.append(ChecklistItem(
            "surrogate explanations of antelope and crow are coherent",
            False,
            union_consistent(antelope_tree, crow_tree),
        ))

        failures = sum(1 for item in items if item.asserted and not item.passed)
        for item in items:
            if (item.asserted and not item.passed):
                self.LOGGER.warning(f"Zoo claim failed: {item.claim} (expected {item.expected}, found {item.found})")
        self.LOGGER.info(f"Zoo walkthrough: {len(items) - failures} of {len(items)} claims hold or are reported")
        return CommandReport({
            "command": self._config.command.value,
            "dataset": table.summary(),
            "tree": {"root": tree.root_feature, "size": tree.size(), "depth": tree.depth()},
            "checklist": [item.to_document() for item in items],
            "failures": failures,
        }, failures)


class OracleCompareUseCase(AbstractUseCase):
    def __init__(self, service: ExplanationService, repository: DatasetRepository, config: RunConfig):
        super().__init__(service, repository, config)

    def execute(self) -> CommandReport:
        if (self._config.data is None):
            universe = desk_universe()
            subject = universe.name
            pairs = [(context.dataset, context.classifier) for context in universe.contexts]
        else:
            table = self._load_table()
            subject = table.source
            pairs = [(table.dataset, table.classifier)]
        self.LOGGER.info(f"Comparing operations with their oracles on {subject} ({len(pairs)} contexts)...")
        report = compare_all(OracleReport(subject), pairs, self._config.caps, self._config.criterion)
        for comparison in report.comparisons.values():
            if (comparison.mismatches):
                self.LOGGER.warning(f"{comparison.name}: {comparison.mismatches} mismatches out of {comparison.checked}")
        return CommandReport({"command": self._config.command.value, **report.to_document()}, report.mismatches)
