from importlib.resources import files
from pathlib import Path
from typing import Any, Mapping

import yaml

from magellium.samplex.system.common.errors import DataFileNotFoundError, DatasetFormatError, ValidationError
from magellium.samplex.system.common.logger import LoggerFactory
from magellium.samplex.system.common.settings import DEFAULT_CAP
from magellium.samplex.system.core.axioms import AxiomId, Criterion, ExplainerId, PropertyId
from magellium.samplex.system.core.classifiers import TableClassifier
from magellium.samplex.system.core.datasets import Dataset
from magellium.samplex.system.core.theories import Instance, Theory
from magellium.samplex.system.axioms.application.business.services.universes import Universe, UniverseContext, context_of
from magellium.samplex.system.axioms.application.ports.outputs.fixtures import FixtureRepository


FIXTURES_PACKAGE = "magellium.samplex"
FIXTURES_DIRECTORY = "fixtures"
PROOF_FIXTURES_FILE = "proof_fixtures.yml"


def parse_refutation(text: str) -> tuple[ExplainerId, Criterion]:
    """``"Ldw/Monotonicity"`` to its (explainer, criterion) pair."""
    explainer_name, separator, criterion_name = str(text).partition("/")
    explainer = ExplainerId.of(explainer_name.strip())
    criterion: Criterion | None = AxiomId.of(criterion_name.strip()) or PropertyId.of(criterion_name.strip())
    if (not separator or explainer is None or criterion is None):
        raise DatasetFormatError(f"'{text}' is not of the form Explainer/Criterion", refutes=text)
    return explainer, criterion


class YamlFixtureRepository(FixtureRepository):
    """Proof fixtures read from one YAML document: a ``fixtures`` list of small theories, classifiers and datasets."""

    LOGGER = LoggerFactory.get_logger(__name__)

    def __init__(self, path: Path | None = None, cap: int = DEFAULT_CAP):
        self.__path = path
        self.__cap = cap
        self.__universes: list[Universe] | None = None

    def __read(self) -> Mapping[str, Any]:
        if (self.__path is None):
            resource = files(FIXTURES_PACKAGE).joinpath(FIXTURES_DIRECTORY, PROOF_FIXTURES_FILE)
            if (not resource.is_file()):
                raise DataFileNotFoundError(f"bundled fixture file '{PROOF_FIXTURES_FILE}' not found")
            text = resource.read_text(encoding="utf-8")
        else:
            if (not Path(self.__path).is_file()):
                raise DataFileNotFoundError(f"fixture file '{self.__path}' not found", path=str(self.__path))
            text = Path(self.__path).read_text(encoding="utf-8")
        try:
            document = yaml.safe_load(text)
        except yaml.YAMLError as exception:
            raise DatasetFormatError(f"fixture file is not valid YAML: {exception}")
        if (not isinstance(document, Mapping) or not isinstance(document.get("fixtures"), list)):
            raise DatasetFormatError("fixture file must hold a 'fixtures' list")
        return document

    def load_all(self) -> list[Universe]:
        if (self.__universes is None):
            document = self.__read()
            self.__universes = [self.__universe(entry) for entry in document["fixtures"]]
            self.LOGGER.debug(f"{len(self.__universes)} proof fixtures loaded")
        return list(self.__universes)

    def load(self, name: str) -> Universe:
        for universe in self.load_all():
            if (universe.name == name):
                return universe
        raise ValidationError(f"unknown fixture '{name}'", fixture=name)

    def __universe(self, entry: Mapping[str, Any]) -> Universe:
        name = str(entry.get("name", ""))
        if (not name):
            raise DatasetFormatError("every fixture needs a name")
        features = [str(feature) for feature in entry.get("features", ["f1", "f2"])]
        declared: Mapping[str, Any] = entry.get("domains") or {}
        domains = {feature: [str(value) for value in declared.get(feature, ["0", "1"])] for feature in features}
        theory = Theory.build(features, domains, [str(label) for label in entry.get("classes", ["0", "1"])])

        classifiers: dict[str, TableClassifier] = {}
        for classifier_name, table in (entry.get("classifiers") or {}).items():
            classifiers[str(classifier_name)] = TableClassifier(
                theory, {self.__instance(theory, key): str(label) for key, label in table.items()}
            )

        contexts: list[UniverseContext] = []
        for context in entry.get("contexts") or []:
            classifier_name = str(context["classifier"])
            if (classifier_name not in classifiers):
                raise DatasetFormatError(f"fixture '{name}' uses an undeclared classifier '{classifier_name}'")
            surrogate_name = context.get("surrogate")
            if (surrogate_name is not None and str(surrogate_name) not in classifiers):
                raise DatasetFormatError(f"fixture '{name}' uses an undeclared surrogate '{surrogate_name}'")
            targets = context.get("targets")
            contexts.append(context_of(
                name=f"{name}/{context['name']}",
                classifier_name=classifier_name,
                classifier=classifiers[classifier_name],
                dataset=Dataset(theory, [self.__instance(theory, text) for text in context["dataset"]]),
                cap=self.__cap,
                surrogate=classifiers[str(surrogate_name)] if surrogate_name is not None else None,
                targets=tuple(self.__instance(theory, text) for text in targets) if targets is not None else None,
            ))

        return Universe(
            name=name,
            contexts=tuple(contexts),
            refutes=tuple(parse_refutation(text) for text in entry.get("refutes") or []),
            description=str(entry.get("description", "")).strip(),
            certifies=tuple(str(tag) for tag in entry.get("certifies") or []),
        )

    @staticmethod
    def __instance(theory: Theory, text: str) -> Instance:
        return theory.instance([value.strip() for value in str(text).split(",")])


def load_fixtures(cap: int = DEFAULT_CAP) -> list[Universe]:
    return YamlFixtureRepository(cap=cap).load_all()
