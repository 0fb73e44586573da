import os
import tempfile
from pathlib import Path

# the loggers open their file on first use, keep it out of the working tree
os.environ.setdefault("SAMPLEX_LOG_FILE", str(Path(tempfile.mkdtemp(prefix="samplex-tests-")) / "samplex.log"))

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from magellium.samplex.system.core.classifiers import TableClassifier
from magellium.samplex.system.core.datasets import Dataset
from magellium.samplex.system.core.questions import Question, make_question
from magellium.samplex.system.core.tables import LabelledTable
from magellium.samplex.system.core.theories import Theory, enumerate_feature_space
from magellium.samplex.system.explainers.infrastructure.adapters.outputs.repository import CsvDatasetRepository


settings.register_profile("ci", max_examples=10_000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("dev", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("SAMPLEX_HYPOTHESIS_PROFILE", "dev"))


FIXTURES = Path(__file__).resolve().parents[1] / "src" / "magellium" / "samplex" / "fixtures"


def question_on(table: LabelledTable, row: int) -> Question:
    return make_question(table.theory, table.classifier, table.dataset, table.rows[row][0])


@pytest.fixture(scope="session")
def repository() -> CsvDatasetRepository:
    return CsvDatasetRepository()


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def two_rows(repository) -> LabelledTable:
    """D1 = {(0,0): 0, (0,1): 1}, labels read from the rows."""
    return repository.load_bundled("two_rows.csv", "binary.domains")


@pytest.fixture(scope="session")
def two_rows_xor(repository, two_rows) -> LabelledTable:
    """D1 with the XOR classifier defined over the whole feature space."""
    full = repository.load_bundled("xor.csv", "binary.domains")
    return two_rows.with_classifier(full.classifier)


@pytest.fixture(scope="session")
def three_rows(repository) -> LabelledTable:
    """D = {(0,0): 0, (1,0): 0, (1,1): 1}, classifier undefined on (0,1)."""
    return repository.load_bundled("three_rows.csv", "three_rows.domains")


@pytest.fixture(scope="session")
def zoo(repository) -> LabelledTable:
    return repository.load_bundled("zoo.csv", "zoo.domains")


@st.composite
def theories(draw, max_features: int = 3, max_values: int = 3, max_classes: int = 3) -> Theory:
    n = draw(st.integers(min_value=1, max_value=max_features))
    arities = draw(st.lists(st.integers(min_value=2, max_value=max_values), min_size=n, max_size=n))
    classes = draw(st.integers(min_value=2, max_value=max_classes))
    return Theory(
        features=tuple(f"f{index + 1}" for index in range(n)),
        domains=tuple(tuple(str(value) for value in range(arity)) for arity in arities),
        classes=tuple(f"c{index}" for index in range(classes)),
    )


@st.composite
def contexts(draw, max_features: int = 3, max_values: int = 2, max_classes: int = 3) -> tuple[Dataset, TableClassifier]:
    """A nonempty dataset and a total classifier of a small random theory."""
    theory = draw(theories(max_features, max_values, max_classes))
    space = list(enumerate_feature_space(theory, 2 ** 10))
    labels = draw(st.lists(st.sampled_from(theory.classes), min_size=len(space), max_size=len(space)))
    chosen = draw(st.lists(st.sampled_from(space), min_size=1, max_size=len(space), unique=True))
    return Dataset(theory, chosen), TableClassifier(theory, dict(zip(space, labels)))


@st.composite
def questions(draw, max_features: int = 3, max_values: int = 2, max_classes: int = 3) -> Question:
    dataset, classifier = draw(contexts(max_features, max_values, max_classes))
    target = draw(st.sampled_from(dataset.instances))
    return make_question(dataset.theory, classifier, dataset, target)
