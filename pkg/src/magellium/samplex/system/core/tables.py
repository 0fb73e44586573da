"""Labelled tables: the raw rows read from a dataset file and what is derived from them.

Building a table infers the theory (unless domains are declared), drops
duplicate rows and rejects rows that repeat an instance with another label.
"""
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from magellium.samplex.system.common.errors import (
    ContradictoryLabelError,
    DatasetFormatError,
    InvalidLiteralError,
    ValidationError,
)
from magellium.samplex.system.core.classifiers import TableClassifier
from magellium.samplex.system.core.datasets import Dataset
from magellium.samplex.system.core.theories import Instance, Theory


UNSEEN_VALUE = "<unseen>"
UNSEEN_CLASS = "<none>"


@dataclass(frozen=True)
class DomainDeclaration:
    domains: Mapping[str, tuple[str, ...]]
    classes: tuple[str, ...] | None = None


@dataclass(frozen=True)
class LabelledTable:
    theory: Theory
    dataset: Dataset
    classifier: TableClassifier
    rows: tuple[tuple[Instance, str], ...]
    names: tuple[str | None, ...]
    duplicates_dropped: int = 0
    padded_features: tuple[str, ...] = ()
    padded_classes: bool = False
    source: str = ""
    metadata: Mapping[str, Any] = field(default_factory=dict)

    @property
    def rows_read(self) -> int:
        return len(self.rows)

    def summary(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "rows_read": self.rows_read,
            "instances": self.dataset.m,
            "duplicates_dropped": self.duplicates_dropped,
            "features": self.theory.n,
            "classes": list(self.theory.classes),
            "padded_features": list(self.padded_features),
            "padded_classes": self.padded_classes,
            "dataset": self.dataset.digest(),
        }

    def multiplicity(self) -> dict[Instance, int]:
        """Number of raw rows behind each dataset instance."""
        counts: dict[Instance, int] = {instance: 0 for instance in self.dataset}
        for instance, _ in self.rows:
            if (instance in counts):
                counts[instance] += 1
        return counts

    def restricted_to_rows(self, indices: Iterable[int]) -> "LabelledTable":
        """Same theory and classifier, dataset limited to the given raw rows."""
        chosen: list[Instance] = []
        for index in indices:
            if (not 0 <= index < self.rows_read):
                raise ValidationError(f"row {index} out of range", rows=self.rows_read)
            instance = self.rows[index][0]
            if (instance not in chosen):
                chosen.append(instance)
        return LabelledTable(
            theory=self.theory,
            dataset=Dataset(self.theory, chosen),
            classifier=self.classifier,
            rows=self.rows,
            names=self.names,
            duplicates_dropped=self.duplicates_dropped,
            padded_features=self.padded_features,
            padded_classes=self.padded_classes,
            source=self.source,
            metadata=self.metadata,
        )

    def with_classifier(self, classifier: TableClassifier) -> "LabelledTable":
        for instance, label in self.rows:
            if (classifier.is_defined(instance) and classifier.predict(instance) != label):
                raise ContradictoryLabelError(
                    "classifier table disagrees with the dataset", instance=instance.to_text(), label=label
                )
        return LabelledTable(
            theory=self.theory,
            dataset=self.dataset,
            classifier=classifier,
            rows=self.rows,
            names=self.names,
            duplicates_dropped=self.duplicates_dropped,
            padded_features=self.padded_features,
            padded_classes=self.padded_classes,
            source=self.source,
            metadata=self.metadata,
        )


def parse_domain_lines(lines: Iterable[str]) -> DomainDeclaration:
    domains: dict[str, tuple[str, ...]] = {}
    classes: tuple[str, ...] | None = None
    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if (not line or line.startswith("#")):
            continue
        name, separator, values = line.partition(":")
        if (not separator):
            raise DatasetFormatError(f"domain line {number} is not of the form 'feature: v1,v2'", line=line)
        parsed = tuple(value.strip() for value in values.split(",") if value.strip())
        if (name.strip() == "classes"):
            classes = parsed
        else:
            domains[name.strip()] = parsed
    return DomainDeclaration(domains, classes)


def _first_appearance(values: Iterable[str]) -> list[str]:
    return list(dict.fromkeys(values))


def build_table(
    header: Sequence[str],
    records: Sequence[Sequence[str]],
    declaration: DomainDeclaration | None = None,
    id_column: str | None = None,
    source: str = "",
) -> LabelledTable:
    """Builds the theory, the distinct-instance dataset and the row-to-label classifier.

    ``header`` lists every column; the last one is the class. ``id_column``,
    when present in the header, is kept as row metadata and is not a feature,
    unless ``declaration`` declares a domain for it.
    """
    columns = [str(column).strip() for column in header]
    if (len(columns) < 2):
        raise DatasetFormatError("a dataset needs at least one feature column and a class column", header=columns)
    if (len(records) == 0):
        raise DatasetFormatError("dataset has no data rows", source=source)
    if (declaration is not None and id_column in declaration.domains):
        id_column = None
    id_index: int | None = columns.index(id_column) if (id_column and id_column in columns[:-1]) else None
    feature_indices = [index for index in range(len(columns) - 1) if index != id_index]
    features = [columns[index] for index in feature_indices]
    if (len(features) == 0):
        raise DatasetFormatError("dataset has no feature column", header=columns)

    cleaned: list[list[str]] = []
    for number, record in enumerate(records):
        if (len(record) != len(columns)):
            raise DatasetFormatError(
                f"row {number} has {len(record)} values, expected {len(columns)}", row=number
            )
        cleaned.append([str(value).strip() for value in record])

    padded: list[str] = []
    domains: dict[str, tuple[str, ...]] = {}
    for position, feature in zip(feature_indices, features):
        observed = _first_appearance(record[position] for record in cleaned)
        if (declaration is not None and feature in declaration.domains):
            declared = declaration.domains[feature]
            unknown = [value for value in observed if value not in declared]
            if (unknown):
                raise DatasetFormatError(
                    f"values {unknown} of '{feature}' are missing from its declared domain", feature=feature
                )
            domains[feature] = declared
        elif (len(observed) < 2):
            padded.append(feature)
            domains[feature] = tuple(observed) + (UNSEEN_VALUE,)
        else:
            domains[feature] = tuple(observed)

    labels_seen = _first_appearance(record[-1] for record in cleaned)
    padded_classes = False
    if (declaration is not None and declaration.classes is not None):
        unknown = [label for label in labels_seen if label not in declaration.classes]
        if (unknown):
            raise DatasetFormatError(f"labels {unknown} are missing from the declared classes", labels=unknown)
        classes = declaration.classes
    elif (len(labels_seen) < 2):
        padded_classes = True
        classes = tuple(labels_seen) + (UNSEEN_CLASS,)
    else:
        classes = tuple(labels_seen)

    try:
        theory = Theory.build(features, domains, classes)
    except InvalidLiteralError as exception:
        raise DatasetFormatError(exception.message, **exception.details)

    rows: list[tuple[Instance, str]] = []
    names: list[str | None] = []
    table: dict[Instance, str] = {}
    ordered: list[Instance] = []
    duplicates = 0
    for number, record in enumerate(cleaned):
        instance = theory.instance([record[position] for position in feature_indices])
        label = record[-1]
        previous: str | None = table.get(instance)
        if (previous is None):
            table[instance] = label
            ordered.append(instance)
        elif (previous != label):
            raise ContradictoryLabelError(
                f"row {number} repeats an instance with label '{label}' instead of '{previous}'",
                row=number,
                instance=instance.to_text(),
            )
        else:
            duplicates += 1
        rows.append((instance, label))
        names.append(record[id_index] if id_index is not None else None)

    return LabelledTable(
        theory=theory,
        dataset=Dataset(theory, ordered),
        classifier=TableClassifier(theory, table),
        rows=tuple(rows),
        names=tuple(names),
        duplicates_dropped=duplicates,
        padded_features=tuple(padded),
        padded_classes=padded_classes,
        source=source,
    )


def select_target(table: LabelledTable, selector: str) -> Instance:
    """Resolves ``row=N``, ``name=<id>`` or a ``feature=value,...`` match to a dataset instance.

    Matches pick the first raw row, in file order.
    """
    text = selector.strip()
    key, separator, value = text.partition("=")
    if (not separator):
        raise ValidationError(f"target '{selector}' must be row=N, name=ID or feature=value", target=selector)
    key = key.strip()
    value = value.strip()
    if (key == "row"):
        try:
            index = int(value)
        except ValueError:
            raise ValidationError(f"row index '{value}' is not an integer", target=selector)
        if (not 0 <= index < table.rows_read):
            raise ValidationError(f"row {index} out of range", rows=table.rows_read)
        return _in_dataset(table, table.rows[index][0], selector)
    if (key == "name" and key not in table.theory.features):
        for (instance, _), name in zip(table.rows, table.names):
            if (name == value):
                return _in_dataset(table, instance, selector)
        raise ValidationError(f"no row named '{value}'", target=selector)
    pattern = table.theory.parse_assignment(text)
    for instance, _ in table.rows:
        if (instance in table.dataset and all(
                expected is None or expected == actual for expected, actual in zip(pattern.values, instance.values))):
            return instance
    raise ValidationError(f"no dataset row matches '{selector}'", target=selector)


def _in_dataset(table: LabelledTable, instance: Instance, selector: str) -> Instance:
    if (instance not in table.dataset):
        raise ValidationError(f"target '{selector}' is not in the selected rows", target=selector)
    return instance
