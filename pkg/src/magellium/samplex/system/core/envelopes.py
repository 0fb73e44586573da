from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterator, Mapping

from magellium.samplex.system.core.explanations import ExplanationSet
from magellium.samplex.system.core.theories import Instance, PartialAssignment


@dataclass(frozen=True)
class DwaxpPool:
    """Union of the dataset-scoped weak explanations of every dataset instance, with class labels."""
    members: ExplanationSet
    labels: Mapping[PartialAssignment, str]

    def label_of(self, member: PartialAssignment) -> str:
        return self.labels[member]

    def __iter__(self) -> Iterator[PartialAssignment]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, member: object) -> bool:
        return member in self.members


@dataclass(frozen=True)
class Envelope:
    explanations: ExplanationSet
    dataset_digest: str
    classifier_digest: str

    def __iter__(self) -> Iterator[PartialAssignment]:
        return iter(self.explanations)

    def __len__(self) -> int:
        return len(self.explanations)

    def __contains__(self, member: object) -> bool:
        return member in self.explanations

    def to_document(self) -> dict[str, Any]:
        document = self.explanations.to_document()
        document["dataset"] = self.dataset_digest
        document["classifier"] = self.classifier_digest
        return document


@dataclass(frozen=True)
class CoherenceVerdict:
    """``coherent`` is False exactly when a conflicting pair with witnesses is attached."""
    coherent: bool
    first: PartialAssignment | None = None
    second: PartialAssignment | None = None
    first_witness: Instance | None = None
    second_witness: Instance | None = None

    def __bool__(self) -> bool:
        return self.coherent


class EnvelopeCondition(Enum):
    COHERENCE = "coherence"
    MEMBERSHIP = "membership"
    COVERAGE = "coverage"


@dataclass(frozen=True)
class EnvelopeVerdict:
    is_envelope: bool
    failed: EnvelopeCondition | None = None
    witness: str = ""

    def __bool__(self) -> bool:
        return self.is_envelope
