from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from magellium.samplex.system.common.errors import ValidationError
from magellium.samplex.system.common.settings import Caps, OutputFormat
from magellium.samplex.system.core.decision_trees import SplitCriterion
from magellium.samplex.system.core.methods import ExplanationMethod
from magellium.samplex.system.core.theories import Theory


REVERSE_ORDER = "reverse"


class Command(Enum):
    EXPLAIN = "explain"
    ENVELOPE = "envelope"
    AXIOMS = "axioms"
    SURROGATE = "surrogate"
    DEMO_ZOO = "demo-zoo"
    ORACLE_COMPARE = "oracle-compare"

    @staticmethod
    def of(value: str) -> "Command | None":
        command: Command | None = None
        for member in Command:
            if member.value.lower() == value.lower():
                command = member
                break
        return command


@dataclass(frozen=True)
class RunConfig:
    """Everything one command needs, environment defaults already overridden by flags.

    ``order`` is kept as typed on the command line (feature names, indices or
    ``reverse``) and resolved against the theory once the data is loaded.
    """
    command: Command
    caps: Caps
    output_format: OutputFormat = OutputFormat.YAML
    data: Path | None = None
    domains: Path | None = None
    classifier: Path | None = None
    rows: tuple[int, ...] | None = None
    method: ExplanationMethod = ExplanationMethod.DWAXP
    target: str | None = None
    order: tuple[str, ...] | None = None
    out: Path | None = None
    all_maximal: bool = False
    criterion: SplitCriterion = SplitCriterion.GAIN_RATIO
    id_column: str | None = "name"
    max_workers: int = 1

    def __post_init__(self):
        if (self.max_workers < 1):
            raise ValidationError("max_workers must be a positive integer", max_workers=self.max_workers)
        if (self.domains is not None and self.data is None):
            raise ValidationError("--domains needs --data")
        if (self.classifier is not None and self.data is None):
            raise ValidationError("--classifier needs --data")


def resolve_order(theory: Theory, order: tuple[str, ...] | None) -> tuple[int, ...] | None:
    """Feature indices for a deletion order given by names or positions.

    A partial order lists the features to delete last: the unlisted ones are
    tried first, by index, then the listed ones in the given order.
    """
    if (order is None):
        return None
    if (len(order) == 1 and order[0].strip().lower() == REVERSE_ORDER):
        return tuple(reversed(range(theory.n)))
    indices: list[int] = []
    for token in order:
        text = token.strip()
        if (text in theory.features):
            indices.append(theory.feature_index(text))
            continue
        try:
            index = int(text)
        except ValueError:
            raise ValidationError(f"'{text}' in the deletion order is neither a feature nor an index", order=list(order))
        if (not 0 <= index < theory.n):
            raise ValidationError(f"feature index {index} out of range", order=list(order))
        indices.append(index)
    if (len(set(indices)) != len(indices)):
        raise ValidationError("the deletion order repeats a feature", order=list(order))
    listed = set(indices)
    return tuple(index for index in range(theory.n) if index not in listed) + tuple(indices)
