from enum import Enum


class AxiomId(Enum):
    FEASIBILITY = "Feasibility"
    VALIDITY = "Validity"
    SUCCESS = "Success"
    COHERENCE = "Coherence"
    IRREDUCIBILITY = "Irreducibility"
    STRONG_IRREDUCIBILITY = "StrongIrreducibility"
    COMPLETENESS = "Completeness"
    STRONG_COMPLETENESS = "StrongCompleteness"
    MONOTONICITY = "Monotonicity"
    COUNTER_MONOTONICITY = "CounterMonotonicity"

    @staticmethod
    def of(value: str) -> "AxiomId | None":
        axiom: AxiomId | None = None
        for member in AxiomId:
            if member.value.lower() == value.lower() or member.name.lower() == value.lower():
                axiom = member
                break
        return axiom

    @property
    def needs_feature_space(self) -> bool:
        return self in (AxiomId.STRONG_IRREDUCIBILITY, AxiomId.STRONG_COMPLETENESS)

    @property
    def is_local(self) -> bool:
        """Decidable question by question, without looking at other questions."""
        return self not in (AxiomId.COHERENCE, AxiomId.MONOTONICITY, AxiomId.COUNTER_MONOTONICITY)


class PropertyId(Enum):
    FIDELITY = "Fidelity"

    @staticmethod
    def of(value: str) -> "PropertyId | None":
        for member in PropertyId:
            if member.value.lower() == value.lower():
                return member
        return None

    @property
    def needs_feature_space(self) -> bool:
        return True

    @property
    def is_local(self) -> bool:
        return True


Criterion = AxiomId | PropertyId


class Expectation(Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    UNKNOWN = "unknown"


class VerdictStatus(Enum):
    HOLDS_ON_UNIVERSE = "holds-on-universe"
    VIOLATED = "violated"
    INAPPLICABLE = "inapplicable"
    SKIPPED = "skipped"


class ExplainerId(Enum):
    LDW = "Ldw"
    LW = "Lw"
    LDC = "Ldc"
    LC = "Lc"
    LTR = "Ltr"
    LIR = "Lir"
    LSU = "Lsu"
    LCO = "Lco"

    @staticmethod
    def of(value: str) -> "ExplainerId | None":
        explainer: ExplainerId | None = None
        for member in ExplainerId:
            if member.value.lower() == value.lower():
                explainer = member
                break
        return explainer
