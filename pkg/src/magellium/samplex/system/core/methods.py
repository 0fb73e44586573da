from enum import Enum

from magellium.samplex.system.core.axioms import ExplainerId


class ExplanationMethod(Enum):
    """Explanation methods selectable from the command line."""
    DWAXP = "dwaxp"
    CAXP = "caxp"
    ALL_CAXP = "all-caxp"
    TRIVIAL = "trivial"
    IRREFUTABLE = "irrefutable"
    MIN_IRREFUTABLE = "min-irrefutable"
    SURROGATE = "surrogate"
    LW = "lw"
    LC = "lc"

    @staticmethod
    def of(value: str) -> "ExplanationMethod | None":
        method: ExplanationMethod | None = None
        for member in ExplanationMethod:
            if member.value.lower() == value.lower():
                method = member
                break
        return method

    @property
    def explainer_id(self) -> ExplainerId:
        return {
            ExplanationMethod.DWAXP: ExplainerId.LDW,
            ExplanationMethod.CAXP: ExplainerId.LDC,
            ExplanationMethod.ALL_CAXP: ExplainerId.LDC,
            ExplanationMethod.TRIVIAL: ExplainerId.LTR,
            ExplanationMethod.IRREFUTABLE: ExplainerId.LIR,
            ExplanationMethod.MIN_IRREFUTABLE: ExplainerId.LIR,
            ExplanationMethod.SURROGATE: ExplainerId.LSU,
            ExplanationMethod.LW: ExplainerId.LW,
            ExplanationMethod.LC: ExplainerId.LC,
        }[self]

    @property
    def is_single(self) -> bool:
        """Greedy methods return one explanation rather than the whole family."""
        return self in (ExplanationMethod.CAXP, ExplanationMethod.MIN_IRREFUTABLE)
