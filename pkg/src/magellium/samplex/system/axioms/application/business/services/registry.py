import threading

from magellium.samplex.system.common.logger import LoggerFactory
from magellium.samplex.system.common.settings import Caps
from magellium.samplex.system.core.axioms import ExplainerId
from magellium.samplex.system.core.decision_trees import SplitCriterion
from magellium.samplex.system.core.envelopes import Envelope
from magellium.samplex.system.core.questions import Question
from magellium.samplex.system.core.theories import PartialAssignment, covers
from magellium.samplex.system.explainers.application.business.services.abductive import (
    all_caxp,
    all_dwaxp,
    lc_all,
    lw_all,
    trivial_explain,
)
from magellium.samplex.system.explainers.application.business.services.coherence import (
    coherent_from_envelope,
    greedy_envelope,
    irr_envelope,
)
from magellium.samplex.system.explainers.application.business.services.surrogate import (
    SurrogateCache,
    lsu_explain,
    surrogate_explain,
)
from magellium.samplex.system.axioms.application.business.services.universes import UniverseContext


FEATURE_SPACE_EXPLAINERS = (ExplainerId.LW, ExplainerId.LC)


class ExplainerRegistry:
    """Binds every explainer id to a function of a question inside a universe context.

    Envelopes and surrogate trees are built once per context and reused for
    all of its targets; outputs are memoised per (explainer, context, target).
    """

    LOGGER = LoggerFactory.get_logger(__name__)

    def __init__(self, caps: Caps, criterion: SplitCriterion = SplitCriterion.GAIN_RATIO):
        self.__caps = caps
        self.__surrogates = SurrogateCache(criterion)
        self.__envelopes: dict[tuple[ExplainerId, UniverseContext], Envelope] = {}
        self.__outputs: dict[tuple[ExplainerId, UniverseContext, tuple], frozenset[PartialAssignment]] = {}
        self.__lock = threading.Lock()

    @property
    def caps(self) -> Caps:
        return self.__caps

    @staticmethod
    def needs_feature_space(explainer: ExplainerId) -> bool:
        return explainer in FEATURE_SPACE_EXPLAINERS

    def explain(self, explainer: ExplainerId, context: UniverseContext, question: Question) -> frozenset[PartialAssignment]:
        key = (explainer, context, question.target.values)
        with self.__lock:
            cached = self.__outputs.get(key)
        if (cached is not None):
            return cached
        output = frozenset(self.__compute(explainer, context, question))
        with self.__lock:
            self.__outputs[key] = output
        return output

    def __compute(self, explainer: ExplainerId, context: UniverseContext, question: Question):
        subsets = self.__caps.subsets
        if (explainer == ExplainerId.LDW):
            return all_dwaxp(question, subsets)
        if (explainer == ExplainerId.LDC):
            return all_caxp(question, subsets)
        if (explainer == ExplainerId.LW):
            return lw_all(question, min(subsets, self.__caps.feature_space))
        if (explainer == ExplainerId.LC):
            return lc_all(question, min(subsets, self.__caps.feature_space))
        if (explainer == ExplainerId.LTR):
            return trivial_explain(question)
        if (explainer in (ExplainerId.LIR, ExplainerId.LCO)):
            envelope = self.envelope(explainer, context)
            if (explainer == ExplainerId.LCO):
                return coherent_from_envelope(envelope, question)
            return [member for member in envelope if covers(member, question.target)]
        if (context.surrogate is not None):
            return surrogate_explain(question, context.surrogate, min(subsets, self.__caps.feature_space))
        tree = self.__surrogates.tree_for(context.dataset, context.classifier)
        return lsu_explain(question, tree, subsets)

    def envelope(self, explainer: ExplainerId, context: UniverseContext) -> Envelope:
        key = (explainer, context)
        with self.__lock:
            envelope = self.__envelopes.get(key)
        if (envelope is None):
            cap = min(self.__caps.subsets, self.__caps.pool)
            if (explainer == ExplainerId.LCO):
                envelope = greedy_envelope(context.dataset, context.classifier, cap)
            else:
                envelope = irr_envelope(context.dataset, context.classifier, cap)
            with self.__lock:
                envelope = self.__envelopes.setdefault(key, envelope)
        return envelope
