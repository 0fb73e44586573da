from abc import ABC, abstractmethod
from typing import Mapping, Sequence

from magellium.samplex.system.common.errors import DiscrepancyError
from magellium.samplex.system.common.logger import LoggerFactory
from magellium.samplex.system.common.settings import Caps
from magellium.samplex.system.core.classifiers import Classifier
from magellium.samplex.system.core.datasets import Dataset
from magellium.samplex.system.core.decision_lists import DecisionListClassifier
from magellium.samplex.system.core.decision_trees import DecisionTree, SplitCriterion
from magellium.samplex.system.core.envelopes import Envelope
from magellium.samplex.system.core.explanations import ExplanationSet
from magellium.samplex.system.core.methods import ExplanationMethod
from magellium.samplex.system.core.questions import Question
from magellium.samplex.system.core.theories import Instance
from magellium.samplex.system.explainers.application.business.services.abductive import (
    all_caxp,
    all_dwaxp,
    feature_space_question,
    find_caxp,
    is_dwaxp,
    lc_all,
    lw_all,
    trivial_explain,
)
from magellium.samplex.system.explainers.application.business.services.coherence import (
    find_minimal_irrefutable,
    irr_envelope,
    is_irrefutable,
    lir_explain,
    maximal_envelopes,
    sigma_from_envelope,
)
from magellium.samplex.system.explainers.application.business.services.surrogate import (
    SurrogateCache,
    find_axp_tree,
    is_dwaxp_tree,
    lsu_explain,
)


class ExplanationService:

    def __init__(self):
        raise NotImplementedError()

    @abstractmethod
    def explain(
        self,
        question: Question,
        method: ExplanationMethod,
        deletion_order: Sequence[int] | None = None,
        multiplicity: Mapping[Instance, int] | None = None,
    ) -> ExplanationSet:
        raise NotImplementedError()

    @abstractmethod
    def irrefutable_envelope(self, dataset: Dataset, classifier: Classifier) -> Envelope:
        raise NotImplementedError()

    @abstractmethod
    def maximal_envelopes(self, dataset: Dataset, classifier: Classifier) -> list[Envelope]:
        raise NotImplementedError()

    @abstractmethod
    def surrogate(self, dataset: Dataset, classifier: Classifier, multiplicity: Mapping[Instance, int] | None = None) -> DecisionTree:
        raise NotImplementedError()

    @abstractmethod
    def envelope_surrogate(self, envelope: Envelope, dataset: Dataset, classifier: Classifier) -> DecisionListClassifier:
        raise NotImplementedError()


class ExplanationServiceImpl(ExplanationService, ABC):
    """Runs the explainers under the configured caps and re-verifies every explanation it returns."""

    LOGGER = LoggerFactory.get_logger(__name__)

    def __init__(self, caps: Caps, criterion: SplitCriterion = SplitCriterion.GAIN_RATIO):
        self.__caps: Caps = caps
        self.__surrogates: SurrogateCache = SurrogateCache(criterion)

    @property
    def caps(self) -> Caps:
        return self.__caps

    @property
    def criterion(self) -> SplitCriterion:
        return self.__surrogates.criterion

    def explain(
        self,
        question: Question,
        method: ExplanationMethod,
        deletion_order: Sequence[int] | None = None,
        multiplicity: Mapping[Instance, int] | None = None,
    ) -> ExplanationSet:
        self.LOGGER.info(f"Explaining {question.target.to_text()} (class {question.label}) with {method.value}...")
        explanations: ExplanationSet = self.__compute(question, method, deletion_order, multiplicity)
        self.__verify(question, method, explanations, multiplicity)
        self.LOGGER.info(f"{len(explanations)} explanations found and verified with {method.value}")
        return explanations

    def __compute(
        self,
        question: Question,
        method: ExplanationMethod,
        deletion_order: Sequence[int] | None,
        multiplicity: Mapping[Instance, int] | None,
    ) -> ExplanationSet:
        subsets: int = self.__caps.subsets
        digest: str = question.digest()
        if (method == ExplanationMethod.DWAXP):
            return all_dwaxp(question, subsets)
        if (method == ExplanationMethod.CAXP):
            return ExplanationSet([find_caxp(question, deletion_order)], explainer="Ldc", question_digest=digest)
        if (method == ExplanationMethod.ALL_CAXP):
            return all_caxp(question, subsets)
        if (method == ExplanationMethod.TRIVIAL):
            return trivial_explain(question)
        if (method == ExplanationMethod.IRREFUTABLE):
            return lir_explain(question, min(subsets, self.__caps.pool))
        if (method == ExplanationMethod.MIN_IRREFUTABLE):
            return ExplanationSet([find_minimal_irrefutable(question, deletion_order)], explainer="Lir", question_digest=digest)
        if (method == ExplanationMethod.SURROGATE):
            tree: DecisionTree = self.surrogate(question.dataset, question.classifier, multiplicity)
            if (deletion_order is not None):
                return ExplanationSet([find_axp_tree(tree, question.target, deletion_order)], explainer="Lsu", question_digest=digest)
            return lsu_explain(question, tree, subsets)
        if (method == ExplanationMethod.LW):
            return lw_all(question, min(subsets, self.__caps.feature_space))
        return lc_all(question, min(subsets, self.__caps.feature_space))

    def __verify(
        self,
        question: Question,
        method: ExplanationMethod,
        explanations: ExplanationSet,
        multiplicity: Mapping[Instance, int] | None,
    ) -> None:
        check = self.__membership_test(question, method, multiplicity)
        for explanation in explanations:
            if (not check(explanation)):
                raise DiscrepancyError(
                    f"{method.value} produced an explanation that fails its membership test",
                    explanation=explanation.to_text(),
                    question=question.digest(),
                )

    def __membership_test(self, question: Question, method: ExplanationMethod, multiplicity: Mapping[Instance, int] | None):
        if (method in (ExplanationMethod.IRREFUTABLE, ExplanationMethod.MIN_IRREFUTABLE)):
            return lambda explanation: is_irrefutable(question, explanation)
        if (method == ExplanationMethod.SURROGATE):
            tree: DecisionTree = self.surrogate(question.dataset, question.classifier, multiplicity)
            return lambda explanation: is_dwaxp_tree(tree, question.target, explanation)
        if (method in (ExplanationMethod.LW, ExplanationMethod.LC)):
            whole: Question = feature_space_question(question, self.__caps.feature_space)
            return lambda explanation: is_dwaxp(whole, explanation)
        return lambda explanation: is_dwaxp(question, explanation)

    def irrefutable_envelope(self, dataset: Dataset, classifier: Classifier) -> Envelope:
        self.LOGGER.info(f"Computing the irrefutable envelope of {dataset.m} instances...")
        envelope: Envelope = irr_envelope(dataset, classifier, min(self.__caps.subsets, self.__caps.pool))
        self.LOGGER.info(f"Irrefutable envelope holds {len(envelope)} explanations")
        return envelope

    def maximal_envelopes(self, dataset: Dataset, classifier: Classifier) -> list[Envelope]:
        self.LOGGER.info(f"Enumerating maximal envelopes of {dataset.m} instances...")
        envelopes: list[Envelope] = maximal_envelopes(dataset, classifier, min(self.__caps.subsets, self.__caps.pool))
        self.LOGGER.info(f"{len(envelopes)} maximal envelopes found")
        return envelopes

    def surrogate(self, dataset: Dataset, classifier: Classifier, multiplicity: Mapping[Instance, int] | None = None) -> DecisionTree:
        return self.__surrogates.tree_for(dataset, classifier, multiplicity)

    def envelope_surrogate(self, envelope: Envelope, dataset: Dataset, classifier: Classifier) -> DecisionListClassifier:
        return sigma_from_envelope(envelope, dataset, classifier)

