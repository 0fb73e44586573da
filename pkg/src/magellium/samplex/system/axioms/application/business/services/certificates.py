"""Exhaustive (in)compatibility certificates for sets of axioms.

An assignment maps every question of a fixture to a set of subsets of its
target. A set of axioms is incompatible on a fixture when no assignment
satisfies all of them; the search enumerates every assignment, pruning with
the axioms that can be decided question by question and then checking
Coherence, Monotonicity and Counter-Monotonicity pairwise while
backtracking.
"""
from dataclasses import dataclass, field
from itertools import combinations
from typing import AbstractSet, Any, Callable, Iterable, Mapping, Sequence

from magellium.samplex.system.common.errors import CapacityError, UniverseShapeError
from magellium.samplex.system.common.logger import LoggerFactory
from magellium.samplex.system.common.settings import Caps
from magellium.samplex.system.core.axioms import AxiomId
from magellium.samplex.system.core.theories import PartialAssignment
from magellium.samplex.system.explainers.application.business.services.abductive import subsets_of
from magellium.samplex.system.axioms.application.business.services.harness import IMPLICATIONS
from magellium.samplex.system.axioms.application.business.services.properties import (
    coherence_violation,
    counter_monotonicity_violation,
    local_violation,
    monotonicity_violation,
)
from magellium.samplex.system.axioms.application.business.services.universes import QuestionRef, Universe


LOGGER = LoggerFactory.get_logger(__name__)

F = AxiomId.FEASIBILITY
V = AxiomId.VALIDITY
S = AxiomId.SUCCESS
COH = AxiomId.COHERENCE
IRR = AxiomId.IRREDUCIBILITY
SIRR = AxiomId.STRONG_IRREDUCIBILITY
COMP = AxiomId.COMPLETENESS
SCOMP = AxiomId.STRONG_COMPLETENESS
MONO = AxiomId.MONOTONICITY
CM = AxiomId.COUNTER_MONOTONICITY

INCOMPATIBLE_SETS: Mapping[str, frozenset[AxiomId]] = {
    "I1": frozenset({F, S, COH, IRR}),
    "I2": frozenset({F, COH, COMP}),
    "I3": frozenset({SIRR, SCOMP}),
    "I4": frozenset({F, V, S, IRR, MONO}),
    "I5": frozenset({F, V, S, IRR, CM}),
}

COMPATIBLE_SETS: Mapping[str, frozenset[AxiomId]] = {
    "C1": frozenset({F, V, S, COMP, SCOMP, CM}),
    "C2": frozenset({F, V, S, IRR, SIRR}),
    "C3": frozenset({F, V, S, COH, MONO, CM, SCOMP}),
    "C4": frozenset({F, V, S, COH, MONO, CM, SIRR}),
    "C5": frozenset({F, V, COH, IRR, SIRR, MONO, CM}),
}

Candidate = frozenset[PartialAssignment]
PairCheck = Callable[[Any, AbstractSet, Any, AbstractSet], Any]


def axiom_names(axioms: Iterable[AxiomId]) -> list[str]:
    return [axiom.value for axiom in AxiomId if axiom in set(axioms)]


def implication_closure(axioms: Iterable[AxiomId]) -> frozenset[AxiomId]:
    closed = set(axioms)
    changed = True
    while changed:
        changed = False
        for premises, conclusion in IMPLICATIONS:
            if (conclusion not in closed and all(premise in closed for premise in premises)):
                closed.add(conclusion)
                changed = True
    return frozenset(closed)


def named_incompatibility(axioms: Iterable[AxiomId]) -> str | None:
    """First named incompatible set contained in the implication closure of ``axioms``."""
    closed = implication_closure(axioms)
    for name, members in INCOMPATIBLE_SETS.items():
        if (members <= closed):
            return name
    return None


@dataclass(frozen=True)
class Certificate:
    axioms: frozenset[AxiomId]
    fixture: str
    fixture_digest: str
    incompatible: bool
    raw_assignments: int
    nodes_visited: int
    candidates: tuple[int, ...]
    assignment: tuple[tuple[str, tuple[str, ...]], ...] = field(default=())

    def to_document(self) -> dict[str, Any]:
        document: dict[str, Any] = {
            "axioms": axiom_names(self.axioms),
            "fixture": self.fixture,
            "fixture_digest": self.fixture_digest,
            "incompatible": self.incompatible,
            "raw_assignments": self.raw_assignments,
            "nodes_visited": self.nodes_visited,
            "candidates_per_question": list(self.candidates),
        }
        if (not self.incompatible):
            document["assignment"] = [
                {"question": question, "explanations": list(explanations)} for question, explanations in self.assignment
            ]
        return document


class CertificateSearch:
    """Search space of one fixture: questions, their candidate sets and the pairs linking them.

    Per-question filtering results are memoised per criterion, so that one
    instance can serve many axiom sets.
    """

    LOGGER = LoggerFactory.get_logger(__name__)

    def __init__(self, fixture: Universe, caps: Caps):
        self.__fixture = fixture
        self.__caps = caps
        self.__refs: list[QuestionRef] = list(fixture.questions())
        exponent = sum(2 ** ref.question.theory.n for ref in self.__refs)
        if (exponent >= caps.certificate.bit_length()):
            raise CapacityError("certificate search space (log2)", exponent, caps.certificate.bit_length() - 1)
        self.__raw = 2 ** exponent
        self.__candidates: list[list[Candidate]] = [self.__all_candidates(ref) for ref in self.__refs]
        index = {(ref.context, ref.question.target): position for position, ref in enumerate(self.__refs)}
        self.__coherence = self.__pairs(fixture.coherence_pairs(), index)
        self.__monotonicity = self.__pairs(fixture.monotonicity_pairs(), index)
        self.__passing: dict[AxiomId, list[list[bool]]] = {}

    @property
    def fixture(self) -> Universe:
        return self.__fixture

    @property
    def raw_assignments(self) -> int:
        return self.__raw

    def __all_candidates(self, ref: QuestionRef) -> list[Candidate]:
        literals = list(subsets_of(ref.question.target, self.__caps.subsets))
        return [
            frozenset(member for bit, member in enumerate(literals) if mask >> bit & 1)
            for mask in range(2 ** len(literals))
        ]

    @staticmethod
    def __pairs(pairs: Iterable[tuple[QuestionRef, QuestionRef]], index) -> list[tuple[int, int]]:
        linked: list[tuple[int, int]] = []
        for first, second in pairs:
            left = index[(first.context, first.question.target)]
            right = index[(second.context, second.question.target)]
            if (left != right):
                linked.append((left, right))
        return linked

    def __passes(self, axiom: AxiomId) -> list[list[bool]]:
        cached = self.__passing.get(axiom)
        if (cached is not None):
            return cached
        table: list[list[bool]] = []
        for ref, candidates in zip(self.__refs, self.__candidates):
            whole = None
            if (axiom.needs_feature_space):
                if (not ref.context.feature_space):
                    raise UniverseShapeError(f"{axiom.value} needs feature-space access in '{ref.context.name}'")
                whole = ref.context.whole_question(ref.question, self.__caps.feature_space)
            table.append([
                local_violation(axiom, ref.question, candidate, whole, self.__caps.subsets) is None
                for candidate in candidates
            ])
        self.__passing[axiom] = table
        return table

    def search(self, axioms: Iterable[AxiomId]) -> Certificate:
        chosen = frozenset(axioms)
        local = [axiom for axiom in AxiomId if axiom in chosen and axiom.is_local]
        tables = [self.__passes(axiom) for axiom in local]
        allowed: list[list[Candidate]] = [
            [candidate for position, candidate in enumerate(candidates) if all(table[index][position] for table in tables)]
            for index, candidates in enumerate(self.__candidates)
        ]
        constraints: dict[int, list[tuple[int, bool, PairCheck]]] = {index: [] for index in range(len(self.__refs))}

        def link(pairs: list[tuple[int, int]], check: PairCheck) -> None:
            for left, right in pairs:
                # checked once both ends are assigned, i.e. at the later index
                later, earlier = max(left, right), min(left, right)
                constraints[later].append((earlier, earlier == left, check))

        if (COH in chosen):
            link(self.__coherence, coherence_violation)
        if (MONO in chosen):
            link(self.__monotonicity, monotonicity_violation)
        if (CM in chosen):
            link(self.__monotonicity, counter_monotonicity_violation)

        assignment: list[Candidate | None] = [None] * len(self.__refs)
        visited = 0

        def consistent(index: int) -> bool:
            for other, other_is_left, check in constraints[index]:
                if (other_is_left):
                    violation = check(self.__refs[other].question, assignment[other], self.__refs[index].question, assignment[index])
                else:
                    violation = check(self.__refs[index].question, assignment[index], self.__refs[other].question, assignment[other])
                if (violation is not None):
                    return False
            return True

        def extend(index: int) -> bool:
            nonlocal visited
            if (index == len(self.__refs)):
                return True
            for candidate in allowed[index]:
                visited += 1
                assignment[index] = candidate
                if (consistent(index) and extend(index + 1)):
                    return True
            assignment[index] = None
            return False

        found = extend(0)
        witness: tuple[tuple[str, tuple[str, ...]], ...] = ()
        if (found):
            witness = tuple(
                (
                    f"{ref.context.name}: {ref.question.target.to_text()}",
                    tuple(member.to_text() for member in sorted(assignment[index], key=lambda member: member.sort_key)),
                )
                for index, ref in enumerate(self.__refs)
            )
        return Certificate(
            axioms=chosen,
            fixture=self.__fixture.name,
            fixture_digest=self.__fixture.digest(),
            incompatible=not found,
            raw_assignments=self.__raw,
            nodes_visited=visited,
            candidates=tuple(len(candidates) for candidates in allowed),
            assignment=witness,
        )


def check_incompatibility(axioms: Iterable[AxiomId], fixture: Universe, caps: Caps) -> Certificate:
    certificate = CertificateSearch(fixture, caps).search(axioms)
    LOGGER.info(
        f"{{{', '.join(axiom_names(certificate.axioms))}}} on {fixture.name}: "
        f"{'incompatible' if certificate.incompatible else 'satisfiable'} "
        f"({certificate.nodes_visited} nodes out of {certificate.raw_assignments} assignments)"
    )
    return certificate


def find_satisfying_assignment(axioms: Iterable[AxiomId], fixture: Universe, caps: Caps) -> Certificate | None:
    certificate = check_incompatibility(axioms, fixture, caps)
    return None if certificate.incompatible else certificate


@dataclass(frozen=True)
class SweepReport:
    fixtures: tuple[str, ...]
    sets_checked: int
    maximal_compatible: tuple[frozenset[AxiomId], ...]
    minimal_incompatible: tuple[tuple[frozenset[AxiomId], str], ...]

    def compatible_names(self) -> list[str]:
        """Named compatible sets found among the maximal ones."""
        return [name for name, members in COMPATIBLE_SETS.items() if members in self.maximal_compatible]

    def to_document(self) -> dict[str, Any]:
        named = {members: name for name, members in COMPATIBLE_SETS.items()}
        return {
            "fixtures": list(self.fixtures),
            "sets_checked": self.sets_checked,
            "maximal_compatible": [
                {"axioms": axiom_names(members), "name": named.get(members, "unnamed")}
                for members in self.maximal_compatible
            ],
            "minimal_incompatible": [
                {"axioms": axiom_names(members), "contains": name} for members, name in self.minimal_incompatible
            ],
        }


def compatibility_sweep(fixtures: Sequence[Universe], caps: Caps) -> SweepReport:
    """Decides every axiom set containing Feasibility and Validity on all the given fixtures."""
    base = frozenset({F, V})
    others = [axiom for axiom in AxiomId if axiom not in base]
    searches = [CertificateSearch(fixture, caps) for fixture in fixtures]
    compatible: dict[frozenset[AxiomId], bool] = {}
    for size in range(len(others) + 1):
        for extra in combinations(others, size):
            axioms = base | frozenset(extra)
            # a superset of an incompatible set is incompatible
            if (any(not compatible[axioms - {axiom}] for axiom in extra)):
                compatible[axioms] = False
                continue
            compatible[axioms] = all(not search.search(axioms).incompatible for search in searches)
    maximal = [
        axioms for axioms, ok in compatible.items()
        if ok and all(not compatible[axioms | {axiom}] for axiom in others if axiom not in axioms)
    ]
    minimal = [
        (axioms, named_incompatibility(axioms) or "unnamed") for axioms, ok in compatible.items()
        if not ok and all(compatible[axioms - {axiom}] for axiom in axioms - base)
    ]
    LOGGER.info(f"{len(compatible)} axiom sets checked: {len(maximal)} maximal compatible, {len(minimal)} minimal incompatible")
    return SweepReport(
        fixtures=tuple(fixture.name for fixture in fixtures),
        sets_checked=len(compatible),
        maximal_compatible=tuple(maximal),
        minimal_incompatible=tuple(minimal),
    )
