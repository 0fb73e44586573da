import pytest

from magellium.samplex.system.common.errors import CapacityError, UniverseShapeError
from magellium.samplex.system.common.settings import Caps
from magellium.samplex.system.core.axioms import AxiomId
from magellium.samplex.system.axioms.application.business.services.certificates import (
    COMPATIBLE_SETS,
    INCOMPATIBLE_SETS,
    CertificateSearch,
    axiom_names,
    check_incompatibility,
    compatibility_sweep,
    find_satisfying_assignment,
    implication_closure,
    named_incompatibility,
)
from magellium.samplex.system.axioms.infrastructure.adapters.outputs.fixtures import YamlFixtureRepository


@pytest.fixture(scope="module")
def certifying():
    return [universe for universe in YamlFixtureRepository().load_all() if universe.certifies]


def fixture_for(certifying, name):
    return next(universe for universe in certifying if name in universe.certifies)


@pytest.mark.parametrize("name", sorted(INCOMPATIBLE_SETS))
def test_named_sets_are_incompatible_on_their_fixture(certifying, name):
    certificate = check_incompatibility(INCOMPATIBLE_SETS[name], fixture_for(certifying, name), Caps())
    assert certificate.incompatible
    assert "assignment" not in certificate.to_document()


@pytest.mark.parametrize("name", sorted(COMPATIBLE_SETS))
def test_named_sets_are_satisfiable_on_every_certifying_fixture(certifying, name):
    for fixture in certifying:
        certificate = find_satisfying_assignment(COMPATIBLE_SETS[name], fixture, Caps())
        assert certificate is not None
        document = certificate.to_document()
        assert len(document["assignment"]) == fixture.size()


def test_feasibility_and_validity_alone_allow_the_trivial_answer(certifying):
    fixture = certifying[0]
    certificate = check_incompatibility({AxiomId.FEASIBILITY, AxiomId.VALIDITY}, fixture, Caps())
    assert not certificate.incompatible
    assert all(count >= 1 for count in certificate.candidates)


def test_implication_closure():
    closed = implication_closure({AxiomId.COMPLETENESS})
    assert {AxiomId.STRONG_COMPLETENESS, AxiomId.SUCCESS} <= closed
    assert AxiomId.VALIDITY not in closed
    assert named_incompatibility({AxiomId.STRONG_IRREDUCIBILITY, AxiomId.COMPLETENESS}) == "I3"
    assert named_incompatibility({AxiomId.FEASIBILITY}) is None
    assert axiom_names({AxiomId.SUCCESS, AxiomId.FEASIBILITY}) == ["Feasibility", "Success"]


def test_search_space_is_capped(certifying):
    with pytest.raises(CapacityError):
        CertificateSearch(certifying[0], Caps(certificate=2 ** 4))


def test_strong_axioms_need_total_classifiers():
    partial = YamlFixtureRepository().load("three-rows")
    with pytest.raises(UniverseShapeError):
        check_incompatibility({AxiomId.STRONG_COMPLETENESS}, partial, Caps())


def test_sweep_finds_the_named_incompatible_sets(certifying):
    report = compatibility_sweep(certifying, Caps())
    assert report.fixtures == tuple(universe.name for universe in certifying)
    assert report.sets_checked == 2 ** 8
    minimal = dict(report.minimal_incompatible)
    for members in INCOMPATIBLE_SETS.values():
        assert any(found <= members | {AxiomId.FEASIBILITY, AxiomId.VALIDITY} for found in minimal)
    for maximal in report.maximal_compatible:
        assert not any(members <= maximal for members in INCOMPATIBLE_SETS.values())
    document = report.to_document()
    assert {entry["name"] for entry in document["maximal_compatible"]} <= set(COMPATIBLE_SETS) | {"unnamed"}
