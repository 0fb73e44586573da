from abc import ABC, abstractmethod

from magellium.samplex.system.axioms.application.business.services.universes import Universe


class FixtureRepository(ABC):

    @abstractmethod
    def load_all(self) -> list[Universe]:
        """Every proof fixture, in file order."""
        raise NotImplementedError()

    @abstractmethod
    def load(self, name: str) -> Universe:
        raise NotImplementedError()
