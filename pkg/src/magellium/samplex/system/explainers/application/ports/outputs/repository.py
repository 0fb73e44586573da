from abc import ABC, abstractmethod
from pathlib import Path

from magellium.samplex.system.core.tables import LabelledTable


class DatasetRepository(ABC):

    @abstractmethod
    def load(self, data_path: Path, domains_path: Path | None = None) -> LabelledTable:
        raise NotImplementedError()

    @abstractmethod
    def load_bundled(self, file_name: str, domains_file_name: str | None = None) -> LabelledTable:
        """Loads one of the data files shipped with the package."""
        raise NotImplementedError()
