from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Mapping

from magellium.samplex.system.common.settings import OutputFormat


class ReportWriter(ABC):

    @property
    @abstractmethod
    def output_format(self) -> OutputFormat:
        raise NotImplementedError()

    @abstractmethod
    def render(self, document: Mapping[str, Any]) -> str:
        raise NotImplementedError()

    @abstractmethod
    def write(self, document: Mapping[str, Any], destination: Path | None = None) -> None:
        """Writes to ``destination``, or to standard output when it is None."""
        raise NotImplementedError()
