from abc import ABC, abstractmethod
from typing import Sequence


class UserInterface(ABC):

    def __init__(self):
        raise NotImplementedError()

    @abstractmethod
    def run(self, arguments: Sequence[str] | None = None) -> int:
        """Runs one command and returns its exit status."""
        raise NotImplementedError()
