from dataclasses import dataclass


@dataclass
class ScanCounter:
    """Operation counts of the membership tests.

    ``covers_checks`` counts dataset instances examined by ``is_dwaxp``;
    ``candidate_tests`` counts canonical candidates tested by ``is_irrefutable``.
    """
    covers_checks: int = 0
    candidate_tests: int = 0

    def reset(self) -> None:
        self.covers_checks = 0
        self.candidate_tests = 0
