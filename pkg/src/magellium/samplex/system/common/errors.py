from enum import Enum
from typing import Any, Mapping


class ExitCode(Enum):
    SUCCESS = 0
    FAILURE = 1
    VALIDATION = 2
    CAPACITY = 3
    DISCREPANCY = 4


class SamplexError(Exception):
    """Base of every error raised by the library.

    Each error renders itself as a machine-readable record so the command line
    can report it in the selected output format.
    """

    code: str = "samplex-error"
    exit_code: ExitCode = ExitCode.FAILURE

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.__message = message
        self.__details: dict[str, Any] = dict(details)

    @property
    def message(self) -> str:
        return self.__message

    @property
    def details(self) -> Mapping[str, Any]:
        return self.__details

    def to_record(self) -> dict[str, Any]:
        return {
            "error": type(self).__name__,
            "code": self.code,
            "message": self.__message,
            "details": {key: _plain(value) for key, value in self.__details.items()},
        }


def _plain(value: Any) -> Any:
    if (isinstance(value, (str, int, float, bool)) or value is None):
        return value
    if (isinstance(value, (list, tuple))):
        return [_plain(item) for item in value]
    return str(value)


class ValidationError(SamplexError):
    code = "validation-error"
    exit_code = ExitCode.VALIDATION


class InvalidLiteralError(ValidationError):
    code = "invalid-literal"


class TheoryMismatchError(ValidationError):
    code = "theory-mismatch"


class DatasetFormatError(ValidationError):
    code = "format-error"


class ContradictoryLabelError(ValidationError):
    code = "contradictory-label"


class MembershipError(ValidationError):
    code = "membership-error"


class CoverageError(ValidationError):
    code = "coverage-error"


class UndefinedInstanceError(ValidationError):
    code = "undefined-instance"


class ContractError(ValidationError):
    code = "contract-error"


class UniverseShapeError(ValidationError):
    code = "universe-shape"


class DataFileNotFoundError(ValidationError):
    code = "io-error"


class CapacityError(SamplexError):
    code = "capacity-exceeded"
    exit_code = ExitCode.CAPACITY

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what} of size {size} exceeds cap {cap}", what=what, size=size, cap=cap)
        self.size = size
        self.cap = cap


class DiscrepancyError(SamplexError):
    code = "discrepancy"
    exit_code = ExitCode.DISCREPANCY


def check_cap(what: str, size: int, cap: int) -> None:
    if (cap < 1):
        raise ValidationError(f"cap for {what} must be positive", cap=cap)
    if (size > cap):
        raise CapacityError(what, size, cap)
