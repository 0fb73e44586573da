from dataclasses import dataclass, replace
from enum import Enum
from os import environ
from pathlib import Path
from typing import Mapping

from magellium.samplex.system.common.errors import ValidationError


DEFAULT_CAP: int = 2 ** 20


class EnvironmentVariablesNames(Enum):
    SAMPLEX_SUBSET_CAP = "SAMPLEX_SUBSET_CAP"
    SAMPLEX_FEATURE_SPACE_CAP = "SAMPLEX_FEATURE_SPACE_CAP"
    SAMPLEX_POOL_CAP = "SAMPLEX_POOL_CAP"
    SAMPLEX_CERTIFICATE_CAP = "SAMPLEX_CERTIFICATE_CAP"

    SAMPLEX_LOG_FILE = "SAMPLEX_LOG_FILE"
    SAMPLEX_LOG_LEVEL = "SAMPLEX_LOG_LEVEL"

    SAMPLEX_OUTPUT_FORMAT = "SAMPLEX_OUTPUT_FORMAT"
    SAMPLEX_MAX_WORKERS = "SAMPLEX_MAX_WORKERS"


class OutputFormat(Enum):
    YAML = "yaml"
    JSON = "json"

    @staticmethod
    def of(value: str) -> "OutputFormat | None":
        output_format: OutputFormat | None = None
        for member in OutputFormat:
            if member.value.lower() == value.lower():
                output_format = member
                break
        return output_format


@dataclass(frozen=True)
class Caps:
    subsets: int = DEFAULT_CAP
    feature_space: int = DEFAULT_CAP
    pool: int = DEFAULT_CAP
    certificate: int = 2 ** 40

    def __post_init__(self):
        for name in ("subsets", "feature_space", "pool", "certificate"):
            if (getattr(self, name) < 1):
                raise ValidationError(f"cap '{name}' must be a positive integer", cap=getattr(self, name))

    def with_uniform_cap(self, cap: int) -> "Caps":
        return replace(self, subsets=cap, feature_space=cap)


@dataclass(frozen=True)
class Settings:
    caps: Caps
    log_file: Path
    log_level: str
    output_format: OutputFormat
    max_workers: int

    @staticmethod
    def from_environment(environment: Mapping[str, str] | None = None) -> "Settings":
        values: Mapping[str, str] = environ if environment is None else environment

        caps = Caps(
            subsets=_positive_int(values, EnvironmentVariablesNames.SAMPLEX_SUBSET_CAP, Caps.subsets),
            feature_space=_positive_int(values, EnvironmentVariablesNames.SAMPLEX_FEATURE_SPACE_CAP, Caps.feature_space),
            pool=_positive_int(values, EnvironmentVariablesNames.SAMPLEX_POOL_CAP, Caps.pool),
            certificate=_positive_int(values, EnvironmentVariablesNames.SAMPLEX_CERTIFICATE_CAP, Caps.certificate),
        )

        format_value: str = values.get(EnvironmentVariablesNames.SAMPLEX_OUTPUT_FORMAT.value, OutputFormat.YAML.value)
        output_format: OutputFormat | None = OutputFormat.of(format_value)
        if (output_format is None):
            raise ValidationError("SAMPLEX_OUTPUT_FORMAT environment variable must be 'yaml' or 'json'", value=format_value)

        return Settings(
            caps=caps,
            log_file=Path(values.get(EnvironmentVariablesNames.SAMPLEX_LOG_FILE.value, "logs/samplex.log")),
            log_level=values.get(EnvironmentVariablesNames.SAMPLEX_LOG_LEVEL.value, "INFO").upper(),
            output_format=output_format,
            max_workers=_positive_int(values, EnvironmentVariablesNames.SAMPLEX_MAX_WORKERS, 1),
        )


def _positive_int(values: Mapping[str, str], name: EnvironmentVariablesNames, default: int) -> int:
    raw: str | None = values.get(name.value)
    if (raw is None):
        return default
    try:
        parsed = int(raw)
    except ValueError:
        raise ValidationError(f"{name.value} environment variable must be an integer", value=raw)
    if (parsed < 1):
        raise ValidationError(f"{name.value} environment variable must be a positive integer", value=raw)
    return parsed
