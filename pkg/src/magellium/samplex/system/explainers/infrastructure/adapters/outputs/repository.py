from importlib.resources import files
from pathlib import Path

import pandas as pd

from magellium.samplex.system.common.errors import DataFileNotFoundError, DatasetFormatError
from magellium.samplex.system.common.logger import LoggerFactory
from magellium.samplex.system.core.tables import DomainDeclaration, LabelledTable, build_table, parse_domain_lines
from magellium.samplex.system.explainers.application.ports.outputs.repository import DatasetRepository


FIXTURES_PACKAGE = "magellium.samplex"
FIXTURES_DIRECTORY = "fixtures"


class CsvDatasetRepository(DatasetRepository):
    """Comma-separated tables: header row, last column is the class, every value read as text."""

    LOGGER = LoggerFactory.get_logger(__name__)

    def __init__(self, id_column: str | None = "name"):
        self.__id_column = id_column

    @property
    def id_column(self) -> str | None:
        return self.__id_column

    def load(self, data_path: Path, domains_path: Path | None = None) -> LabelledTable:
        data_path = Path(data_path)
        if (not data_path.is_file()):
            raise DataFileNotFoundError(f"dataset file '{data_path}' not found", path=str(data_path))
        declaration: DomainDeclaration | None = None
        if (domains_path is not None):
            domains_path = Path(domains_path)
            if (not domains_path.is_file()):
                raise DataFileNotFoundError(f"domain file '{domains_path}' not found", path=str(domains_path))
            declaration = parse_domain_lines(domains_path.read_text(encoding="utf-8").splitlines())
        return self.__build(data_path, declaration, str(data_path))

    def load_bundled(self, file_name: str, domains_file_name: str | None = None) -> LabelledTable:
        resource = files(FIXTURES_PACKAGE).joinpath(FIXTURES_DIRECTORY, file_name)
        if (not resource.is_file()):
            raise DataFileNotFoundError(f"bundled dataset '{file_name}' not found", path=file_name)
        declaration: DomainDeclaration | None = None
        if (domains_file_name is not None):
            domains = files(FIXTURES_PACKAGE).joinpath(FIXTURES_DIRECTORY, domains_file_name)
            if (not domains.is_file()):
                raise DataFileNotFoundError(f"bundled domain file '{domains_file_name}' not found", path=domains_file_name)
            declaration = parse_domain_lines(domains.read_text(encoding="utf-8").splitlines())
        with resource.open("r", encoding="utf-8") as stream:
            return self.__build(stream, declaration, f"fixtures/{file_name}")

    def __build(self, source, declaration: DomainDeclaration | None, label: str) -> LabelledTable:
        self.LOGGER.debug(f"Reading labelled table from {label}")
        try:
            frame: pd.DataFrame = pd.read_csv(
                source,
                dtype=str,
                keep_default_na=False,
                skipinitialspace=True,
            )
        except pd.errors.EmptyDataError:
            raise DatasetFormatError("dataset file is empty", source=label)
        except pd.errors.ParserError as exception:
            raise DatasetFormatError(f"dataset file is not valid comma-separated text: {exception}", source=label)
        header = [str(column) for column in frame.columns]
        records = frame.to_numpy(dtype=str).tolist()
        table = build_table(header, records, declaration, self.__id_column, label)
        if (self.__id_column is not None and any(name is not None for name in table.names)):
            self.LOGGER.warning(
                f"Column '{self.__id_column}' of {label} is read as row names, not as a feature; declare its domain to keep it as a feature"
            )
        if (table.duplicates_dropped > 0):
            self.LOGGER.info(f"{table.duplicates_dropped} duplicate rows dropped from {label}")
        if (table.padded_features):
            self.LOGGER.warning(
                f"Features observed with a single value were padded with a sentinel value: {', '.join(table.padded_features)}"
            )
        if (table.padded_classes):
            self.LOGGER.warning(f"Only one class observed in {label}; a sentinel class was added")
        self.LOGGER.info(f"Loaded {table.rows_read} rows ({table.dataset.m} instances, {table.theory.n} features) from {label}")
        return table


def load_dataset(data_path: Path, domains_path: Path | None = None, id_column: str | None = "name") -> LabelledTable:
    return CsvDatasetRepository(id_column).load(data_path, domains_path)
