import json
import sys
from pathlib import Path
from typing import Any, Mapping

import yaml

from magellium.samplex.system.common.logger import LoggerFactory
from magellium.samplex.system.common.settings import OutputFormat
from magellium.samplex.system.explainers.application.ports.outputs.writer import ReportWriter


class AbstractReportWriter(ReportWriter):

    LOGGER = LoggerFactory.get_logger(__name__)

    def write(self, document: Mapping[str, Any], destination: Path | None = None) -> None:
        text = self.render(document)
        if (destination is None):
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        destination = Path(destination)
        destination.parent.mkdir(parents=True, exist_ok=True)
        destination.write_text(text, encoding="utf-8")
        self.LOGGER.info(f"Report written to {destination}")


class YamlReportWriter(AbstractReportWriter):

    @property
    def output_format(self) -> OutputFormat:
        return OutputFormat.YAML

    def render(self, document: Mapping[str, Any]) -> str:
        return yaml.safe_dump(dict(document), sort_keys=False, allow_unicode=True, default_flow_style=False)


class JsonReportWriter(AbstractReportWriter):

    @property
    def output_format(self) -> OutputFormat:
        return OutputFormat.JSON

    def render(self, document: Mapping[str, Any]) -> str:
        return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def writer_for(output_format: OutputFormat) -> ReportWriter:
    if (output_format == OutputFormat.JSON):
        return JsonReportWriter()
    return YamlReportWriter()
