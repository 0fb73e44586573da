import argparse
import sys
from os import environ
from pathlib import Path
from typing import Mapping, Sequence

from magellium.samplex.system.common.errors import ExitCode, SamplexError, ValidationError
from magellium.samplex.system.common.logger import LoggerFactory
from magellium.samplex.system.common.settings import OutputFormat, Settings
from magellium.samplex.system.core.decision_trees import SplitCriterion
from magellium.samplex.system.core.methods import ExplanationMethod
from magellium.samplex.system.explainers.application.business.run_configs import Command, RunConfig
from magellium.samplex.system.explainers.application.ports.inputs.user_interface import UserInterface
from magellium.samplex.system.explainers.application.ports.outputs.writer import ReportWriter
from magellium.samplex.system.explainers.application.process_manager import ExplainerProcessManager
from magellium.samplex.system.explainers.infrastructure.adapters.outputs.repository import CsvDatasetRepository
from magellium.samplex.system.explainers.infrastructure.adapters.outputs.writer import writer_for
from magellium.samplex.system.axioms.infrastructure.adapters.outputs.fixtures import YamlFixtureRepository


COMMAND_HELP: dict[Command, str] = {
    Command.EXPLAIN: "explain one dataset instance",
    Command.ENVELOPE: "irrefutable envelope of a dataset, or all maximal envelopes",
    Command.AXIOMS: "axiom matrix, incompatibility certificates and compatibility sweep",
    Command.SURROGATE: "fit an ID3 surrogate tree and explain every instance with it",
    Command.DEMO_ZOO: "zoo walkthrough checklist",
    Command.ORACLE_COMPARE: "compare greedy and polynomial operations with brute force",
}


def _csv(text: str) -> tuple[str, ...]:
    return tuple(token.strip() for token in text.split(",") if token.strip())


def _rows(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(token) for token in _csv(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not a comma-separated list of row indices")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not an integer")
    if (value < 1):
        raise argparse.ArgumentTypeError(f"'{text}' must be a positive integer")
    return value


class CommandLineUserInterface(UserInterface):

    LOGGER = LoggerFactory.get_logger(__name__)

    def __init__(self, environment: Mapping[str, str] | None = None):
        self.__environment: Mapping[str, str] = environ if environment is None else environment

    @staticmethod
    def parser() -> argparse.ArgumentParser:
        shared = argparse.ArgumentParser(add_help=False)
        shared.add_argument("--data", type=Path, help="comma-separated dataset, header row first, class in the last column")
        shared.add_argument("--domains", type=Path, help="domain file: one 'feature: v1,v2' line per feature, optional 'classes:' line")
        shared.add_argument("--classifier", type=Path, help="labelled table defining the classifier beyond the dataset rows")
        shared.add_argument("--rows", type=_rows, help="keep only these raw rows of the dataset, e.g. 0,1")
        shared.add_argument(
            "--explainer",
            default=ExplanationMethod.DWAXP.value,
            choices=[method.value for method in ExplanationMethod],
            help="explanation method (default: %(default)s)",
        )
        shared.add_argument("--target", help="row=N, name=ID or feature=value[,feature=value]")
        shared.add_argument("--cap", type=_positive, help="cap on subset and feature-space enumeration")
        shared.add_argument("--order", type=_csv, help="deletion order: features deleted last, by name or index, or 'reverse'")
        shared.add_argument("--out", type=Path, help="write the document to this file instead of standard output")
        shared.add_argument("--format", choices=[output_format.value for output_format in OutputFormat], help="yaml or json")
        shared.add_argument("--criterion", default=SplitCriterion.GAIN_RATIO.value,
                            choices=[criterion.value for criterion in SplitCriterion], help="ID3 split criterion")
        shared.add_argument("--id-column", default="name", help="column kept as row name rather than feature")
        shared.add_argument("--workers", type=_positive, help="worker threads for universe sweeps")
        shared.add_argument("--all-maximal", action="store_true", help="envelope: list every maximal envelope")

        parser = argparse.ArgumentParser(prog="samplex", description="Sample-based abductive explanations.")
        commands = parser.add_subparsers(dest="command", required=True, metavar="command")
        for command in Command:
            commands.add_parser(command.value, parents=[shared], help=COMMAND_HELP[command])
        return parser

    def __config(self, arguments: argparse.Namespace, settings: Settings) -> RunConfig:
        command: Command | None = Command.of(arguments.command)
        if (command is None):
            raise ValidationError(f"unknown command '{arguments.command}'")
        caps = settings.caps if arguments.cap is None else settings.caps.with_uniform_cap(arguments.cap)
        output_format = settings.output_format if arguments.format is None else OutputFormat.of(arguments.format)
        return RunConfig(
            command=command,
            caps=caps,
            output_format=output_format,
            data=arguments.data,
            domains=arguments.domains,
            classifier=arguments.classifier,
            rows=arguments.rows,
            method=ExplanationMethod.of(arguments.explainer),
            target=arguments.target,
            order=arguments.order,
            out=arguments.out,
            all_maximal=arguments.all_maximal,
            criterion=SplitCriterion.of(arguments.criterion),
            id_column=arguments.id_column or None,
            max_workers=settings.max_workers if arguments.workers is None else arguments.workers,
        )

    def run(self, arguments: Sequence[str] | None = None) -> int:
        writer: ReportWriter = writer_for(OutputFormat.YAML)
        try:
            parsed = self.parser().parse_args(arguments)
        except SystemExit as stop:
            return ExitCode.SUCCESS.value if stop.code in (0, None) else ExitCode.VALIDATION.value
        try:
            settings = Settings.from_environment(self.__environment)
            config = self.__config(parsed, settings)
            writer = writer_for(config.output_format)
            manager = ExplainerProcessManager(
                config=config,
                repository=CsvDatasetRepository(config.id_column),
                fixtures=YamlFixtureRepository(cap=config.caps.feature_space),
                writer=writer,
            )
            return manager.run().exit_code.value
        except SamplexError as error:
            self.LOGGER.error(f"{type(error).__name__}: {error.message}")
            sys.stderr.write(writer.render(error.to_record()))
            sys.stderr.flush()
            return error.exit_code.value
