from magellium.samplex.system.common.logger import LoggerFactory
from magellium.samplex.system.explainers.application.business.run_configs import Command, RunConfig
from magellium.samplex.system.explainers.application.business.services.explanation import (
    ExplanationService,
    ExplanationServiceImpl,
)
from magellium.samplex.system.explainers.application.business.use_cases import (
    AxiomsUseCase,
    CommandReport,
    DemoZooUseCase,
    EnvelopeUseCase,
    ExplainUseCase,
    OracleCompareUseCase,
    SurrogateUseCase,
    UseCase,
)
from magellium.samplex.system.explainers.application.ports.outputs.repository import DatasetRepository
from magellium.samplex.system.explainers.application.ports.outputs.writer import ReportWriter
from magellium.samplex.system.axioms.application.business.services.harness import AxiomHarness
from magellium.samplex.system.axioms.application.business.services.registry import ExplainerRegistry
from magellium.samplex.system.axioms.application.ports.outputs.fixtures import FixtureRepository


class ExplainerProcessManager:

    LOGGER = LoggerFactory.get_logger(__name__)

    def __init__(
        self,
        config: RunConfig,
        repository: DatasetRepository,
        fixtures: FixtureRepository,
        writer: ReportWriter,
    ):
        self.__config: RunConfig = config
        self.__writer: ReportWriter = writer

        service: ExplanationService = ExplanationServiceImpl(config.caps, config.criterion)
        harness: AxiomHarness = AxiomHarness(ExplainerRegistry(config.caps, config.criterion), config.max_workers)

        self.__use_cases: dict[Command, UseCase] = {
            Command.EXPLAIN: ExplainUseCase(service, repository, config),
            Command.ENVELOPE: EnvelopeUseCase(service, repository, config),
            Command.SURROGATE: SurrogateUseCase(service, repository, config),
            Command.AXIOMS: AxiomsUseCase(service, repository, config, harness, fixtures),
            Command.DEMO_ZOO: DemoZooUseCase(service, repository, config),
            Command.ORACLE_COMPARE: OracleCompareUseCase(service, repository, config),
        }

    def run(self) -> CommandReport:
        command = self.__config.command
        self.LOGGER.info(f"Running '{command.value}'...")
        report: CommandReport = self.__use_cases[command].execute()
        self.__writer.write(report.document, self.__config.out)
        self.LOGGER.info(f"'{command.value}' finished with exit code {report.exit_code.value}")
        return report
