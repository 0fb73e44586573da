import logging
from logging.handlers import RotatingFileHandler
import sys
from os import environ
from pathlib import Path
from typing import Dict


class FlushRotatingFileHandler(RotatingFileHandler):
    """RotatingFileHandler that flushes after every record so the log is written as it goes."""
    def emit(self, record):
        super().emit(record)
        self.flush()


class LoggerFactory:
    _instances: Dict[str, logging.Logger] = {}

    LOG_FILE_VARIABLE = "SAMPLEX_LOG_FILE"
    LOG_LEVEL_VARIABLE = "SAMPLEX_LOG_LEVEL"

    @classmethod
    def get_logger(
        cls,
        name: str,
        log_file: Path | None = None,
        level: int = logging.DEBUG
    ) -> logging.Logger:

        if name in cls._instances:
            return cls._instances[name]

        if (log_file is None):
            log_file = Path(environ.get(cls.LOG_FILE_VARIABLE, "logs/samplex.log"))

        logger = logging.getLogger(name)
        logger.setLevel(level)
        logger.propagate = False

        if not logger.handlers:

            # stdout carries the documents, so the console handler goes to stderr
            stream_handler = logging.StreamHandler(sys.stderr)
            stream_handler.setLevel(cls.console_level())
            stream_format = logging.Formatter(
                "[%(asctime)s] [%(levelname)s] %(name)s: %(message)s",
                datefmt="%Y-%m-%d %H:%M:%S"
            )
            stream_handler.setFormatter(stream_format)

            Path(log_file).parent.mkdir(parents=True, exist_ok=True)
            file_handler = FlushRotatingFileHandler(
                log_file,
                maxBytes=100 * 1_024 * 1_024,
                backupCount=10,
                encoding="utf-8"
            )
            file_handler.setLevel(logging.DEBUG)
            file_format = logging.Formatter(
                "%(asctime)s [%(levelname)s] %(name)s (%(filename)s:%(lineno)d): %(message)s",
                datefmt="%Y-%m-%d %H:%M:%S"
            )
            file_handler.setFormatter(file_format)

            logger.addHandler(stream_handler)
            logger.addHandler(file_handler)

        cls._instances[name] = logger
        return logger

    @classmethod
    def console_level(cls) -> int:
        level_name: str = environ.get(cls.LOG_LEVEL_VARIABLE, "INFO").upper()
        level: int | str = logging.getLevelName(level_name)
        if (not isinstance(level, int)):
            return logging.INFO
        return level

    @classmethod
    def set_console_level(cls, level: int) -> None:
        for logger in cls._instances.values():
            for handler in logger.handlers:
                if (isinstance(handler, logging.StreamHandler) and not isinstance(handler, RotatingFileHandler)):
                    handler.setLevel(level)
