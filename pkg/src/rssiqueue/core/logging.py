from __future__ import annotations

from logging import config as logging_config
from typing import Any, Literal

import msgspec
import structlog
from structlog.dev import RichTracebackFormatter, plain_traceback
from structlog.typing import Processor  # noqa: TCH002

from rssiqueue.core.config import ConfigModel

Renderer = Literal["plain", "colored", "colored_rich_traceback", "json"]

timestamper = structlog.processors.TimeStamper(fmt="iso")
pre_chain: list[Processor] = [
    # Add the log level and a timestamp to the event_dict if the log entry
    # is not from structlog.
    structlog.stdlib.add_log_level,
    structlog.stdlib.ExtraAdder(),
    timestamper,
]


def extract_from_record(_, __, event_dict: dict[str, Any]) -> dict[str, Any]:  # type: ignore # noqa: ANN001
    """Extract thread name and add it to the event dict (sweep points log from worker threads)."""
    record = event_dict["_record"]
    event_dict["thread_name"] = record.threadName
    return event_dict


def default_json_format_serializer(obj: Any, **kwargs: Any) -> str:  # noqa: ANN401
    order = kwargs.get("order", "sorted")
    return msgspec.json.encode(obj, order=order).decode()


def _renderer_processors(renderer: Renderer) -> list[Processor]:
    if renderer == "json":
        return [
            structlog.processors.dict_tracebacks,
            structlog.processors.JSONRenderer(serializer=default_json_format_serializer),
        ]
    if renderer == "colored_rich_traceback":
        return [structlog.dev.ConsoleRenderer(colors=True, exception_formatter=RichTracebackFormatter())]
    return [structlog.dev.ConsoleRenderer(colors=renderer == "colored", exception_formatter=plain_traceback)]


class LoggingConfig(ConfigModel):
    """Logging section of the run config.

    Logs are written to stderr so the files produced by the commands stay deterministic.
    """

    level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"
    renderer: Renderer = "plain"
    # level of third-party loggers
    root_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"

    def to_dict_config(self) -> dict[str, Any]:
        return {
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": {
                self.renderer: {
                    "()": structlog.stdlib.ProcessorFormatter,
                    "processors": [
                        extract_from_record,
                        structlog.contextvars.merge_contextvars,
                        structlog.stdlib.ProcessorFormatter.remove_processors_meta,
                        *_renderer_processors(self.renderer),
                    ],
                    "foreign_pre_chain": pre_chain,
                },
            },
            "handlers": {
                "console": {
                    "class": "logging.StreamHandler",
                    "level": "DEBUG",
                    "formatter": self.renderer,
                    "stream": "ext://sys.stderr",
                },
            },
            "loggers": {
                "rssiqueue": {"level": self.level, "handlers": ["console"], "propagate": False},
            },
            "root": {"handlers": ["console"], "level": self.root_level},
        }


def configure_logging(config: LoggingConfig | None = None) -> None:
    config = config or LoggingConfig()
    try:
        logging_config.dictConfig(config.to_dict_config())
        structlog.configure(
            processors=[
                structlog.contextvars.merge_contextvars,
                structlog.stdlib.add_log_level,
                structlog.stdlib.PositionalArgumentsFormatter(),
                timestamper,
                structlog.processors.StackInfoRenderer(),
                structlog.processors.format_exc_info,
                structlog.stdlib.ProcessorFormatter.wrap_for_formatter,
            ],
            wrapper_class=structlog.stdlib.BoundLogger,
            logger_factory=structlog.stdlib.LoggerFactory(),
            cache_logger_on_first_use=True,
        )
    except Exception as error:
        msg = f"Exception while configuring logging: {error}"
        raise type(error)(msg) from error


def get_logger(name: str | None = None) -> structlog.stdlib.BoundLogger:
    return structlog.stdlib.get_logger(name)


def set_log_context(**values: Any) -> None:  # noqa: ANN401
    structlog.contextvars.bind_contextvars(**values)


def clear_log_context() -> None:
    structlog.contextvars.clear_contextvars()


__all__ = ["LoggingConfig", "configure_logging", "get_logger", "set_log_context", "clear_log_context"]
