from __future__ import annotations

import sys

from loguru import logger
from loguru._logger import Logger as LoguruLogger

from ._env import LOG_LEVEL

__all__ = ("Logger", "set_log_level")

logger.remove(0)

DEFAULT_LOGGER_FORMAT = "<dim>[{extra[class_name]}]</dim> <level>{message}</level>"

try:
    _threshold = {"no": logger.level(LOG_LEVEL).no}
except ValueError:
    _threshold = {"no": logger.level("WARNING").no}


def set_log_level(level: str) -> None:
    """
    Change the threshold of every class-based sink.

    Args:
        level: A loguru level name such as `"DEBUG"` or `"INFO"`.
    """
    _threshold["no"] = logger.level(level.upper()).no


class Logger:
    """
    Logger class that can be inherited for class based logging.

    Records go to stderr so that command output on stdout stays clean.

    ```python
    class Engine(Logger, format="<level>{message}</level>"):
        def __init__(self):
            self.logger.info("Engine initialized")

        @classmethod
        def describe(cls):
            cls.logger.debug("Describing {}", cls.__name__)

    set_log_level("DEBUG")
    Engine()
    Engine.describe()
    ```
    """

    logger: LoguruLogger

    @classmethod
    def __init_subclass__(cls, *, format: str | None = None, **kwargs: object):  # noqa: A002
        """
        Args:
            format: Logging format to use.
        """
        super().__init_subclass__(**kwargs)
        class_name = cls.__name__
        logger.add(
            sys.stderr,
            level=0,
            format=format or DEFAULT_LOGGER_FORMAT,
            filter=lambda record: (
                record["extra"].get("class_name") == class_name and record["level"].no >= _threshold["no"]
            ),
        )
        cls.logger = logger.bind(class_name=class_name).opt(colors=True)  # type: ignore[assignment]
