import pytest
from loguru import logger

from fuzzym.logger import Logger, set_log_level


class TestLoggerClass:
    def test_default_logger_initialization(self, caplog):
        """
        A subclass of Logger logs through its bound class logger.
        """

        class Engine(Logger):
            def expand(self, node):
                self.logger.info("Expanding {}", node)

        Engine().expand("S0")

        assert "Expanding S0" in caplog.text
        assert len(caplog.records) == 1

    def test_custom_logger_format(self, caplog):
        """
        A custom format can be given at class definition.
        """

        class CustomFormat(Logger, format="<level>{message}</level>"):
            def run(self):
                self.logger.info("Custom format test")

        CustomFormat().run()

        assert "Custom format test" in caplog.text
        assert len(caplog.records) == 1

    def test_class_method_logging(self, caplog):
        class ClassMethodLogger(Logger):
            @classmethod
            def describe(cls):
                cls.logger.info("Class method logging")

        ClassMethodLogger.describe()

        assert "Class method logging" in caplog.text
        assert len(caplog.records) == 1

    def test_class_name_is_bound(self):
        """
        Each record carries the name of the class that emitted it.
        """

        class FirstEngine(Logger):
            def log(self):
                self.logger.info("first")

        class SecondEngine(Logger):
            def log(self):
                self.logger.info("second")

        lines = []
        handler_id = logger.add(lines.append, format="{extra[class_name]}:{message}")
        try:
            FirstEngine().log()
            SecondEngine().log()
        finally:
            logger.remove(handler_id)

        assert [line.strip() for line in lines] == ["FirstEngine:first", "SecondEngine:second"]

    def test_markup_in_arguments_is_not_interpreted(self, caplog):
        """
        User data passed as format arguments is printed verbatim.
        """

        class Quoting(Logger):
            def log(self, word):
                self.logger.info("word {!r}", word)

        Quoting().log("<red>a</red>")

        assert "'<red>a</red>'" in caplog.text


class TestSetLogLevel:
    def test_threshold_controls_stderr_sink(self, capsys):
        class Noisy(Logger):
            def log(self):
                self.logger.info("progress")

        try:
            set_log_level("WARNING")
            Noisy().log()
            assert "progress" not in capsys.readouterr().err

            set_log_level("INFO")
            Noisy().log()
            assert "progress" in capsys.readouterr().err
        finally:
            set_log_level("WARNING")

    def test_unknown_level(self):
        with pytest.raises(ValueError):
            set_log_level("CHATTY")
