import logging
import os
import sys

from colorama import Fore, init

init(autoreset=True)

LOGGER_NAME = "l2interp"
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


class Logger:
    """
    Process-wide logger for l2interp. Everything goes to stderr; stdout is
    reserved for command results such as FAE values and B_0.
    """
    _instance = None
    _level_colors = {
        'DEBUG': Fore.CYAN,
        'INFO': Fore.BLUE,
        'WARNING': Fore.YELLOW,
        'ERROR': Fore.RED,
    }

    @classmethod
    def get_logger(cls) -> logging.Logger:
        if not cls._instance:
            cls._instance = cls._initialize_logger()
        return cls._instance

    @classmethod
    def _initialize_logger(cls) -> logging.Logger:
        logger = logging.getLogger(LOGGER_NAME)
        if not logger.hasHandlers():
            debug = os.getenv('DEBUG', 'FALSE').upper() == 'TRUE'
            logger.setLevel(logging.DEBUG if debug else logging.INFO)
            handler = logging.StreamHandler(sys.stderr)
            handler.setFormatter(cls._colored_formatter())
            logger.addHandler(handler)
            logger.propagate = False
        return logger

    @classmethod
    def _colored_formatter(cls) -> logging.Formatter:
        colors = cls._level_colors

        class ColoredFormatter(logging.Formatter):
            def format(self, record):
                message = super().format(record)
                color = colors.get(record.levelname)
                return color + message if color else message

        return ColoredFormatter(LOG_FORMAT)

    @classmethod
    def set_stream(cls, stream):
        """Points every handler at ``stream`` (tests swap stderr per test)."""
        for handler in cls.get_logger().handlers:
            if isinstance(handler, logging.StreamHandler):
                handler.setStream(stream)

    @staticmethod
    def log_with_color(level, message, color=None):
        logger = Logger.get_logger()
        if color:
            message = color + message
        method = {
            'INFO': logger.info,
            'WARNING': logger.warning,
            'ERROR': logger.error,
        }.get(level, logger.debug)
        method(message)
