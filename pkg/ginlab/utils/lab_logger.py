import logging
from pathlib import Path

import colorlog
from colorlog import ColoredFormatter
from tqdm import tqdm

from ginlab.errors import InputError

LEVELS = {
    'debug': logging.DEBUG,
    'info': logging.INFO,
    'warn': logging.WARNING,
    'warning': logging.WARNING,
    'error': logging.ERROR,
    'critical': logging.CRITICAL,
}
LEVEL_COLORS = {
    'DEBUG': 'cyan',
    'INFO': 'green',
    'WARNING': 'yellow',
    'ERROR': 'red',
    'CRITICAL': 'red,bg_white',
}


class TqdmHandler(colorlog.StreamHandler):
    """Stream handler that writes through tqdm so log lines do not tear progress bars."""

    def emit(self, record):
        try:
            tqdm.write(self.format(record), file=self.stream)
            self.flush()
        except Exception:
            self.handleError(record)


class Logger:
    """
    Colored logger on stderr. Stdout is reserved for result tables,
    so nothing here ever writes to it.
    """

    def __init__(self, log_level, name='ginlab'):
        formatter = ColoredFormatter(
            '%(log_color)s[%(levelname)s]%(reset)s[%(asctime)s]: '
            '%(message_log_color)s%(message)s',
            datefmt='%Y-%m-%d %H:%M:%S',
            reset=True,
            log_colors=LEVEL_COLORS,
            secondary_log_colors={'message': dict(LEVEL_COLORS, CRITICAL='red')},
            style='%'
        )
        self.logger = colorlog.getLogger(name)
        if not self.logger.handlers:
            handler = TqdmHandler()
            handler.setFormatter(formatter)
            self.logger.addHandler(handler)
        self.logger.propagate = False
        self._file_handler = None
        self.set_level(log_level)

    def debug(self, msg):
        self.logger.debug(msg)

    def info(self, msg):
        self.logger.info(msg)

    def warning(self, msg):
        """Recoverable numerical events: resampled draws, slowly converging series."""
        self.logger.warning(msg)

    def error(self, msg):
        self.logger.error(msg)

    @property
    def verbose(self):
        return self.log_level <= logging.INFO

    def set_level(self, log_level):
        """
        Args:
            log_level (str): one of `debug`, `info`, `warn`, `error`, `critical`
        """
        key = str(log_level).strip().lower()
        if key not in LEVELS:
            raise InputError(f'Unknown logging level: {log_level}')
        self.log_level = LEVELS[key]
        self.logger.setLevel(self.log_level)

    def log_to_file(self, file_name):
        """Mirror every record, without colors, into ``file_name`` (replacing an earlier file)."""
        if self._file_handler is not None:
            self.logger.removeHandler(self._file_handler)
            self._file_handler.close()
        file_name = Path(file_name)
        file_name.parent.mkdir(parents=True, exist_ok=True)
        handler = logging.FileHandler(file_name.as_posix(), mode='a')
        handler.setFormatter(logging.Formatter('[%(levelname)s][%(asctime)s]: %(message)s',
                                               datefmt='%Y-%m-%d %H:%M:%S'))
        self.logger.addHandler(handler)
        self._file_handler = handler
        return handler


logger = Logger('info')
