import logging
import os

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(level=None):
    level = level or os.environ.get("TENSORCERT_LOG_LEVEL", "WARNING")
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT)


class LoggingMixin:
    @property
    def logger(self):
        if not hasattr(self, '_logger'):
            # class name doubles as logger name
            self._logger = logging.getLogger(self.__class__.__name__)
        return self._logger
