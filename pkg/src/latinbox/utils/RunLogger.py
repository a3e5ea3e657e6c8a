import json
import logging
import threading
from logging import Logger

class RunLogger:
    """Drop in replacement for a logging.Logger that also keeps the messages of a run,
    so they can be written next to the results. Only messages at or above
    record_level are kept."""
    def __init__(self, logger: Logger, record_level: int = logging.INFO):
        self.logger: Logger = logger
        self.record_level = record_level

        self._backlog = []
        self._backlog_lock = threading.Lock()

    def __getattr__(self, attr):
        # can't inherit from logging.Logger since its an externally managed singleton
        return getattr(self.logger, attr)

    def isEnabledFor(self, level) -> bool:
        # adapters ask this before logging, recorded levels must get through
        return level >= self.record_level or self.logger.isEnabledFor(level)

    def log(self, level, msg, *args, **kwargs):
        self.logger.log(level, msg, *args, **kwargs)
        if level < self.record_level:
            return

        if args:
            msg = msg % args

        with self._backlog_lock:
            self._backlog.append((logging.getLevelName(level), str(msg)))

    def debug(self, msg, *args, **kwargs):
        self.log(logging.DEBUG, msg, *args, **kwargs)

    def info(self, msg, *args, **kwargs):
        self.log(logging.INFO, msg, *args, **kwargs)

    def warning(self, msg, *args, **kwargs):
        self.log(logging.WARNING, msg, *args, **kwargs)

    def error(self, msg, *args, **kwargs):
        self.log(logging.ERROR, msg, *args, **kwargs)

    def critical(self, msg, *args, **kwargs):
        self.log(logging.CRITICAL, msg, *args, **kwargs)

    def records(self) -> list[tuple[str, str]]:
        with self._backlog_lock:
            return list(self._backlog)

    def count(self, level: str) -> int:
        with self._backlog_lock:
            return sum(1 for name, _ in self._backlog if name == level)

    def flush(self, path: str):
        """Writes the backlog as json lines and clears it."""
        with self._backlog_lock:
            logs = self._backlog
            self._backlog = []

        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for level, msg in logs:
                f.write(json.dumps({"level": level, "msg": msg}, sort_keys=True) + "\n")
