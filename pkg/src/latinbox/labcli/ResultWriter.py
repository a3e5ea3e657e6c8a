from __future__ import annotations
import csv
import json
from logging import Logger, LoggerAdapter
import math
import os

import typing
if typing.TYPE_CHECKING:
    from latinbox.labcli.TrialRecord import TrialRecord
    from latinbox.utils import RunLogger

class ResultWriterLogger(LoggerAdapter):
    def __init__(self, logger, extra=None):
        super().__init__(logger, extra)

    def process(self, msg, kwargs):
        return f"[ResultWriter] {msg}", kwargs

def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "nan" if math.isnan(value) else repr(value)
    if value is None:
        return ""
    return str(value)

class ResultWriter:
    """Single owner of every file in an experiment's output directory."""
    def __init__(self, out_dir: str, logger: Logger):
        self.out_dir = out_dir
        self.logger = ResultWriterLogger(logger)
        os.makedirs(out_dir, exist_ok=True)

    def path(self, name: str) -> str:
        return os.path.join(self.out_dir, name)

    def writeCsv(self, name: str, columns: tuple[str, ...] | list[str], rows: list[dict]) -> str:
        """RFC 4180 csv with CRLF line endings and a header row."""
        path = self.path(name)
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=list(columns), lineterminator="\r\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({column: format_value(row.get(column)) for column in columns})

        self.logger.info(f"wrote {len(rows)} rows to {path}")
        return path

    def writeJsonl(self, name: str, records: list[TrialRecord], record_timings: bool = False) -> str:
        path = self.path(name)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for record in records:
                f.write(record.toLine(record_timings) + "\n")

        self.logger.info(f"wrote {len(records)} trial records to {path}")
        return path

    def writeJson(self, name: str, data: dict) -> str:
        path = self.path(name)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            json.dump(data, f, indent=2, sort_keys=True)
            f.write("\n")
        return path

    def writeLog(self, run_logger: RunLogger, name: str = "log.jsonl") -> str:
        path = self.path(name)
        run_logger.flush(path)
        return path
