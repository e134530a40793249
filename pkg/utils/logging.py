import json
import logging
import os
import sys
from logging.handlers import TimedRotatingFileHandler

# Fields a run attaches through `extra=` so every JSON line can be traced back to its stream.
RUN_FIELDS = ("kernel", "seed", "stream_id", "t_end", "n_events")


def run_fields(kernel: str, seed: int, stream_id: int, t_end: float, n_events: int) -> dict:
    """Context for `logger.info(..., extra=run_fields(...))` at the end of a run."""
    return {"kernel": kernel, "seed": seed, "stream_id": stream_id, "t_end": t_end, "n_events": n_events}


class JsonFormatter(logging.Formatter):
    """
    One JSON object per record, with the run context when the record carries it.
    """
    def format(self, record: logging.LogRecord) -> str:
        entry = {
            "timestamp": self.formatTime(record, self.datefmt),
            "level": record.levelname,
            "name": record.name,
            "message": record.getMessage(),
            "funcName": record.funcName,
            "lineno": record.lineno,
        }
        run = {key: getattr(record, key) for key in RUN_FIELDS if hasattr(record, key)}
        if run:
            entry["run"] = run
        if record.exc_info:
            entry["exc_info"] = self.formatException(record.exc_info)
        return json.dumps(entry, ensure_ascii=False)


def setup_logging(
    level: int | str = logging.INFO,
    log_to_console: bool = True,
    log_file_path: str = "logs/birth_process.log.json",
):
    """
    Configure the root logger once, from the entry point.

    The console handler writes to stderr; stdout is reserved for event logs.
    An empty `log_file_path` turns the rotating JSON file off.
    """
    root = logging.getLogger()
    root.setLevel(level)
    root.handlers = []

    if log_to_console:
        console = logging.StreamHandler(sys.stderr)
        console.setFormatter(logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s"))
        root.addHandler(console)

    if log_file_path:
        log_dir = os.path.dirname(log_file_path)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        file_handler = TimedRotatingFileHandler(log_file_path, when="midnight", interval=1, backupCount=7)
        file_handler.setFormatter(JsonFormatter())
        root.addHandler(file_handler)
