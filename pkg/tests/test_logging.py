import json
import logging

from utils.logging import JsonFormatter, run_fields, setup_logging


def test_json_line_carries_run_context():
    record = logging.makeLogRecord({
        "name": "engine.simulation",
        "levelname": "INFO",
        "levelno": logging.INFO,
        "msg": "Simulated %d births",
        "args": (12,),
        **run_fields("trunc:k=2.0,r=1.0", 7, 0, 50.0, 12),
    })
    entry = json.loads(JsonFormatter().format(record))
    assert entry["message"] == "Simulated 12 births"
    assert entry["run"] == {"kernel": "trunc:k=2.0,r=1.0", "seed": 7, "stream_id": 0, "t_end": 50.0, "n_events": 12}


def test_plain_record_has_no_run_block():
    record = logging.makeLogRecord({"name": "x", "levelname": "WARNING", "msg": "plain"})
    entry = json.loads(JsonFormatter().format(record))
    assert "run" not in entry
    assert entry["level"] == "WARNING"


def test_setup_logging_writes_json_file(tmp_path):
    root = logging.getLogger()
    saved_handlers, saved_level = root.handlers[:], root.level
    path = tmp_path / "logs" / "run.log.json"
    try:
        setup_logging(level="DEBUG", log_to_console=False, log_file_path=str(path))
        logging.getLogger("engine.simulation").info("done", extra=run_fields("zero:r=1.0", 1, 2, 3.0, 0))
        for handler in root.handlers:
            handler.flush()
        entry = json.loads(path.read_text().strip().splitlines()[-1])
        assert entry["run"]["stream_id"] == 2
    finally:
        for handler in root.handlers:
            handler.close()
        root.handlers = saved_handlers
        root.setLevel(saved_level)


def test_empty_path_disables_file_handler():
    root = logging.getLogger()
    saved_handlers, saved_level = root.handlers[:], root.level
    try:
        setup_logging(log_to_console=True, log_file_path="")
        assert len(root.handlers) == 1
        assert isinstance(root.handlers[0], logging.StreamHandler)
    finally:
        root.handlers = saved_handlers
        root.setLevel(saved_level)
