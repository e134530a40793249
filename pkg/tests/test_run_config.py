import pytest
from pydantic import ValidationError

from config.run_config import RunConfig
from config.settings import Settings
from model.configuration import Configuration
from model.kernels import TruncatedIndicator


def test_defaults():
    config = RunConfig()
    assert config.kernel == "trunc:k=2.0,r=1.0"
    assert config.birth_kernel == TruncatedIndicator(cap=2.0, radius=1.0)
    assert config.initial_configuration().points == Configuration.origin(1).points
    assert config.n_caps[-1] == 8192


def test_unknown_keys_are_rejected():
    with pytest.raises(ValidationError):
        RunConfig.model_validate({"kernal": "trunc:k=2,r=1"})


def test_kernel_spelling_is_normalized():
    assert RunConfig(kernel="trunc:k=2,r=1").kernel == "trunc:k=2.0,r=1.0"


@pytest.mark.parametrize(
    "fields",
    [
        {"kernel": "nonsense"},
        {"t_end": -1.0},
        {"dimension": 3},
        {"hitting_lambda": 1.0},
        {"window_fraction": 1.0},
        {"sectors": 1},
        {"n_caps": []},
        {"k_grid": [0.0]},
        {"alphas": [2.0]},
        {"initial": []},
        {"initial": [(0.0, 1.0)]},
        {"initial": [(0.0,), (0.0,)]},
    ],
)
def test_invalid_fields(fields):
    with pytest.raises(ValidationError):
        RunConfig(**fields)


def test_file_round_trip(tmp_path):
    config = RunConfig(kernel="free:r=0.5", dimension=2, initial=[(0.0, 0.0), (0.5, 0.0)], t_end=3.0, seed=9)
    path = config.to_file(tmp_path / "nested" / "run.json")
    again = RunConfig.from_file(path)
    assert again == config
    assert len(again.initial_configuration()) == 2


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("BIRTH_N_JOBS", "-1")
    monkeypatch.setenv("LOG_LEVEL", "debug")
    monkeypatch.setenv("BIRTH_OUTPUT_DIR", "results")
    settings = Settings(_env_file=None)
    assert settings.n_jobs == -1
    assert settings.log_level == "DEBUG"
    assert str(settings.output_dir) == "results"


@pytest.mark.parametrize("variable,value", [("BIRTH_N_JOBS", "0"), ("LOG_LEVEL", "chatty"), ("BIRTH_MAX_EVENTS", "0")])
def test_invalid_settings(monkeypatch, variable, value):
    monkeypatch.setenv(variable, value)
    with pytest.raises(ValidationError):
        Settings(_env_file=None)
