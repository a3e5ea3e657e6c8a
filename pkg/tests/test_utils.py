import json
import logging

import numpy as np
import pytest

from latinbox.utils import ConfigError, ParameterError, RunLogger, check_probability, config_else_env, derive_seed, make_rng

def test_config_else_env_prefers_section(clean_env):
    clean_env.setenv("LATINBOX_TRIALS", "7")
    assert config_else_env("trials", {"trials": 3}) == 3

def test_config_else_env_falls_back_to_env(clean_env):
    clean_env.setenv("LATINBOX_TRIALS", "7")
    assert config_else_env("trials", {}) == "7"

def test_config_else_env_missing(clean_env):
    with pytest.raises(ConfigError):
        config_else_env("trials", None)
    assert config_else_env("trials", None, error=False) is None
    assert config_else_env("trials", None, default=5) == 5

def test_check_probability():
    assert check_probability(0) == 0.0
    assert check_probability("0.5") == 0.5
    for bad in (-0.1, 1.5, float("nan"), "x"):
        with pytest.raises(ParameterError):
            check_probability(bad)

def test_derive_seed_is_stable_and_distinct():
    assert derive_seed(1, 0) == derive_seed(1, 0)
    seeds = {derive_seed(1, i) for i in range(100)}
    assert len(seeds) == 100
    assert derive_seed(1, 0) != derive_seed(2, 0)

def test_make_rng():
    gen = make_rng(3)
    assert make_rng(gen) is gen
    assert make_rng(3).random() == make_rng(3).random()
    with pytest.raises(ValueError):
        make_rng(-1)
    with pytest.raises(ValueError):
        make_rng(1.5)

def test_run_logger_keeps_records(tmp_path):
    log = RunLogger(logging.getLogger("latinbox.tests.run"))
    log.debug("hidden")
    log.info("trial %d done", 3)
    log.warning("careful")

    assert log.records() == [("INFO", "trial 3 done"), ("WARNING", "careful")]
    assert log.count("WARNING") == 1

    path = tmp_path / "log.jsonl"
    log.flush(str(path))
    lines = path.read_text().splitlines()
    assert json.loads(lines[0]) == {"level": "INFO", "msg": "trial 3 done"}
    assert log.records() == []

def test_run_logger_records_through_adapters():
    base = logging.getLogger("latinbox.tests.quiet")
    base.setLevel(logging.ERROR)
    log = RunLogger(base)
    adapter = logging.LoggerAdapter(log)
    adapter.info("kept")
    adapter.debug("dropped")
    assert log.records() == [("INFO", "kept")]
