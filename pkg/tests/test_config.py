import logging
import math
import sys

import numpy as np
import pytest

from src.config import DEFAULT_KERNEL_SAMPLE_BUDGET, DEFAULT_ORACLE_MAX_SUPPORT, get_settings
from src.exceptions import ParameterRangeError
from src.logger_config import setup_logger
from src.utils import chunk_bounds, format_float, map_chunks, pairs, parse_csv_list, parse_norm_index, round_significant


def test_settings_defaults():
    settings = get_settings()
    assert settings.seed is None
    assert settings.threads == 1
    assert settings.oracle_max_support == DEFAULT_ORACLE_MAX_SUPPORT
    assert settings.kernel_sample_budget == DEFAULT_KERNEL_SAMPLE_BUDGET


def test_explicit_arguments_win_except_for_the_seed(monkeypatch):
    monkeypatch.setenv("PAIRWISE_OT_THREADS", "4")
    monkeypatch.setenv("PAIRWISE_OT_SEED", "0x10")
    settings = get_settings(seed=3, threads=2)
    assert settings.threads == 2
    assert settings.seed == 16
    assert get_settings().threads == 4


@pytest.mark.parametrize(
    "name, value, field",
    [
        ("PAIRWISE_OT_SEED", "abc", "PAIRWISE_OT_SEED"),
        ("PAIRWISE_OT_THREADS", "0", "threads"),
        ("PAIRWISE_OT_ORACLE_MAX_SUPPORT", "-5", "oracle_max_support"),
    ],
)
def test_malformed_environment_is_rejected(monkeypatch, name, value, field):
    monkeypatch.setenv(name, value)
    with pytest.raises(ParameterRangeError) as info:
        get_settings()
    assert info.value.field == field


def test_float_formatting():
    assert format_float(1.0 / 3.0) == "0.333333333333"
    assert format_float(math.inf) == "inf"
    assert format_float(-math.inf) == "-inf"
    assert format_float(math.nan) == "nan"
    assert round_significant(2.0000000000001) == 2.0


@pytest.mark.parametrize("raw, expected", [("2", 2.0), ("inf", math.inf), (" Infinity ", math.inf), (1, 1.0), ("1.5", 1.5)])
def test_parse_norm_index(raw, expected):
    assert parse_norm_index(raw) == expected


def test_parse_norm_index_rejects_values_below_one():
    with pytest.raises(ValueError):
        parse_norm_index("0.5")


def test_small_helpers():
    assert parse_csv_list(" a, b,,c ") == ["a", "b", "c"]
    assert parse_csv_list(None) is None
    assert chunk_bounds(5, 2) == [(0, 2), (2, 4), (4, 5)]
    assert pairs(3) == [(0, 1), (0, 2), (1, 2)]


def test_map_chunks_is_independent_of_thread_count():
    keys = np.arange(1000, dtype=np.uint64)
    single = map_chunks(lambda k: k * 2, keys, 64, threads=1)
    pooled = map_chunks(lambda k: k * 2, keys, 64, threads=8)
    assert np.array_equal(np.concatenate(single), np.concatenate(pooled))
    assert map_chunks(lambda k: k, keys[:0], 64, threads=4) == []


def test_setup_logger_does_not_stack_handlers(tmp_path):
    path = str(tmp_path / "logs" / "unit.log")
    logger = setup_logger("pairwise_ot.tests.unit", level=logging.INFO, log_to_file=True, log_file_path=path)
    logger = setup_logger("pairwise_ot.tests.unit", level=logging.INFO, log_to_file=True, log_file_path=path)
    assert len(logger.handlers) == 2
    logger.info("hello")
    for handler in logger.handlers:
        handler.flush()
    assert "hello" in (tmp_path / "logs" / "unit.log").read_text()
    quiet = setup_logger("pairwise_ot.tests.quiet", log_to_console=False, log_to_file=False)
    assert quiet.handlers == []


def test_console_handler_writes_to_stderr():
    logger = setup_logger("pairwise_ot.tests.console", log_to_file=False)
    assert [h.stream for h in logger.handlers] == [sys.stderr]
