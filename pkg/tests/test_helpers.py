"""
Test the shared helpers and the acceptance-check wrapper.
"""

import os
import sys
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np

from commands.acceptance import Check, exact_mz_p2, run_check, sup_norm_gap_closed_form
from helpers import config_hash, format_level, parallel_map, trial_rng
from models.errors import UsageError


def test_format_level():
    assert format_level(8) == "8"
    assert format_level(2.0) == "2"
    assert format_level(0.5) == "0.5"
    assert format_level(float("inf")) == "inf"


def test_config_hash_ignores_key_order():
    assert config_hash({"a": 1, "b": 2}) == config_hash({"b": 2, "a": 1})
    assert config_hash({"a": 1}) != config_hash({"a": 2})
    assert config_hash(None) == "none"


def test_parallel_map_keeps_order():
    items = list(range(20))
    assert parallel_map(lambda x: x * x, items, threads=4) == [x * x for x in items]
    assert parallel_map(lambda x: x + 1, items, threads=1) == [x + 1 for x in items]


def test_trial_rng_streams():
    a = trial_rng(3, 0).standard_normal(4)
    assert np.array_equal(a, trial_rng(3, 0).standard_normal(4))
    assert not np.array_equal(a, trial_rng(3, 1).standard_normal(4))


def test_run_check_records_result():
    result = run_check(Check("exact_mz_p2", exact_mz_p2))
    assert result.passed
    assert result.error is None
    assert isinstance(result.details["c1"], float)


def test_run_check_captures_library_errors():
    def broken():
        raise UsageError("bad input")

    result = run_check(Check("broken", broken))
    assert not result.passed
    assert result.error == "UsageError: bad input"


def test_sup_norm_gap_check_passes():
    passed, details = sup_norm_gap_closed_form()
    assert passed, details
    print("✅ sup-norm gaps:", details)


if __name__ == "__main__":
    test_format_level()
    test_config_hash_ignores_key_order()
    test_run_check_records_result()
    print("\n🎉 Helper checks passed")
