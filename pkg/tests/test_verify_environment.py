"""Tests for verify_environment helper functions."""

import os
from unittest.mock import patch


def test_check_module_reports_missing_packages():
    import verify_environment

    assert verify_environment.check_module("NumPy", "numpy") is True
    assert verify_environment.check_module("Nothing", "no_such_module_here") is False


def test_check_threads_accepts_unset_variable():
    import verify_environment

    env = {k: v for k, v in os.environ.items() if k != "BISECTD_THREADS"}
    with patch.dict(os.environ, env, clear=True):
        assert verify_environment.check_threads() is True


def test_check_threads_accepts_counts():
    import verify_environment

    with patch.dict(os.environ, {"BISECTD_THREADS": "4"}):
        assert verify_environment.check_threads() is True


def test_check_threads_rejects_garbage():
    import verify_environment

    with patch.dict(os.environ, {"BISECTD_THREADS": "-1"}):
        assert verify_environment.check_threads() is False


def test_check_closure_passes():
    import verify_environment

    assert verify_environment.check_closure() is True


def test_check_closure_reports_exceptions():
    import verify_environment

    with patch("src.forest.bisect_with_closure", side_effect=RuntimeError("boom")):
        assert verify_environment.check_closure() is False


def test_main_returns_1_on_failure(capsys):
    import verify_environment

    with patch.object(verify_environment, "check_closure", return_value=False):
        assert verify_environment.main() == 1
    assert "[FAIL] SOME CHECKS FAILED" in capsys.readouterr().out
