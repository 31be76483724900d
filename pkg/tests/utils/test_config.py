"""Tests for configuration loading."""

import os
from unittest.mock import patch

import pytest


def _write(tmp_path, text):
    path = tmp_path / "config.yaml"
    path.write_text(text)
    return path


def test_default_config_is_found():
    from src.utils import Config

    config = Config()
    assert config.config_path.name == "config.yaml"
    assert config.get("refinement", "closure_budget") == 16777216
    assert config.get("io", "vtk_format_version") == "4.2"


def test_nested_get_falls_back_to_default(tmp_path):
    from src.utils import Config

    config = Config(_write(tmp_path, "analysis:\n  sample_sources: 8\n"))
    assert config.get("analysis", "sample_sources") == 8
    assert config.get("analysis", "missing", default=3) == 3
    assert config.get("analysis", "sample_sources", "deeper", default="x") == "x"
    assert config.get_aux_config() == {}


def test_missing_file_raises(tmp_path):
    from src.utils import Config

    with pytest.raises(FileNotFoundError):
        Config(tmp_path / "nope.yaml")


def test_empty_file_is_an_empty_config(tmp_path):
    from src.utils import Config

    assert Config(_write(tmp_path, "")).config == {}


def test_reload_replaces_the_global_instance(tmp_path):
    from src.utils import get_config, reload_config

    path = _write(tmp_path, "aux:\n  default_depth: 4\n")
    try:
        reload_config(str(path))
        assert get_config().get_aux_config()["default_depth"] == 4
    finally:
        reload_config()
    assert get_config().get_aux_config()["default_depth"] == 12


# ── Worker count ─────────────────────────────────────────────────────────────


def test_workers_from_config(tmp_path):
    from src.utils import Config

    config = Config(_write(tmp_path, "processing:\n  num_workers: 3\n"))
    with patch.dict(os.environ, {}, clear=False):
        os.environ.pop("BISECTD_THREADS", None)
        assert config.num_workers() == 3


def test_environment_overrides_config(tmp_path):
    from src.utils import Config

    config = Config(_write(tmp_path, "processing:\n  num_workers: 3\n"))
    with patch.dict(os.environ, {"BISECTD_THREADS": "5"}):
        assert config.num_workers() == 5


def test_zero_workers_means_one_per_cpu(tmp_path):
    from src.utils import Config

    config = Config(_write(tmp_path, "processing:\n  num_workers: 0\n"))
    with patch.dict(os.environ, {"BISECTD_THREADS": ""}), patch("os.cpu_count", return_value=6):
        assert config.num_workers() == 6


@pytest.mark.parametrize("raw", ["many", "-2"])
def test_bad_worker_counts_are_rejected(tmp_path, raw):
    from src.utils import Config

    config = Config(_write(tmp_path, "{}\n"))
    with patch.dict(os.environ, {"BISECTD_THREADS": raw}):
        with pytest.raises(ValueError):
            config.num_workers()
