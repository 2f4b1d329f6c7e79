"""Tests for the sgwls command-line interface."""

import logging
import os
import subprocess
from pathlib import Path

import numpy as np
import pytest
from typer.testing import CliRunner

from cli import cli as cli_module
from cli.cli import app
from lib_apps import get_preset
from lib_common import logger
from lib_imagebuf import Image, read_image, write_image

runner = CliRunner()


@pytest.fixture(autouse=True)
def restore_logger():
    """The CLI swaps in a rich handler; put the library logger back afterwards."""
    handlers, level = list(logger.handlers), logger.level
    yield
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    for handler in handlers:
        logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = True


@pytest.fixture
def gray_pgm(tmp_path):
    rng = np.random.default_rng(0)
    path = tmp_path / "in.pgm"
    write_image(Image(rng.integers(0, 256, size=(9, 11)) / 255.0), path)
    return path


@pytest.fixture
def color_ppm(tmp_path):
    rng = np.random.default_rng(1)
    data = np.clip(np.linspace(0.1, 0.9, 12)[None, :, None] + 0.05 * rng.random((10, 12, 3)), 0, 1)
    path = tmp_path / "in.ppm"
    write_image(Image(data), path)
    return path


def test_smooth_lambda_zero_round_trip(gray_pgm, tmp_path):
    """Test lambda=0 writes the input back unchanged."""
    out = tmp_path / "out.pgm"
    result = runner.invoke(app, ["smooth", "--lambda", "0", str(gray_pgm), str(out)])
    assert result.exit_code == 0, result.output
    assert out.read_bytes() == gray_pgm.read_bytes()


def test_smooth_with_flags(color_ppm, tmp_path):
    """Test the detail-enhancement flag set on an RGB image."""
    out = tmp_path / "out.ppm"
    args = [
        "smooth", "--lambda", "900", "--r", "1", "--tau", "1", "--iters", "4",
        "--weights", "frac", "--as", "1.2", "--ar", "1.2", str(color_ppm), str(out),
    ]
    result = runner.invoke(app, args)
    assert result.exit_code == 0, result.output
    img = read_image(out)
    assert (img.height, img.width, img.channels) == (10, 12, 3)


def test_smooth_thread_count_does_not_change_output(color_ppm, tmp_path):
    """Test --threads 1 and --threads 4 produce identical files."""
    outputs = []
    for threads in ("1", "4"):
        out = tmp_path / f"out{threads}.pfm"
        args = ["smooth", "--preset", "colorize", "--threads", threads, str(color_ppm), str(out)]
        result = runner.invoke(app, args)
        assert result.exit_code == 0, result.output
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


@pytest.mark.parametrize(
    "flags",
    [
        ["--bogus"],
        ["--r", "1", "--tau", "5"],
        ["--weights", "gauss"],
        ["--preset", "nope"],
        ["--lambda", "-1"],
        ["--threads", "0"],
    ],
)
def test_usage_errors_exit_2(gray_pgm, tmp_path, flags):
    """Test bad flags and invalid configurations are usage errors."""
    result = runner.invoke(app, ["smooth", *flags, str(gray_pgm), str(tmp_path / "out.pgm")])
    assert result.exit_code == 2


def test_runtime_errors_exit_1(gray_pgm, color_ppm, tmp_path):
    """Test missing files and size mismatches are runtime errors."""
    result = runner.invoke(app, ["smooth", str(tmp_path / "missing.pgm"), str(tmp_path / "o.pgm")])
    assert result.exit_code == 1
    assert "Error" in result.output

    guide = ["--guide", str(color_ppm)]
    result = runner.invoke(app, ["smooth", *guide, str(gray_pgm), str(tmp_path / "o.pgm")])
    assert result.exit_code == 1

    # RGB result cannot be written as PGM
    result = runner.invoke(app, ["smooth", str(color_ppm), str(tmp_path / "o.pgm")])
    assert result.exit_code == 1


def test_enhance_command(color_ppm, tmp_path):
    out = tmp_path / "enhanced.ppm"
    result = runner.invoke(app, ["enhance", "--boost", "2", str(color_ppm), str(out)])
    assert result.exit_code == 0, result.output
    assert read_image(out).channels == 3


def test_tonemap_command(tmp_path):
    rng = np.random.default_rng(2)
    hdr = tmp_path / "in.pfm"
    write_image(Image(10.0 ** rng.uniform(-1, 3, size=(8, 9, 3))), hdr)
    out = tmp_path / "out.ppm"
    result = runner.invoke(app, ["tonemap", "--target-range", "1.5", str(hdr), str(out)])
    assert result.exit_code == 0, result.output
    assert read_image(out).shape == (8, 9)

    result = runner.invoke(app, ["tonemap", "--detail-weights", "1,1", str(hdr), str(out)])
    assert result.exit_code == 2


def test_upsample_command(tmp_path):
    depth = tmp_path / "depth.pgm"
    guide = tmp_path / "guide.ppm"
    write_image(Image(np.full((4, 5), 0.4)), depth)
    write_image(Image(np.full((8, 10, 3), 0.5)), guide)
    out = tmp_path / "up.pfm"
    result = runner.invoke(app, ["upsample", "--factor", "2", str(depth), str(guide), str(out)])
    assert result.exit_code == 0, result.output
    up = read_image(out)
    assert up.shape == (8, 10)
    assert np.allclose(up.data, np.float32(0.4), atol=1e-6)


def test_colorize_command_derives_mask(tmp_path):
    gray = np.full((12, 12), 0.5)
    scribbles = np.repeat(gray[:, :, None], 3, axis=2)
    scribbles[5:7, 5:7] = [0.6, 0.45, 0.5]
    write_image(Image(gray), tmp_path / "gray.pgm")
    write_image(Image(scribbles), tmp_path / "scribbles.ppm")
    out = tmp_path / "color.ppm"
    args = ["colorize", str(tmp_path / "gray.pgm"), str(tmp_path / "scribbles.ppm"), str(out)]
    result = runner.invoke(app, args)
    assert result.exit_code == 0, result.output
    assert read_image(out).channels == 3

    # A scribble image with no colour has nothing to propagate
    write_image(Image(np.repeat(gray[:, :, None], 3, axis=2)), tmp_path / "blank.ppm")
    args[2] = str(tmp_path / "blank.ppm")
    assert runner.invoke(app, args).exit_code == 1


def test_bench_grid_csv(tmp_path):
    """Test the grid suite writes one CSV row per valid (r, tau) pair."""
    csv_path = tmp_path / "bench.csv"
    args = ["bench", "--size", "16", "--r", "1,2", "--tau", "1,4", "--iters", "1", "-o", str(csv_path)]
    result = runner.invoke(app, args)
    assert result.exit_code == 0, result.output

    lines = csv_path.read_text().splitlines()
    assert lines[0] == "op,M,N,r,tau,T,seconds"
    # tau=4 exceeds 2r+1 for r=1 and is skipped
    rows = [line.split(",") for line in lines[1:]]
    assert [(row[3], row[4]) for row in rows] == [("1", "1"), ("2", "1"), ("2", "4")]
    assert all(row[0] == "sgwls" and row[1] == row[2] == "16" for row in rows)
    assert all(float(row[6]) >= 0.0 for row in rows)


def test_bench_reference_suite(tmp_path):
    csv_path = tmp_path / "bench.csv"
    args = ["bench", "--suite", "reference", "--size", "12", "--r", "1", "--lambda", "10", "-o", str(csv_path)]
    result = runner.invoke(app, args)
    assert result.exit_code == 0, result.output
    ops = [line.split(",")[0] for line in csv_path.read_text().splitlines()[1:]]
    assert ops == ["sgwls", "wls_cg"]


def test_log_level_option(gray_pgm, tmp_path):
    out = tmp_path / "out.pgm"
    result = runner.invoke(app, ["--log-level", "DEBUG", "smooth", str(gray_pgm), str(out)])
    assert result.exit_code == 0, result.output
    assert logger.level == logging.DEBUG

    result = runner.invoke(app, ["--log-level", "LOUD", "smooth", str(gray_pgm), str(out)])
    assert result.exit_code == 2


def test_smooth_defaults_to_enhance_preset(gray_pgm, tmp_path, monkeypatch):
    """Test a bare smooth call uses the detail-enhancement parameters."""
    seen = {}

    def record(target, guidance, cfg, workers):
        seen["cfg"] = cfg
        return target

    monkeypatch.setattr(cli_module, "smooth_image", record)
    result = runner.invoke(app, ["smooth", str(gray_pgm), str(tmp_path / "out.pgm")])
    assert result.exit_code == 0, result.output
    assert seen["cfg"] == get_preset("enhance")
    assert seen["cfg"].weight.range_scale == 255.0


def test_smooth_single_thread_repeatable(color_ppm, tmp_path):
    """Test two --threads 1 runs write identical files."""
    outputs = []
    for run in ("a", "b"):
        out = tmp_path / f"out_{run}.pfm"
        result = runner.invoke(app, ["smooth", "--threads", "1", str(color_ppm), str(out)])
        assert result.exit_code == 0, result.output
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_selftest_runs_pytest_on_library(monkeypatch):
    """Test selftest hands the library tests and flags to a pytest subprocess."""
    calls = []

    def fake_run(cmd, **kwargs):
        calls.append((cmd, kwargs))
        return subprocess.CompletedProcess(cmd, 0)

    monkeypatch.setattr(cli_module.subprocess, "run", fake_run)
    result = runner.invoke(app, ["selftest", "lib_sgwls", "--acceptance", "--verbose"])
    assert result.exit_code == 0, result.output

    assert len(calls) == 1
    cmd, kwargs = calls[0]
    assert cmd[1:3] == ["-m", "pytest"]
    assert cmd[3:6] == ["-v", "-m", "acceptance"]
    assert cmd[-1] == str(cli_module.LIBS_DIR / "lib_sgwls" / "tests")
    python_path = kwargs["env"]["PYTHONPATH"].split(os.pathsep)
    assert str(cli_module.LIBS_DIR / "lib_sgwls" / "src") in python_path
    assert str(cli_module.BASE_DIR) in python_path


def test_selftest_all_suites_and_failures(monkeypatch):
    """Test every test directory is collected and a failing run exits non-zero."""
    calls = []

    def fake_run(cmd, **kwargs):
        calls.append(cmd)
        return subprocess.CompletedProcess(cmd, 1)

    monkeypatch.setattr(cli_module.subprocess, "run", fake_run)
    result = runner.invoke(app, ["selftest"])
    assert result.exit_code == 1

    collected = calls[0][3:]
    assert str(cli_module.TESTS_DIR) in collected
    assert str(cli_module.LIBS_DIR / "lib_apps" / "tests") in collected
    # Unique basenames keep a single pytest run collectable
    names = [p.name for d in collected for p in Path(d).glob("test_*.py")]
    assert len(names) == len(set(names))

    result = runner.invoke(app, ["selftest", "lib_missing"])
    assert result.exit_code == 1
