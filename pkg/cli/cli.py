"""SG-WLS command-line interface."""

import os
import subprocess
import sys
from enum import Enum
from pathlib import Path
from typing import List, Optional

import click
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from cli.bench import BenchmarkRunner
from lib_apps import (
    DETAIL_BOOST,
    ToneMapParams,
    build_config,
    colorize as colorize_image,
    depth_upsample,
    detail_enhance,
    scribble_mask,
    tone_map,
    upsample_preset_name,
)
from lib_common import ConfigError, SgwlsError, logger, resolve_threads, setup_logger
from lib_imagebuf import read_image, write_image
from lib_sgwls import Axis, SmoothConfig, WeightKind
from lib_sgwls import smooth as smooth_image

app = typer.Typer(help="Semi-global weighted least squares image smoothing")
console = Console(stderr=True)

# Set base directory
BASE_DIR = Path(__file__).parent.parent
LIBS_DIR = BASE_DIR / "libs"
TESTS_DIR = BASE_DIR / "tests"


class BenchSuite(str, Enum):
    GRID = "grid"
    SCALING = "scaling"
    ITERATIONS = "iterations"
    REFERENCE = "reference"


# Options shared by every smoothing command
PRESET = typer.Option(None, "--preset", "-p", help="Start from a named parameter preset")
LAMBDA = typer.Option(None, "--lambda", help="Smoothness weight lambda (>= 0)")
RADIUS = typer.Option(None, "--r", help="Neighbourhood radius r (>= 1)")
TAU = typer.Option(None, "--tau", help="Band stride tau (1 <= tau <= 2r+1)")
ITERS = typer.Option(None, "--iters", help="Number of directional passes T")
WEIGHTS = typer.Option(None, "--weights", help="Weight function")
ALPHA_S = typer.Option(None, "--as", help="Spatial exponent of frac weights")
ALPHA_R = typer.Option(None, "--ar", help="Range exponent of frac weights")
SIGMA_S = typer.Option(None, "--ss", help="Spatial sigma of exp weights")
SIGMA_R = typer.Option(None, "--sr", help="Range sigma of exp weights")
EPSILON = typer.Option(None, "--eps", help="Regulariser of frac weights")
RANGE_SCALE = typer.Option(None, "--range-scale", help="Multiplier on guidance differences")
FIRST_AXIS = typer.Option(None, "--first-axis", help="Axis of the first pass")
THREADS = typer.Option(None, "--threads", "-j", help="Worker threads (default: SGWLS_THREADS or 1)")


@app.callback()
def main(
    log_level: str = typer.Option("INFO", "--log-level", help="Log level for diagnostics"),
) -> None:
    """Semi-global weighted least squares image smoothing."""
    try:
        setup_logger(log_level, RichHandler(console=console, show_path=False))
    except ValueError as e:
        raise click.UsageError(str(e))


def _config(preset: Optional[str], **overrides) -> SmoothConfig:
    """Resolve preset and flags; invalid combinations are usage errors."""
    try:
        cfg = build_config(preset, **overrides)
    except (ValidationError, ConfigError) as e:
        raise click.UsageError(str(e))
    logger.info(f"Configuration: {cfg.model_dump_json()}")
    return cfg


def _threads(value: Optional[int]) -> int:
    try:
        return resolve_threads(value)
    except ConfigError as e:
        raise click.UsageError(str(e))


def _parse_list(text: str, kind=int) -> List:
    """Parse a comma separated list such as '1,2,4'."""
    try:
        return [kind(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise click.UsageError(f"Expected a comma separated list, got '{text}'")


def _fail(e: Exception) -> None:
    console.print(f"[bold red]Error:[/] {str(e)}")
    sys.exit(1)


@app.command()
def smooth(
    input_path: Path = typer.Argument(..., help="Image to smooth (PGM, PPM or PFM)"),
    output_path: Path = typer.Argument(..., help="Output image"),
    guide: Optional[Path] = typer.Option(
        None, "--guide", "-g", help="Guidance image (default: the input itself)"
    ),
    preset: Optional[str] = PRESET,
    lam: Optional[float] = LAMBDA,
    r: Optional[int] = RADIUS,
    tau: Optional[int] = TAU,
    iterations: Optional[int] = ITERS,
    kind: Optional[WeightKind] = WEIGHTS,
    alpha_s: Optional[float] = ALPHA_S,
    alpha_r: Optional[float] = ALPHA_R,
    sigma_s: Optional[float] = SIGMA_S,
    sigma_r: Optional[float] = SIGMA_R,
    epsilon: Optional[float] = EPSILON,
    range_scale: Optional[float] = RANGE_SCALE,
    first_axis: Optional[Axis] = FIRST_AXIS,
    threads: Optional[int] = THREADS,
) -> None:
    """Smooth an image with SG-WLS."""
    cfg = _config(
        preset, lam=lam, r=r, tau=tau, iterations=iterations, kind=kind,
        alpha_s=alpha_s, alpha_r=alpha_r, sigma_s=sigma_s, sigma_r=sigma_r,
        epsilon=epsilon, range_scale=range_scale, first_axis=first_axis,
    )
    workers = _threads(threads)
    try:
        target = read_image(input_path)
        guidance = read_image(guide) if guide else target
        write_image(smooth_image(target, guidance, cfg, workers), output_path)
    except (SgwlsError, OSError) as e:
        _fail(e)
    console.print(f"[bold green]Smoothed image written:[/] {output_path}")


@app.command()
def enhance(
    input_path: Path = typer.Argument(..., help="LDR image to enhance"),
    output_path: Path = typer.Argument(..., help="Output image"),
    boost: float = typer.Option(DETAIL_BOOST, "--boost", "-b", help="Detail layer gain"),
    preset: Optional[str] = PRESET,
    lam: Optional[float] = LAMBDA,
    r: Optional[int] = RADIUS,
    tau: Optional[int] = TAU,
    iterations: Optional[int] = ITERS,
    kind: Optional[WeightKind] = WEIGHTS,
    alpha_s: Optional[float] = ALPHA_S,
    alpha_r: Optional[float] = ALPHA_R,
    sigma_s: Optional[float] = SIGMA_S,
    sigma_r: Optional[float] = SIGMA_R,
    epsilon: Optional[float] = EPSILON,
    range_scale: Optional[float] = RANGE_SCALE,
    first_axis: Optional[Axis] = FIRST_AXIS,
    threads: Optional[int] = THREADS,
) -> None:
    """Boost fine detail over an edge-preserving base layer."""
    cfg = _config(
        preset or "enhance", lam=lam, r=r, tau=tau, iterations=iterations, kind=kind,
        alpha_s=alpha_s, alpha_r=alpha_r, sigma_s=sigma_s, sigma_r=sigma_r,
        epsilon=epsilon, range_scale=range_scale, first_axis=first_axis,
    )
    workers = _threads(threads)
    try:
        img = read_image(input_path)
        write_image(detail_enhance(img, boost, cfg, workers), output_path)
    except (SgwlsError, OSError) as e:
        _fail(e)
    console.print(f"[bold green]Enhanced image written:[/] {output_path}")


@app.command()
def tonemap(
    input_path: Path = typer.Argument(..., help="HDR image (PFM)"),
    output_path: Path = typer.Argument(..., help="Output image; PGM/PPM output is clamped"),
    lambdas: str = typer.Option("5,40,320", "--lambdas", help="Lambda of each smoothing level"),
    detail_weights: str = typer.Option(
        "1,1,1", "--detail-weights", help="Gain of each detail layer, finest first"
    ),
    target_range: Optional[float] = typer.Option(
        2.0, "--target-range", help="Largest log10 range of the base layer and of the output"
    ),
    normalize: bool = typer.Option(
        True, "--normalize/--no-normalize", help="Map the brightest output value to 1"
    ),
    preset: Optional[str] = PRESET,
    r: Optional[int] = RADIUS,
    tau: Optional[int] = TAU,
    iterations: Optional[int] = ITERS,
    kind: Optional[WeightKind] = WEIGHTS,
    alpha_s: Optional[float] = ALPHA_S,
    alpha_r: Optional[float] = ALPHA_R,
    sigma_s: Optional[float] = SIGMA_S,
    sigma_r: Optional[float] = SIGMA_R,
    epsilon: Optional[float] = EPSILON,
    range_scale: Optional[float] = RANGE_SCALE,
    first_axis: Optional[Axis] = FIRST_AXIS,
    threads: Optional[int] = THREADS,
) -> None:
    """Tone map an HDR image with a multi-scale decomposition."""
    cfg = _config(
        preset or "tonemap", r=r, tau=tau, iterations=iterations, kind=kind,
        alpha_s=alpha_s, alpha_r=alpha_r, sigma_s=sigma_s, sigma_r=sigma_r,
        epsilon=epsilon, range_scale=range_scale, first_axis=first_axis,
    )
    try:
        params = ToneMapParams(
            lambdas=tuple(_parse_list(lambdas, float)),
            detail_weights=tuple(_parse_list(detail_weights, float)),
            target_range=target_range,
            normalize=normalize,
        )
    except ValidationError as e:
        raise click.UsageError(str(e))
    workers = _threads(threads)
    try:
        hdr = read_image(input_path)
        write_image(tone_map(hdr, params, cfg, workers), output_path)
    except (SgwlsError, OSError) as e:
        _fail(e)
    console.print(f"[bold green]Tone-mapped image written:[/] {output_path}")


@app.command()
def upsample(
    depth_path: Path = typer.Argument(..., help="Low-resolution depth map"),
    guide_path: Path = typer.Argument(..., help="High-resolution colour guidance"),
    output_path: Path = typer.Argument(..., help="Output depth map"),
    factor: int = typer.Option(4, "--factor", "-f", help="Upsampling factor"),
    preset: Optional[str] = PRESET,
    lam: Optional[float] = LAMBDA,
    r: Optional[int] = RADIUS,
    tau: Optional[int] = TAU,
    iterations: Optional[int] = ITERS,
    kind: Optional[WeightKind] = WEIGHTS,
    alpha_s: Optional[float] = ALPHA_S,
    alpha_r: Optional[float] = ALPHA_R,
    sigma_s: Optional[float] = SIGMA_S,
    sigma_r: Optional[float] = SIGMA_R,
    epsilon: Optional[float] = EPSILON,
    range_scale: Optional[float] = RANGE_SCALE,
    first_axis: Optional[Axis] = FIRST_AXIS,
    threads: Optional[int] = THREADS,
) -> None:
    """Upsample a depth map guided by a colour image."""
    cfg = _config(
        preset or upsample_preset_name(factor),
        lam=lam, r=r, tau=tau, iterations=iterations, kind=kind,
        alpha_s=alpha_s, alpha_r=alpha_r, sigma_s=sigma_s, sigma_r=sigma_r,
        epsilon=epsilon, range_scale=range_scale, first_axis=first_axis,
    )
    workers = _threads(threads)
    try:
        depth = read_image(depth_path)
        guidance = read_image(guide_path)
        write_image(depth_upsample(depth, guidance, factor, cfg, workers), output_path)
    except (SgwlsError, OSError) as e:
        _fail(e)
    console.print(f"[bold green]Upsampled depth written:[/] {output_path}")


@app.command()
def colorize(
    gray_path: Path = typer.Argument(..., help="Gray image"),
    scribbles_path: Path = typer.Argument(..., help="RGB image with colour scribbles"),
    output_path: Path = typer.Argument(..., help="Output RGB image"),
    mask_path: Optional[Path] = typer.Option(
        None, "--mask", "-m", help="Scribble mask (default: where scribbles differ from gray)"
    ),
    preset: Optional[str] = PRESET,
    lam: Optional[float] = LAMBDA,
    r: Optional[int] = RADIUS,
    tau: Optional[int] = TAU,
    iterations: Optional[int] = ITERS,
    kind: Optional[WeightKind] = WEIGHTS,
    alpha_s: Optional[float] = ALPHA_S,
    alpha_r: Optional[float] = ALPHA_R,
    sigma_s: Optional[float] = SIGMA_S,
    sigma_r: Optional[float] = SIGMA_R,
    epsilon: Optional[float] = EPSILON,
    range_scale: Optional[float] = RANGE_SCALE,
    first_axis: Optional[Axis] = FIRST_AXIS,
    threads: Optional[int] = THREADS,
) -> None:
    """Propagate scribble colours over a gray image."""
    cfg = _config(
        preset or "colorize", lam=lam, r=r, tau=tau, iterations=iterations, kind=kind,
        alpha_s=alpha_s, alpha_r=alpha_r, sigma_s=sigma_s, sigma_r=sigma_r,
        epsilon=epsilon, range_scale=range_scale, first_axis=first_axis,
    )
    workers = _threads(threads)
    try:
        gray = read_image(gray_path)
        scribbles = read_image(scribbles_path)
        mask = read_image(mask_path) if mask_path else scribble_mask(gray, scribbles)
        write_image(colorize_image(gray, scribbles, mask, cfg, workers), output_path)
    except (SgwlsError, OSError) as e:
        _fail(e)
    console.print(f"[bold green]Colorized image written:[/] {output_path}")


@app.command()
def bench(
    suite: BenchSuite = typer.Option(BenchSuite.GRID, "--suite", "-s", help="Benchmark suite"),
    size: int = typer.Option(256, "--size", help="Side of the square test image"),
    radii: str = typer.Option("1,2,4", "--r", help="Radii to time"),
    taus: str = typer.Option("1,2,4", "--tau", help="Strides to time"),
    iterations: int = typer.Option(4, "--iters", help="Directional passes"),
    sizes: str = typer.Option("128,256,512", "--sizes", help="Image sides of the scaling suite"),
    repeat: int = typer.Option(1, "--repeat", help="Runs per measurement; the best is kept"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="CSV file (default: stdout)"),
    preset: Optional[str] = PRESET,
    lam: Optional[float] = LAMBDA,
    kind: Optional[WeightKind] = WEIGHTS,
    threads: Optional[int] = THREADS,
) -> None:
    """Time SG-WLS over parameter grids and write a CSV table."""
    cfg = _config(preset, lam=lam, kind=kind)
    r_list, tau_list = _parse_list(radii), _parse_list(taus)
    if not r_list or not tau_list or size < 1 or iterations < 1:
        raise click.UsageError("bench needs a positive size, passes and at least one r and tau")
    runner = BenchmarkRunner(cfg, repeat=repeat, threads=_threads(threads))
    try:
        if suite is BenchSuite.GRID:
            runner.run_grid(size, r_list, tau_list, iterations)
        elif suite is BenchSuite.SCALING:
            runner.run_scaling(_parse_list(sizes), r_list[0], tau_list[0], iterations)
        elif suite is BenchSuite.ITERATIONS:
            runner.run_iterations(size, r_list[0], tau_list[0], [iterations, 2 * iterations])
        else:
            runner.run_reference(size, r_list, tau_list[0], iterations)

        if output:
            with open(output, "w", encoding="utf-8") as stream:
                runner.write_csv(stream)
        else:
            runner.write_csv(sys.stdout)
    except (SgwlsError, OSError) as e:
        _fail(e)

    table = Table(title=f"{suite.value} suite")
    for column in ("op", "M x N", "r", "tau", "T", "seconds"):
        table.add_column(column, style="cyan" if column == "op" else "green")
    for rec in runner.records:
        table.add_row(rec.op, f"{rec.M}x{rec.N}", str(rec.r), str(rec.tau), str(rec.T), f"{rec.seconds:.4f}")
    console.print(table)


@app.command()
def selftest(
    lib_name: Optional[str] = typer.Argument(
        None,
        help="Name of the library to test. If not specified, all libraries and the CLI are tested.",
    ),
    acceptance: bool = typer.Option(
        False, "--acceptance", "-a", help="Run the slow acceptance experiments instead"
    ),
    verbose: bool = typer.Option(
        False, "--verbose", "-v", help="Enable verbose output for tests"
    ),
    coverage: bool = typer.Option(
        False, "--coverage", "-c", help="Generate coverage report"
    ),
) -> None:
    """Run the test suites."""
    pytest_args = []

    if verbose:
        pytest_args.append("-v")
    if coverage:
        pytest_args.extend(["--cov", "--cov-report", "term"])
    if acceptance:
        pytest_args.extend(["-m", "acceptance"])

    if lib_name:
        lib_path = LIBS_DIR / lib_name
        if not lib_path.exists():
            console.print(f"[bold red]Error:[/] Library '{lib_name}' not found.")
            sys.exit(1)
        tests_paths = [lib_path / "tests"]
    else:
        tests_paths = [LIBS_DIR / lib / "tests" for lib in sorted(os.listdir(LIBS_DIR))]
        tests_paths.append(TESTS_DIR)

    tests_paths = [path for path in tests_paths if path.exists()]
    if not tests_paths:
        console.print("[bold yellow]Warning:[/] No tests directory found.")
        sys.exit(0)

    console.print(f"[bold green]Running tests:[/] {', '.join(p.parent.name for p in tests_paths)}")
    result = _run_pytest(tests_paths, pytest_args)
    if result != 0:
        console.print("[bold red]Some tests failed.[/]")
        sys.exit(result)
    console.print("[bold green]All tests passed![/]")


def _run_pytest(tests_paths: List[Path], pytest_args: List[str]) -> int:
    """Run pytest in a subprocess.

    Args:
        tests_paths: Test directories to collect
        pytest_args: Additional pytest arguments

    Returns:
        Return code from pytest (0 for success)
    """
    env = os.environ.copy()

    # Every library's src dir plus the repository root for the cli package
    python_path_entries = [str(BASE_DIR)]
    for lib_name in sorted(os.listdir(LIBS_DIR)):
        src_path = LIBS_DIR / lib_name / "src"
        if src_path.exists():
            python_path_entries.append(str(src_path))

    python_path = os.pathsep.join(python_path_entries)
    if "PYTHONPATH" in env:
        env["PYTHONPATH"] = f"{python_path}{os.pathsep}{env['PYTHONPATH']}"
    else:
        env["PYTHONPATH"] = python_path

    console.print(f"[dim]Setting PYTHONPATH to: {env['PYTHONPATH']}[/dim]")

    cmd = [sys.executable, "-m", "pytest"] + pytest_args + [str(p) for p in tests_paths]

    try:
        result = subprocess.run(
            cmd,
            check=False,  # Don't raise an exception on test failure
            cwd=str(BASE_DIR),
            env=env,
            text=True,
        )
        return result.returncode
    except Exception as e:
        console.print(f"[bold red]Error running tests:[/] {str(e)}")
        return 1


if __name__ == "__main__":
    app()
