"""Timing harness for SG-WLS."""

import csv
import time
from dataclasses import astuple, dataclass, fields
from typing import IO, Callable, Iterable, List

import numpy as np

from lib_common import logger
from lib_imagebuf import Image, luma
from lib_sgwls import SmoothConfig, assemble_full, smooth, solve_full

# Largest image the exact reference solve is timed on
REFERENCE_MAX_SIZE = 128


@dataclass(frozen=True)
class BenchRecord:
    op: str
    M: int
    N: int
    r: int
    tau: int
    T: int
    seconds: float


def synthetic_image(height: int, width: int, seed: int = 0) -> Image:
    """Piecewise-smooth RGB test scene with noise."""
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:height, 0:width] / max(height, width)
    base = np.stack([xx, yy, 0.5 * (xx + yy)], axis=2)
    base[height // 3 : 2 * height // 3, width // 3 : 2 * width // 3] += 0.3
    noisy = base + 0.03 * rng.standard_normal((height, width, 3))
    return Image(np.clip(noisy, 0.0, 1.0))


class BenchmarkRunner:
    """Time smoothing runs over parameter grids.

    Every measurement is the best of ``repeat`` runs after one untimed
    warm-up run that also compiles the band kernels.
    """

    def __init__(self, cfg: SmoothConfig, repeat: int = 1, threads: int = 1):
        self.cfg = cfg
        self.repeat = max(1, repeat)
        self.threads = threads
        self.records: List[BenchRecord] = []
        self._warm = False

    def _time(self, run: Callable[[], object]) -> float:
        best = float("inf")
        for _ in range(self.repeat):
            start = time.perf_counter()
            run()
            best = min(best, time.perf_counter() - start)
        return best

    def _warm_up(self) -> None:
        if not self._warm:
            img = synthetic_image(8, 8)
            smooth(img, img, self.cfg.model_copy(update={"r": 1, "tau": 1, "iterations": 1}))
            self._warm = True

    def time_smooth(self, height: int, width: int, r: int, tau: int, iterations: int) -> BenchRecord:
        """Time one SG-WLS run on a synthetic RGB image."""
        self._warm_up()
        cfg = self.cfg.model_copy(update={"r": r, "tau": tau, "iterations": iterations})
        img = synthetic_image(height, width)
        seconds = self._time(lambda: smooth(img, img, cfg, self.threads))
        record = BenchRecord("sgwls", height, width, r, tau, iterations, seconds)
        logger.info(f"sgwls {height}x{width} r={r} tau={tau} T={iterations}: {seconds:.4f}s")
        self.records.append(record)
        return record

    def time_reference(self, height: int, width: int, r: int) -> BenchRecord:
        """Time the exact 2D solve (assembly plus conjugate gradient)."""
        img = synthetic_image(height, width)
        guidance = luma(img)

        def run():
            sys = assemble_full(guidance, self.cfg.lam, r, self.cfg.weight)
            solve_full(sys, img)

        seconds = self._time(run)
        record = BenchRecord("wls_cg", height, width, r, 0, 0, seconds)
        logger.info(f"wls_cg {height}x{width} r={r}: {seconds:.4f}s")
        self.records.append(record)
        return record

    def run_grid(self, size: int, radii: Iterable[int], taus: Iterable[int], iterations: int) -> None:
        """Time every (r, tau) pair; pairs with tau > 2r+1 are skipped."""
        for r in radii:
            for tau in taus:
                if tau > 2 * r + 1:
                    logger.warning(f"Skipping tau={tau} for r={r}: tau must be <= {2 * r + 1}")
                    continue
                self.time_smooth(size, size, r, tau, iterations)

    def run_scaling(self, sizes: Iterable[int], r: int, tau: int, iterations: int) -> None:
        for size in sizes:
            self.time_smooth(size, size, r, tau, iterations)

    def run_iterations(self, size: int, r: int, tau: int, counts: Iterable[int]) -> None:
        for iterations in counts:
            self.time_smooth(size, size, r, tau, iterations)

    def run_reference(self, size: int, radii: Iterable[int], tau: int, iterations: int) -> None:
        """Time SG-WLS against the exact solve at the same radius."""
        size = min(size, REFERENCE_MAX_SIZE)
        for r in radii:
            self.time_smooth(size, size, r, min(tau, 2 * r + 1), iterations)
            self.time_reference(size, size, r)

    def write_csv(self, stream: IO[str]) -> None:
        """Write records as CSV with header op,M,N,r,tau,T,seconds."""
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow([f.name for f in fields(BenchRecord)])
        for record in self.records:
            row = list(astuple(record))
            row[-1] = f"{record.seconds:.6f}"
            writer.writerow(row)
