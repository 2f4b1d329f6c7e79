"""Exact 2D WLS over full (2r+1)x(2r+1) windows, for small images.

Used to check SG-WLS against the solution it approximates.
"""

from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import cg

from lib_common import ConfigError, ConvergenceError, logger
from lib_imagebuf import Image
from lib_sgwls.config import WeightParams
from lib_sgwls.weights import guidance_weight

MAX_PIXELS = 65536


@dataclass(frozen=True)
class SparseSystem:
    matrix: sparse.csr_matrix
    height: int
    width: int

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def entries(self):
        """(row, col, value) coordinate lists of the matrix."""
        coo = self.matrix.tocoo()
        return coo.row, coo.col, coo.data


def _half_window(r: int):
    # Each unordered pixel pair is visited once
    for dy in range(0, r + 1):
        for dx in range(-r, r + 1):
            if dy > 0 or dx > 0:
                yield dy, dx


def assemble_full(guidance: Image, lam: float, r: int, weight: WeightParams) -> SparseSystem:
    """Assemble the S x S WLS matrix of the guidance image.

    Args:
        guidance: Guidance image, at most MAX_PIXELS pixels
        lam: Smoothness strength
        r: Window half-width; windows are clipped at the borders
        weight: Weight constants

    Returns:
        SparseSystem holding a CSR matrix
    """
    height, width = guidance.height, guidance.width
    size = height * width
    if size > MAX_PIXELS:
        raise ConfigError(f"Reference solver limited to {MAX_PIXELS} pixels, got {size}")
    if lam < 0:
        raise ConfigError(f"lambda must be >= 0, got {lam}")
    if r < 1:
        raise ConfigError(f"Window radius must be >= 1, got {r}")

    g = guidance.data
    index = np.arange(size).reshape(height, width)
    diag = np.ones(size)
    rows, cols, vals = [], [], []

    for dy, dx in _half_window(r):
        y0, y1 = 0, height - dy
        x0, x1 = max(0, -dx), width - max(0, dx)
        if y1 <= y0 or x1 <= x0:
            continue
        p = index[y0:y1, x0:x1].ravel()
        q = index[y0 + dy : y1 + dy, x0 + dx : x1 + dx].ravel()
        diff = g[y0:y1, x0:x1] - g[y0 + dy : y1 + dy, x0 + dx : x1 + dx]
        rng = weight.range_scale * np.sqrt(np.sum(diff * diff, axis=2)).ravel()
        w = lam * np.asarray(guidance_weight(np.hypot(dy, dx), rng, weight))
        np.add.at(diag, p, w)
        np.add.at(diag, q, w)
        rows.extend((p, q))
        cols.extend((q, p))
        vals.extend((-w, -w))

    rows.append(np.arange(size))
    cols.append(np.arange(size))
    vals.append(diag)
    matrix = sparse.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(size, size),
    ).tocsr()
    return SparseSystem(matrix=matrix, height=height, width=width)


def solve_full(sys: SparseSystem, f: Image, rtol: float = 1e-10) -> Image:
    """Solve A U = F per channel with unpreconditioned conjugate gradient.

    CG is restarted on the true residual ``b - A x`` until that residual
    is at most ``rtol`` relative to ``b``; all restarts share one budget
    of 10 S iterations.

    Raises:
        ConvergenceError: the iteration budget ran out or a restart made
            no progress before the true residual reached ``rtol``
    """
    if (f.height, f.width) != (sys.height, sys.width):
        raise ConfigError(
            f"Image {f.height}x{f.width} does not match system {sys.height}x{sys.width}"
        )
    cap = 10 * sys.n
    out = np.empty((sys.n, f.channels))

    for c in range(f.channels):
        b = f.plane(c).ravel()
        b_norm = np.linalg.norm(b)
        if b_norm == 0.0:
            out[:, c] = 0.0
            continue

        steps = 0

        def count(_):
            nonlocal steps
            steps += 1

        x = np.zeros_like(b)
        residual, sweeps = 1.0, 0
        while not residual <= rtol:
            if steps >= cap:
                raise ConvergenceError(steps, residual)
            # The recursive CG residual drifts from the true one; aim below rtol
            d, _ = cg(
                sys.matrix,
                b - sys.matrix @ x,
                rtol=0.0,
                atol=0.1 * rtol * b_norm,
                maxiter=cap - steps,
                callback=count,
            )
            x += d
            sweeps += 1
            previous, residual = residual, float(np.linalg.norm(b - sys.matrix @ x) / b_norm)
            if not residual <= rtol and not residual < previous:
                raise ConvergenceError(steps, residual)
        logger.debug(
            f"CG channel {c}: {steps} iterations in {sweeps} sweeps, residual {residual:.2e}"
        )
        out[:, c] = x

    return Image(out.reshape(sys.height, sys.width, f.channels))


def wls_energy(
    u: Image, f: Image, guidance: Image, lam: float, r: int, weight: WeightParams
) -> float:
    """||u - f||^2 plus the weighted smoothness of u over all window pairs.

    Each unordered pair is counted once, so ``solve_full`` minimises it.
    """
    if u.shape != f.shape or u.channels != f.channels:
        raise ConfigError(f"Images differ: {u.data.shape} vs {f.data.shape}")
    rows, cols, vals = assemble_full(guidance, lam, r, weight).entries
    pairs = rows < cols
    p, q, strength = rows[pairs], cols[pairs], -vals[pairs]

    energy = 0.0
    for c in range(u.channels):
        uc = u.plane(c).ravel()
        d = uc - f.plane(c).ravel()
        energy += float(d @ d) + float(strength @ (uc[p] - uc[q]) ** 2)
    return energy
