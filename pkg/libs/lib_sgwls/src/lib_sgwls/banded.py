"""Band-stored WLS subsystems and their r-band LU solve.

Storage for a system of size s and bandwidth r:

- ``diag[k]`` is A[k, k]
- ``upper[k, i-1]`` is A[k, k+i]
- ``lower[k, i-1]`` is A[k+i, k]

Entries that would fall outside the matrix are kept at 0.
"""

from dataclasses import dataclass

import numpy as np

from lib_common import ConfigError, FactorizationError, OracleError
from lib_sgwls._kernels import backward_kernel, factorize_kernel, forward_kernel

ORACLE_MAX_SIZE = 2000


@dataclass(frozen=True)
class BandedSystem:
    diag: np.ndarray
    upper: np.ndarray
    lower: np.ndarray
    rhs: np.ndarray

    @property
    def n(self) -> int:
        return self.diag.shape[0]

    @property
    def r(self) -> int:
        return self.upper.shape[1]

    def to_dense(self) -> np.ndarray:
        """Dense (s, s) copy of the matrix."""
        return _band_to_dense(np.diag(self.diag), self.upper, self.lower)

    @classmethod
    def from_dense(cls, matrix: np.ndarray, rhs: np.ndarray, r: int) -> "BandedSystem":
        """Read the band of a dense matrix; entries outside it are dropped."""
        matrix = np.asarray(matrix, dtype=np.float64)
        s = matrix.shape[0]
        upper = np.zeros((s, r))
        lower = np.zeros((s, r))
        for i in range(1, min(r, s - 1) + 1):
            upper[:-i, i - 1] = np.diagonal(matrix, i)
            lower[:-i, i - 1] = np.diagonal(matrix, -i)
        return cls(
            diag=np.diagonal(matrix).copy(),
            upper=upper,
            lower=lower,
            rhs=np.asarray(rhs, dtype=np.float64).copy(),
        )


@dataclass(frozen=True)
class BandedFactors:
    """A = P Q with P lower triangular (alpha on its diagonal, gamma below)
    and Q unit upper triangular (beta above)."""

    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray

    @property
    def n(self) -> int:
        return self.alpha.shape[0]

    def lower_factor(self) -> np.ndarray:
        return _band_to_dense(np.diag(self.alpha), np.zeros_like(self.beta), self.gamma)

    def upper_factor(self) -> np.ndarray:
        return _band_to_dense(np.eye(self.n), self.beta, np.zeros_like(self.gamma))


def _band_to_dense(base: np.ndarray, upper: np.ndarray, lower: np.ndarray) -> np.ndarray:
    dense = base.astype(np.float64)
    s = dense.shape[0]
    for i in range(1, min(upper.shape[1], s - 1) + 1):
        k = np.arange(s - i)
        dense[k, k + i] = upper[: s - i, i - 1]
        dense[k + i, k] = lower[: s - i, i - 1]
    return dense


def _check_weights(weights: np.ndarray, s: int, r: int) -> np.ndarray:
    weights = np.asarray(weights, dtype=np.float64)
    if weights.ndim != 2 or weights.shape[0] != s or weights.shape[1] < min(r, s - 1):
        raise ConfigError(
            f"Weight table must have shape ({s}, {r}), got {weights.shape}"
        )
    r_eff = min(r, s - 1)
    table = weights[:, :r_eff].copy()
    # Pairs that run past the end of the band do not exist
    for t in range(1, r_eff + 1):
        table[s - t :, t - 1] = 0.0
    return table


def assemble_subsystem(
    band_values: np.ndarray, weights: np.ndarray, lam: float, r: int
) -> BandedSystem:
    """Build A_s and f of the 1D WLS problem on a band.

    Args:
        band_values: (s,) or (s, C) samples along the band
        weights: (s, r) table from ``edge_weights_along_band``
        lam: Smoothness strength
        r: Bandwidth; clipped to s - 1

    Returns:
        BandedSystem with rhs set to ``band_values``
    """
    if lam < 0:
        raise ConfigError(f"lambda must be >= 0, got {lam}")
    values = np.asarray(band_values, dtype=np.float64)
    if values.ndim not in (1, 2) or values.shape[0] < 1:
        raise ConfigError(f"Band values must be a non-empty sequence, got {values.shape}")
    s = values.shape[0]
    table = _check_weights(weights, s, r)

    off = -lam * table
    incoming = np.zeros(s)
    for t in range(1, table.shape[1] + 1):
        incoming[t:] += table[:-t, t - 1]
    diag = 1.0 + lam * (table.sum(axis=1) + incoming)

    return BandedSystem(diag=diag, upper=off, lower=off.copy(), rhs=values.copy())


def rband_lu_factorize(sys: BandedSystem) -> BandedFactors:
    """Factor a band-stored SPD matrix as P Q."""
    s, r = sys.n, sys.r
    alpha = np.zeros(s)
    beta = np.zeros((s, r))
    gamma = np.zeros((s, r))
    failed = factorize_kernel(
        np.ascontiguousarray(sys.diag, dtype=np.float64),
        np.ascontiguousarray(sys.upper, dtype=np.float64),
        np.ascontiguousarray(sys.lower, dtype=np.float64),
        alpha,
        beta,
        gamma,
    )
    if failed >= 0:
        raise FactorizationError(int(failed), float(alpha[failed]))
    return BandedFactors(alpha=alpha, beta=beta, gamma=gamma)


def _per_channel(kernel, values: np.ndarray, n: int, *operands) -> np.ndarray:
    values = np.asarray(values, dtype=np.float64)
    if values.ndim not in (1, 2) or values.shape[0] != n:
        raise ConfigError(f"Expected {n} samples, got shape {values.shape}")
    out = np.empty_like(values)
    if values.ndim == 1:
        kernel(*operands, np.ascontiguousarray(values), out)
        return out
    column = np.empty(n)
    for c in range(values.shape[1]):
        kernel(*operands, np.ascontiguousarray(values[:, c]), column)
        out[:, c] = column
    return out


def forward_substitute(factors: BandedFactors, f: np.ndarray) -> np.ndarray:
    """Solve P y = f."""
    return _per_channel(forward_kernel, f, factors.n, factors.alpha, factors.gamma)


def backward_substitute(factors: BandedFactors, y: np.ndarray) -> np.ndarray:
    """Solve Q u = y."""
    return _per_channel(backward_kernel, y, factors.n, factors.beta)


def solve_banded(sys: BandedSystem) -> np.ndarray:
    factors = rband_lu_factorize(sys)
    return backward_substitute(factors, forward_substitute(factors, sys.rhs))


def smoothness_residual(band_values: np.ndarray, weights: np.ndarray, lam: float) -> np.ndarray:
    """f - A_s f, built from neighbour differences.

    Exactly zero for a constant band or lam == 0.
    """
    values = np.asarray(band_values, dtype=np.float64)
    s = values.shape[0]
    r = np.asarray(weights).shape[1]
    table = _check_weights(weights, s, r)
    residual = np.zeros_like(values)
    for t in range(1, table.shape[1] + 1):
        w = table[:-t, t - 1]
        if values.ndim == 2:
            w = w[:, None]
        flux = w * (values[:-t] - values[t:])
        residual[:-t] -= flux
        residual[t:] += flux
    return lam * residual


def solve_subsystem(
    band_values: np.ndarray, weights: np.ndarray, lam: float, r: int
) -> np.ndarray:
    """Minimise the 1D WLS energy on one band.

    Solves the correction form u = f + A_s^-1 (f - A_s f), sharing one
    factorization across all channels of ``band_values``.
    """
    values = np.asarray(band_values, dtype=np.float64)
    if lam == 0:
        return values.copy()
    sys = assemble_subsystem(values, weights, lam, r)
    factors = rband_lu_factorize(sys)
    residual = smoothness_residual(values, weights[:, : sys.r], lam)
    correction = backward_substitute(factors, forward_substitute(factors, residual))
    return values + correction


def dense_solve_oracle(sys: BandedSystem) -> np.ndarray:
    """Dense LU solve of the same system, for cross-checking."""
    if sys.n > ORACLE_MAX_SIZE:
        raise OracleError(f"System size {sys.n} exceeds oracle limit {ORACLE_MAX_SIZE}")
    try:
        return np.linalg.solve(sys.to_dense(), sys.rhs)
    except np.linalg.LinAlgError as e:
        raise OracleError(f"Singular system: {e}") from e
