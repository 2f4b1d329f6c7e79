"""Compiled loops of the r-band LU factorization and substitutions."""

from numba import njit

PIVOT_FLOOR = 1e-300


@njit(cache=True, nogil=True)
def factorize_kernel(diag, upper, lower, alpha, beta, gamma):
    """Fill alpha, beta, gamma in place.

    Returns -1 on success, otherwise the index of the first pivot that is not
    above PIVOT_FLOOR (alpha holds that pivot).
    """
    s = diag.shape[0]
    r = upper.shape[1]
    for k in range(s):
        pivot = diag[k]
        for t in range(1, min(r, k) + 1):
            pivot -= gamma[k - t, t - 1] * beta[k - t, t - 1]
        alpha[k] = pivot
        # NaN fails the comparison too
        if not pivot > PIVOT_FLOOR:
            return k
        for i in range(1, min(r, s - 1 - k) + 1):
            g = lower[k, i - 1]
            b = upper[k, i - 1]
            for t in range(1, min(k, r - i) + 1):
                g -= gamma[k - t, i + t - 1] * beta[k - t, t - 1]
                b -= beta[k - t, i + t - 1] * gamma[k - t, t - 1]
            gamma[k, i - 1] = g
            beta[k, i - 1] = b / pivot
    return -1


@njit(cache=True, nogil=True)
def forward_kernel(alpha, gamma, f, y):
    s = alpha.shape[0]
    r = gamma.shape[1]
    for k in range(s):
        acc = f[k]
        for t in range(1, min(r, k) + 1):
            acc -= gamma[k - t, t - 1] * y[k - t]
        y[k] = acc / alpha[k]


@njit(cache=True, nogil=True)
def backward_kernel(beta, y, u):
    s = y.shape[0]
    r = beta.shape[1]
    for k in range(s - 1, -1, -1):
        acc = y[k]
        for t in range(1, min(r, s - 1 - k) + 1):
            acc -= beta[k, t - 1] * u[k + t]
        u[k] = acc
