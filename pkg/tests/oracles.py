"""Reference computations that deliberately avoid the code paths under test."""

import numpy as np


def dft_matrix(n):
    """Dense unitary DFT matrix; phases reduced mod n in exact integer arithmetic."""
    jk = np.outer(np.arange(n), np.arange(n)) % n
    return np.exp(-2j * np.pi * jk / n) / np.sqrt(n)


def brute_dft2(x):
    """Unitary 2D DFT by the explicit quadruple sum over pixels."""
    rows, cols = x.shape
    out = np.zeros((rows, cols), dtype=complex)
    m = np.arange(rows)[:, None]
    n = np.arange(cols)[None, :]
    for k in range(rows):
        for l in range(cols):
            phase = ((k * m) % rows) / rows + ((l * n) % cols) / cols
            out[k, l] = np.sum(x * np.exp(-2j * np.pi * phase))
    return out / np.sqrt(rows * cols)


def brute_idft2(y):
    return np.conj(brute_dft2(np.conj(y)))


def dense_forward(x):
    """The D X D^T product: DFT along both axes with dense matrices."""
    return dft_matrix(x.shape[0]) @ x @ dft_matrix(x.shape[1]).T


def dense_inverse(y):
    return dft_matrix(y.shape[0]).conj().T @ y @ dft_matrix(y.shape[1]).conj()


def kahan_sum(values):
    total = 0.0
    comp = 0.0
    for v in values:
        t = total + (v - comp)
        comp = (t - total) - (v - comp)
        total = t
    return total


def prox_objective(x, a, mu):
    return np.abs(x) + 0.5 * mu * np.abs(x - a) ** 2


def grid_search_prox(a, mu, points=41, levels=18):
    """Minimise |x| + (mu/2)|x - a|^2 over the complex plane, many problems at once.

    Coarse-to-fine grid search: each level evaluates a ``points x points``
    grid around the current best and zooms in by a factor 5. The origin,
    where the objective has its kink, is added as a candidate at every
    level; near-flat slopes there would otherwise let the zoom drift away.
    """
    a = np.asarray(a, dtype=complex).ravel()
    mu = np.broadcast_to(np.asarray(mu, dtype=float), a.shape).ravel()
    centre = a / 2
    half = np.abs(a) / 2 + 1.0
    offsets = np.linspace(-1.0, 1.0, points)
    grid = offsets[:, None] + 1j * offsets[None, :]
    for _ in range(levels):
        cand = (centre[:, None, None] + half[:, None, None] * grid[None]).reshape(len(a), -1)
        cand = np.concatenate([np.zeros((len(a), 1), complex), cand], axis=1)
        f = prox_objective(cand, a[:, None], mu[:, None])
        best = np.argmin(f, axis=1)
        centre = cand[np.arange(len(a)), best]
        half = half * 4.0 * 2.0 / (points - 1)
    return centre


def y_stationarity_residual(y, y0, lam1, lam2, z, mask, mu1, mu2):
    """Gradient of the k-space subproblem, built with the dense DFT."""
    a = dense_forward(z - lam2 / mu2)
    p = mask.astype(float)
    return mu1 * p * (y - y0 - lam1 / mu1) + mu2 * (y - a)


def y_subproblem_objective(y, y0, lam1, lam2, z, mask, mu1, mu2):
    data = np.where(mask, y - y0 - lam1 / mu1, 0)
    coupling = z - dense_inverse(y) - lam2 / mu2
    return 0.5 * mu1 * np.sum(np.abs(data) ** 2) + 0.5 * mu2 * np.sum(np.abs(coupling) ** 2)


def dense_admm_iteration(y, z, lam1, lam2, y0, mask, mu1, mu2):
    """One sweep written with dense D products instead of FFTs."""
    d_r = dft_matrix(y.shape[0])
    d_c = dft_matrix(y.shape[1])
    x = d_r.conj().T @ y @ d_c.conj()
    v = x + lam2 / mu2
    mag = np.abs(v)
    z = np.zeros_like(v)
    keep = mag > 1.0 / mu2
    z[keep] = (mag[keep] - 1.0 / mu2) * v[keep] / mag[keep]
    a = d_r @ (z - lam2 / mu2) @ d_c.T
    b = (mu1 * (y0 + lam1 / mu1) + mu2 * a) / (mu1 + mu2)
    y = np.where(mask, b, a)
    lam1 = np.where(mask, lam1 - mu1 * (y - y0), 0)
    lam2 = lam2 - mu2 * (z - d_r.conj().T @ y @ d_c.conj())
    return y, z, lam1, lam2


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
