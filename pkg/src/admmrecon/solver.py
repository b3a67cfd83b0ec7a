"""ADMM reconstruction of an image from partial k-space samples.

Solves::

    min_Y  ||IFFT(Y)||_1   subject to   Y[mask] = Y0[mask]

by splitting off ``Z = IFFT(Y)`` and alternating

1. ``Z = soft(IFFT(Y) + L2/mu2, 1/mu2)``
2. ``A = FFT(Z - L2/mu2)``;  ``Y = A`` off the mask and
   ``Y = (mu1*Y0 + L1 + mu2*A) / (mu1 + mu2)`` on it
3. ``L1 -= mu1*(Y - Y0)`` on the mask, ``L2 -= mu2*(Z - IFFT(Y))``

All transforms are unitary, so the k-space data must be in the same
convention as :class:`~admmrecon.transform.TransformPlan`.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .grid import check_image, check_mask, l1_norm, mask_apply, masked_frobenius_distance
from .metrics import psnr
from .transform import TransformPlan

logger = logging.getLogger(__name__)


class DivergenceError(RuntimeError):
    """An iterate became non-finite."""

    def __init__(self, iteration):
        self.iteration = iteration
        super().__init__(f"non-finite values in ADMM iterate at iteration {iteration}")


@dataclass(frozen=True)
class SolverConfig:
    """Penalty weights and stopping rule.

    ``mu1`` weighs data consistency and ``mu2`` the ``Z = IFFT(Y)`` coupling;
    ``1/mu2`` is the soft-threshold level. Iteration stops once both
    residuals, relative to ``||Y0||_F``, drop below ``tol``, or after
    ``max_iters`` iterations.
    """

    mu1: float = 10.0
    mu2: float = 20.0
    max_iters: int = 500
    tol: float = 1e-6
    record_trace: bool = True

    def __post_init__(self):
        if not self.mu1 > 0:
            raise ValueError(f"mu1 must be positive, got {self.mu1}")
        if not self.mu2 > 0:
            raise ValueError(f"mu2 must be positive, got {self.mu2}")
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise ValueError(f"max_iters must be an integer >= 1, got {self.max_iters}")
        if not self.tol >= 0:
            raise ValueError(f"tol must be nonnegative, got {self.tol}")


@dataclass
class SolverState:
    y: np.ndarray
    z: np.ndarray
    lam1: np.ndarray
    lam2: np.ndarray
    iter: int = 0

    @classmethod
    def zero_filled(cls, y0):
        """Start from the zero-filled k-space with both multipliers at zero."""
        y0 = np.asarray(y0, dtype=np.complex128)
        zeros = np.zeros_like(y0)
        return cls(y=y0.copy(), z=zeros.copy(), lam1=zeros.copy(), lam2=zeros.copy())

    def is_finite(self):
        return all(np.all(np.isfinite(a)) for a in (self.y, self.z, self.lam1, self.lam2))


@dataclass(frozen=True)
class IterationRecord:
    iter: int
    objective: float
    r1: float
    r2: float
    psnr: Optional[float]
    seconds: float


@dataclass
class ReconReport:
    image: np.ndarray
    termination_reason: str
    n_iter: int
    records: List[IterationRecord] = field(default_factory=list)
    initial_psnr: Optional[float] = None
    final_psnr: Optional[float] = None

    def column(self, name):
        """One trace column as a float array (``nan`` for missing PSNR)."""
        return np.array(
            [np.nan if getattr(r, name) is None else getattr(r, name) for r in self.records],
            dtype=float,
        )


def soft_threshold(a, lam):
    """Proximal map of ``lam * |x|``: shrink ``a`` towards zero by ``lam``.

    Complex entries keep their phase, ``(a/|a|) * max(|a| - lam, 0)``, which
    is the minimiser of ``|x| + |x - a|**2 / (2*lam)`` over the complex plane.
    For real input this is ``sign(a) * max(|a| - lam, 0)``. Works
    elementwise on arrays.
    """
    if not lam > 0:
        raise ValueError(f"threshold must be positive, got {lam}")
    a = np.asarray(a)
    mag = np.abs(a)
    shrink = np.maximum(mag - lam, 0.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(shrink > 0, shrink * (a / np.where(mag > 0, mag, 1.0)), 0)
    out = out.astype(np.result_type(a, np.float64), copy=False)
    return out[()] if out.ndim == 0 else out


def update_z(state, plan, cfg):
    return soft_threshold(plan.inverse(state.y) + state.lam2 / cfg.mu2, 1.0 / cfg.mu2)


def update_y(state, y0, mask, plan, cfg):
    """Closed-form k-space update given the current ``Z`` and multipliers."""
    a = plan.forward(state.z - state.lam2 / cfg.mu2)
    b = (cfg.mu1 * (y0 + state.lam1 / cfg.mu1) + cfg.mu2 * a) / (cfg.mu1 + cfg.mu2)
    return np.where(mask, b, a)


def update_duals(state, y0, mask, plan, cfg):
    lam1 = np.where(mask, state.lam1 - cfg.mu1 * (state.y - y0), 0)
    lam2 = state.lam2 - cfg.mu2 * (state.z - plan.inverse(state.y))
    return lam1, lam2


def admm_iteration(state, y0, mask, plan, cfg):
    """Advance ``state`` in place by one full ADMM sweep."""
    state.z = update_z(state, plan, cfg)
    state.y = update_y(state, y0, mask, plan, cfg)
    state.lam1, state.lam2 = update_duals(state, y0, mask, plan, cfg)
    state.iter += 1
    return state


def zero_filled(y0, mask):
    """Inverse transform of the measured samples with the rest set to zero."""
    y0 = mask_apply(y0, mask)
    return TransformPlan.for_image(y0).inverse(y0)


def reconstruct(y0_masked, mask, cfg=None, reference=None):
    """Run ADMM from the zero-filled start and return ``(image, report)``.

    Parameters
    ----------
    y0_masked : array_like, complex, shape (rows, cols)
        Measured k-space in the unitary convention. Entries off the mask
        are ignored.
    mask : array_like of bool, shape (rows, cols)
        Sampled locations, DC at ``(0, 0)``.
    cfg : SolverConfig, optional
    reference : array_like, optional
        Ground-truth image; enables the per-iteration PSNR trace.

    Raises
    ------
    DivergenceError
        If any iterate stops being finite.
    """
    cfg = SolverConfig() if cfg is None else cfg
    y0 = check_image(y0_masked, "k-space")
    mask = check_mask(mask, y0.shape)
    y0 = np.where(mask, y0, 0)
    if reference is not None:
        reference = check_image(reference, "reference")
        if reference.shape != y0.shape:
            raise ValueError(f"reference shape {reference.shape} does not match {y0.shape}")

    plan = TransformPlan(*y0.shape)
    state = SolverState.zero_filled(y0)
    scale = float(np.linalg.norm(y0)) or 1.0

    initial_psnr = None
    if reference is not None:
        initial_psnr = psnr(reference, plan.inverse(y0))

    records = []
    reason = "max_iters"
    start = time.perf_counter()
    while state.iter < cfg.max_iters:
        with np.errstate(over="ignore", invalid="ignore"):
            admm_iteration(state, y0, mask, plan, cfg)
        if not state.is_finite():
            raise DivergenceError(state.iter)
        x = plan.inverse(state.y)
        r1 = masked_frobenius_distance(state.y, y0, mask)
        r2 = float(np.linalg.norm(state.z - x))
        if cfg.record_trace:
            records.append(
                IterationRecord(
                    iter=state.iter,
                    objective=l1_norm(state.z),
                    r1=r1,
                    r2=r2,
                    psnr=None if reference is None else psnr(reference, x),
                    seconds=time.perf_counter() - start,
                )
            )
        if r1 < cfg.tol * scale and r2 < cfg.tol * scale:
            reason = "converged"
            break

    if not mask.any():
        reason = "unconstrained"
    image = plan.inverse(state.y)
    final_psnr = None if reference is None else psnr(reference, image)
    logger.debug("ADMM stopped after %d iterations (%s)", state.iter, reason)
    report = ReconReport(
        image=image,
        termination_reason=reason,
        n_iter=state.iter,
        records=records,
        initial_psnr=initial_psnr,
        final_psnr=final_psnr,
    )
    return image, report
