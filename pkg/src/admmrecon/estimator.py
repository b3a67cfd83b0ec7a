"""scikit-learn compatible front-end to :func:`admmrecon.solver.reconstruct`."""

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .grid import check_image, check_mask
from .metrics import psnr
from .solver import SolverConfig, reconstruct, zero_filled


class ADMMReconstructor(BaseEstimator):
    """Sparsity-driven reconstruction from undersampled k-space.

    Hyperparameters follow scikit-learn conventions, so the estimator
    supports ``get_params``/``set_params``/``clone`` and can be swept with
    the usual tooling.

    Parameters
    ----------
    mu1 : float, default=10.0
        Penalty on agreement with the measured samples.
    mu2 : float, default=20.0
        Penalty coupling the image and k-space iterates; the soft-threshold
        level is ``1/mu2``.
    max_iters : int, default=500
    tol : float, default=1e-6
        Relative residual stopping threshold; 0 runs all ``max_iters``.
    record_trace : bool, default=True

    Attributes
    ----------
    image_ : ndarray of complex, shape (rows, cols)
    report_ : ReconReport
    n_iter_ : int
    zero_filled_ : ndarray of complex
        Inverse transform of the measured samples, the usual baseline.

    Examples
    --------
    >>> import numpy as np
    >>> from admmrecon import ADMMReconstructor, TransformPlan
    >>> x = np.zeros((16, 16)); x[4:8, 4:8] = 1.0
    >>> y = TransformPlan(16, 16).forward(x)
    >>> est = ADMMReconstructor(max_iters=50).fit(y, np.ones((16, 16), bool))
    >>> bool(np.allclose(est.image_, x, atol=1e-6))
    True
    """

    def __init__(self, mu1=10.0, mu2=20.0, max_iters=500, tol=1e-6, record_trace=True):
        self.mu1 = mu1
        self.mu2 = mu2
        self.max_iters = max_iters
        self.tol = tol
        self.record_trace = record_trace

    def _config(self):
        return SolverConfig(
            mu1=float(self.mu1),
            mu2=float(self.mu2),
            max_iters=int(self.max_iters),
            tol=float(self.tol),
            record_trace=bool(self.record_trace),
        )

    def fit(self, kspace, mask, reference=None):
        """Reconstruct from ``kspace`` sampled on ``mask``.

        ``reference``, when given, is only used to fill the PSNR trace.
        """
        cfg = self._config()
        kspace = check_image(kspace, "k-space")
        mask = check_mask(mask, kspace.shape)
        self.zero_filled_ = zero_filled(kspace, mask)
        self.image_, self.report_ = reconstruct(kspace, mask, cfg, reference=reference)
        self.n_iter_ = self.report_.n_iter
        return self

    def fit_transform(self, kspace, mask, reference=None):
        return self.fit(kspace, mask, reference=reference).image_

    def score(self, reference):
        """PSNR in dB of the fitted image against ``reference``."""
        if not hasattr(self, "image_"):
            raise NotFittedError("ADMMReconstructor is not fitted yet; call fit first")
        return psnr(reference, self.image_)
