"""Unitary 2D discrete Fourier transform.

Both directions carry a ``1/sqrt(rows*cols)`` factor so that the transform
matrix is orthonormal and Frobenius norms are preserved. The DC coefficient
lives at index ``(0, 0)``; no shifting happens here.
"""

import numpy as np

from .grid import ShapeMismatchError


class TransformPlan:
    """Fixed-size unitary 2D DFT.

    Parameters
    ----------
    rows, cols : int
        Grid size the plan accepts. Any positive size works; pocketfft
        handles non-power-of-two lengths natively.
    """

    def __init__(self, rows, cols=None):
        cols = rows if cols is None else cols
        if int(rows) < 1 or int(cols) < 1:
            raise ValueError(f"plan dimensions must be positive, got {rows}x{cols}")
        self._shape = (int(rows), int(cols))

    @classmethod
    def for_image(cls, img):
        return cls(*np.shape(img))

    @property
    def shape(self):
        return self._shape

    def __repr__(self):
        return f"TransformPlan(rows={self._shape[0]}, cols={self._shape[1]})"

    def _check(self, x):
        x = np.asarray(x)
        if x.shape != self._shape:
            raise ShapeMismatchError(self._shape, x.shape, what=("plan", "input"))
        return x

    def forward(self, x):
        """Image domain to k-space."""
        return np.fft.fft2(self._check(x), norm="ortho")

    def inverse(self, y):
        """k-space to image domain; exact inverse and adjoint of :meth:`forward`."""
        return np.fft.ifft2(self._check(y), norm="ortho")


def forward(plan, x):
    return plan.forward(x)


def inverse(plan, y):
    return plan.inverse(y)
