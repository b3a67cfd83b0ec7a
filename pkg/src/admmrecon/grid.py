"""Image and mask containers plus the elementwise algebra shared by the solver.

Images (both image-domain and k-space) are plain 2D ``complex128`` numpy
arrays; masks are 2D boolean arrays. The ``check_*`` helpers play the role
of scikit-learn's ``check_array``: they coerce, validate and return a fresh
array so callers never alias user input.
"""

import math

import numpy as np


class ShapeMismatchError(ValueError):
    """Raised when two grids that must align have different shapes."""

    def __init__(self, first, second, what=("image", "mask")):
        self.shapes = (tuple(first), tuple(second))
        super().__init__(
            f"{what[0]} shape {tuple(first)} does not match {what[1]} shape {tuple(second)}"
        )


def check_image(img, name="image"):
    """Validate an image and return it as a C-contiguous complex128 array.

    Real input is promoted with a zero imaginary part.

    Raises
    ------
    ValueError
        If the input is not 2D, is empty, or holds NaN/Inf entries.
    """
    arr = np.array(img, dtype=np.complex128, order="C", copy=True)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_mask(mask, shape=None):
    """Validate a sampling mask and return it as a boolean array.

    Accepts booleans or any numeric array whose entries are exactly 0 or 1.
    When ``shape`` is given the mask must match it.
    """
    arr = np.asarray(mask)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"mask must be a non-empty 2D array, got shape {arr.shape}")
    if arr.dtype != np.bool_:
        if not np.all((arr == 0) | (arr == 1)):
            raise ValueError("mask entries must be 0 or 1")
        arr = arr != 0
    else:
        arr = arr.copy()
    if shape is not None and arr.shape != tuple(shape):
        raise ShapeMismatchError(shape, arr.shape)
    return arr


def check_same_shape(a, b, names=("a", "b")):
    if np.shape(a) != np.shape(b):
        raise ShapeMismatchError(np.shape(a), np.shape(b), what=names)


def sample_count(mask):
    """Number of acquired k-space locations."""
    return int(np.count_nonzero(mask))


def mask_apply(img, mask):
    """Zero every entry of ``img`` outside the mask (the ``P .* X`` product)."""
    img = check_image(img)
    mask = check_mask(mask, img.shape)
    return np.where(mask, img, 0)


def l1_norm(img):
    """Sum of complex moduli, accumulated with exactly rounded summation.

    ``math.fsum`` makes the result independent of array layout and
    reduction order.
    """
    return math.fsum(np.abs(np.asarray(img)).ravel().tolist())


def masked_frobenius_distance(a, b, mask):
    """Frobenius norm of ``a - b`` restricted to the sampled locations."""
    check_same_shape(a, b)
    mask = check_mask(mask, np.shape(a))
    diff = (np.asarray(a) - np.asarray(b))[mask]
    return float(np.sqrt(np.sum(diff.real**2 + diff.imag**2)))
