"""Reconstruction quality and sparsity diagnostics."""

from dataclasses import dataclass

import numpy as np

from .grid import check_same_shape, l1_norm

NEAR_ZERO_RATIO = 0.01


def rmse(reference, test):
    """Root mean square difference of the magnitude images."""
    check_same_shape(reference, test, names=("reference", "test"))
    diff = np.abs(np.asarray(reference)) - np.abs(np.asarray(test))
    return float(np.sqrt(np.mean(diff**2)))


def psnr(reference, test):
    """Peak signal-to-noise ratio in dB, computed on magnitude images.

    The peak is the largest magnitude of ``reference`` (not a fixed 255),
    so the value is invariant to a common positive rescaling of both
    images. Returns ``inf`` when the images agree exactly.

    Raises
    ------
    ValueError
        If ``reference`` is identically zero, or the shapes differ.
    """
    check_same_shape(reference, test, names=("reference", "test"))
    peak = float(np.max(np.abs(np.asarray(reference))))
    if peak == 0.0:
        raise ValueError("reference image is all zero; PSNR peak is undefined")
    err = rmse(reference, test)
    if err == 0.0:
        return float("inf")
    return float(20.0 * np.log10(peak / err))


@dataclass(frozen=True)
class SparsityReport:
    """Magnitude histogram summary of one image.

    ``bin_edges`` has ``len(counts) + 1`` entries spanning ``[0, peak]``.
    For an all-zero image the peak is 0, every pixel lands in bin 0 and
    ``near_zero_fraction`` is 1.
    """

    bin_edges: np.ndarray
    counts: np.ndarray
    peak: float
    l1_value: float
    near_zero_fraction: float

    @property
    def histogram_bins(self):
        return list(zip(self.bin_edges[:-1].tolist(), self.counts.tolist()))


def sparsity_report(img, bins=64):
    if int(bins) < 2:
        raise ValueError(f"bins must be >= 2, got {bins}")
    bins = int(bins)
    mag = np.abs(np.asarray(img)).ravel()
    peak = float(mag.max()) if mag.size else 0.0
    if peak == 0.0:
        counts = np.zeros(bins, dtype=np.int64)
        counts[0] = mag.size
        edges = np.zeros(bins + 1)
        return SparsityReport(edges, counts, 0.0, 0.0, 1.0)
    counts, edges = np.histogram(mag, bins=bins, range=(0.0, peak))
    near_zero = float(np.count_nonzero(mag < NEAR_ZERO_RATIO * peak)) / mag.size
    return SparsityReport(edges, counts.astype(np.int64), peak, l1_norm(mag), near_zero)
