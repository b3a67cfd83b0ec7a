"""Synthetic test images."""

from dataclasses import dataclass

import numpy as np

# (intensity, semi-axis x, semi-axis y, centre x, centre y, rotation deg);
# Toft's contrast-enhanced variant of the 10-ellipse head phantom.
SHEPP_LOGAN_ELLIPSES = (
    (1.0, 0.69, 0.92, 0.0, 0.0, 0.0),
    (-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0),
    (-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0),
    (-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0),
    (0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0),
    (0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0),
    (0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0),
    (0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0),
    (0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0),
    (0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0),
)

PHANTOM_KINDS = ("shepp_logan", "blocks")


@dataclass(frozen=True)
class PhantomSpec:
    kind: str = "shepp_logan"
    rows: int = 128
    cols: int = 128
    contrast: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in PHANTOM_KINDS:
            raise ValueError(f"unknown phantom kind {self.kind!r}; expected one of {PHANTOM_KINDS}")
        if self.rows < 16 or self.cols < 16:
            raise ValueError(f"phantom must be at least 16x16, got {self.rows}x{self.cols}")


def shepp_logan(rows, cols=None):
    """Rasterise the head phantom on pixel centres; values lie in [0, 1].

    Row 0 is the top of the head (y = +1).
    """
    cols = rows if cols is None else cols
    x = (np.arange(cols) + 0.5) / cols * 2.0 - 1.0
    y = 1.0 - (np.arange(rows) + 0.5) / rows * 2.0
    xx, yy = np.meshgrid(x, y)
    img = np.zeros((rows, cols))
    for value, a, b, x0, y0, phi in SHEPP_LOGAN_ELLIPSES:
        phi = np.deg2rad(phi)
        c, s = np.cos(phi), np.sin(phi)
        u = (xx - x0) * c + (yy - y0) * s
        v = -(xx - x0) * s + (yy - y0) * c
        img[(u / a) ** 2 + (v / b) ** 2 <= 1.0] += value
    return np.clip(img, 0.0, 1.0)


def blocks(rows, cols, seed=0, n_blocks=8):
    """Piecewise-constant image of overlapping random rectangles."""
    rng = np.random.Generator(np.random.PCG64(seed))
    img = np.zeros((rows, cols))
    for _ in range(n_blocks):
        r0, r1 = np.sort(rng.integers(0, rows, size=2))
        c0, c1 = np.sort(rng.integers(0, cols, size=2))
        img[r0 : r1 + 1, c0 : c1 + 1] = rng.integers(1, 11) / 10.0
    return img


def make_phantom(spec):
    """Build the phantom described by ``spec`` as a complex128 image."""
    if spec.kind == "shepp_logan":
        img = shepp_logan(spec.rows, spec.cols)
    else:
        img = blocks(spec.rows, spec.cols, seed=spec.seed)
    return (spec.contrast * img).astype(np.complex128)
