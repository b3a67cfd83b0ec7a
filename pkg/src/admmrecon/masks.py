"""k-space sampling masks: uniform random, Cartesian lines, pseudo-radial.

Every generator returns a boolean array in *unshifted* layout (DC at
``(0, 0)``), matching :mod:`admmrecon.transform`. Randomness comes from
numpy's PCG64 bit generator seeded with ``MaskSpec.seed``, so masks are
reproducible across platforms and numpy versions that keep PCG64's stream.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

MASK_KINDS = ("random", "cartesian", "radial")


@dataclass(frozen=True)
class MaskSpec:
    kind: str
    rows: int
    cols: int
    target_fraction: Optional[float] = None
    line_count: Optional[int] = None
    seed: int = 0
    include_dc: bool = True

    def __post_init__(self):
        if self.kind not in MASK_KINDS:
            raise ValueError(f"unknown mask kind {self.kind!r}; expected one of {MASK_KINDS}")
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"mask dimensions must be positive, got {self.rows}x{self.cols}")
        if self.kind == "radial":
            if self.line_count is None or self.target_fraction is not None:
                raise ValueError("radial masks take line_count, not target_fraction")
            if self.line_count < 1:
                raise ValueError(f"line_count must be >= 1, got {self.line_count}")
        else:
            if self.target_fraction is None or self.line_count is not None:
                raise ValueError(f"{self.kind} masks take target_fraction, not line_count")
            if not 0.0 < self.target_fraction <= 1.0:
                raise ValueError(f"target_fraction must be in (0, 1], got {self.target_fraction}")


def _rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def random_mask(spec):
    """Exactly ``round(fraction * rows * cols)`` samples, uniform without replacement.

    With ``include_dc`` the DC sample is forced on and counts toward the budget.
    """
    if spec.kind != "random":
        raise ValueError(f"expected a random MaskSpec, got kind {spec.kind!r}")
    n = spec.rows * spec.cols
    count = int(round(spec.target_fraction * n))
    if count < 1:
        raise ValueError(f"fraction {spec.target_fraction} selects no samples on a {spec.rows}x{spec.cols} grid")
    rng = _rng(spec.seed)
    flat = np.zeros(n, dtype=bool)
    if spec.include_dc:
        flat[0] = True
        flat[1 + rng.choice(n - 1, size=count - 1, replace=False)] = True
    else:
        flat[rng.choice(n, size=count, replace=False)] = True
    return flat.reshape(spec.rows, spec.cols)


def cartesian_mask(spec):
    """``round(fraction * rows)`` complete k-space rows chosen at random.

    Row 0 holds the DC coefficient and is forced when ``include_dc`` is set.
    """
    if spec.kind != "cartesian":
        raise ValueError(f"expected a cartesian MaskSpec, got kind {spec.kind!r}")
    n_lines = int(round(spec.target_fraction * spec.rows))
    if n_lines < 1:
        raise ValueError(f"fraction {spec.target_fraction} selects zero of {spec.rows} rows")
    rng = _rng(spec.seed)
    if spec.include_dc:
        chosen = np.concatenate(([0], 1 + rng.choice(spec.rows - 1, size=n_lines - 1, replace=False)))
    else:
        chosen = rng.choice(spec.rows, size=n_lines, replace=False)
    mask = np.zeros((spec.rows, spec.cols), dtype=bool)
    mask[chosen, :] = True
    return mask


def _round_from_centre(offset):
    # Half-integers round away from the centre so spokes stay point-symmetric.
    return np.sign(offset) * np.floor(np.abs(offset) + 0.5)


def radial_mask(spec):
    """Spokes through the k-space centre, snapped to the nearest grid point.

    Spoke ``k`` has angle ``k*pi/line_count`` and spans the whole grid in
    both directions, sampled every half pixel. Geometry is built around
    the centred point ``(rows//2, cols//2)`` and then moved to the
    unshifted layout, where that point is DC.
    """
    if spec.kind != "radial":
        raise ValueError(f"expected a radial MaskSpec, got kind {spec.kind!r}")
    rows, cols = spec.rows, spec.cols
    cr, cc = rows // 2, cols // 2
    reach = np.hypot(rows, cols) / 2.0 + 1.0
    t = np.arange(-np.ceil(2 * reach), np.ceil(2 * reach) + 1) * 0.5
    angles = np.arange(spec.line_count) * np.pi / spec.line_count
    dr = _round_from_centre(np.outer(np.sin(angles), t)).astype(np.int64) + cr
    dc = _round_from_centre(np.outer(np.cos(angles), t)).astype(np.int64) + cc
    keep = (dr >= 0) & (dr < rows) & (dc >= 0) & (dc < cols)
    centred = np.zeros((rows, cols), dtype=bool)
    centred[dr[keep], dc[keep]] = True
    centred[cr, cc] = True
    return np.fft.ifftshift(centred)


def make_mask(spec):
    return {"random": random_mask, "cartesian": cartesian_mask, "radial": radial_mask}[spec.kind](spec)


def achieved_fraction(mask):
    mask = np.asarray(mask)
    return float(np.count_nonzero(mask)) / mask.size


def radial_mask_for_fraction(rows, cols, fraction, tolerance=0.01, max_lines=None):
    """Bisect on the spoke count to land within ``tolerance`` of ``fraction``.

    ``tolerance`` is absolute: 0.01 accepts 0.15-0.17 for a 0.16 target.

    Returns ``(mask, line_count)``. Coverage is not strictly monotone in the
    spoke count, so after bisecting, nearby counts are scanned as well and
    the closest one wins.
    """
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    hi = max_lines or 4 * max(rows, cols)

    def build(n):
        m = radial_mask(MaskSpec("radial", rows, cols, line_count=n))
        return m, achieved_fraction(m)

    lo = 1
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        m, f = build(mid)
        if best is None or abs(f - fraction) < abs(best[2] - fraction):
            best = (m, mid, f)
        if abs(f - fraction) <= tolerance:
            break
        if f < fraction:
            lo = mid + 1
        else:
            hi = mid - 1
    if abs(best[2] - fraction) > tolerance:
        for n in range(max(1, best[1] - 8), best[1] + 9):
            m, f = build(n)
            if abs(f - fraction) < abs(best[2] - fraction):
                best = (m, n, f)
    return best[0], best[1]
