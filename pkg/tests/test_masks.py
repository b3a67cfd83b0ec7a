import numpy as np
import pytest

from admmrecon.masks import (
    MaskSpec,
    achieved_fraction,
    cartesian_mask,
    make_mask,
    radial_mask,
    radial_mask_for_fraction,
    random_mask,
)


def test_random_full_mask():
    assert random_mask(MaskSpec("random", 16, 12, target_fraction=1.0)).all()


def test_random_exact_count():
    mask = random_mask(MaskSpec("random", 256, 256, target_fraction=0.25, seed=3))
    assert mask.sum() == 16384
    assert mask[0, 0]


def test_random_without_dc_keeps_count():
    masks = [random_mask(MaskSpec("random", 32, 32, target_fraction=0.1, seed=s, include_dc=False)) for s in range(20)]
    assert all(m.sum() == round(0.1 * 1024) for m in masks)
    assert not all(m[0, 0] for m in masks)


@pytest.mark.parametrize("kind", ["random", "cartesian"])
def test_seeded_determinism(kind):
    a = make_mask(MaskSpec(kind, 64, 48, target_fraction=0.3, seed=11))
    b = make_mask(MaskSpec(kind, 64, 48, target_fraction=0.3, seed=11))
    c = make_mask(MaskSpec(kind, 64, 48, target_fraction=0.3, seed=12))
    assert a.tobytes() == b.tobytes()
    assert np.any(a != c)


def test_cartesian_rows():
    mask = cartesian_mask(MaskSpec("cartesian", 128, 128, target_fraction=0.25, seed=5))
    rows = mask.any(axis=1)
    assert rows.sum() == 32 and mask.sum() == 4096
    assert np.all(mask[rows].all(axis=1))
    assert rows[0]
    assert cartesian_mask(MaskSpec("cartesian", 10, 7, target_fraction=1.0)).all()


def test_cartesian_too_few_rows():
    with pytest.raises(ValueError, match="zero"):
        cartesian_mask(MaskSpec("cartesian", 8, 8, target_fraction=0.01))


@pytest.mark.parametrize(
    "kwargs",
    [
        {"kind": "spiral", "target_fraction": 0.5},
        {"kind": "random", "target_fraction": 0.0},
        {"kind": "random", "target_fraction": 1.5},
        {"kind": "random", "line_count": 4},
        {"kind": "radial", "target_fraction": 0.2},
        {"kind": "radial", "line_count": 0},
    ],
)
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        MaskSpec(rows=8, cols=8, **kwargs)


def test_radial_single_line():
    mask = radial_mask(MaskSpec("radial", 8, 8, line_count=1))
    centred = np.fft.fftshift(mask)
    expected = np.zeros((8, 8), bool)
    expected[4, :] = True
    np.testing.assert_array_equal(centred, expected)
    assert mask[0, 0]


def test_radial_two_lines_is_a_cross():
    centred = np.fft.fftshift(radial_mask(MaskSpec("radial", 9, 9, line_count=2)))
    expected = np.zeros((9, 9), bool)
    expected[4, :] = True
    expected[:, 4] = True
    np.testing.assert_array_equal(centred, expected)


def test_radial_coverage_grows_with_nested_angle_sets():
    # k*pi/L is a subset of k*pi/(2L), so doubling L can only add points.
    fractions = [achieved_fraction(radial_mask(MaskSpec("radial", 64, 64, line_count=n))) for n in (1, 2, 4, 8, 16, 32, 64, 128, 256)]
    assert all(b >= a for a, b in zip(fractions, fractions[1:]))
    assert fractions[-1] == 1.0


def test_radial_point_symmetry():
    mask, _ = radial_mask_for_fraction(512, 512, 0.16)
    centred = np.fft.fftshift(mask)
    r, c = np.nonzero(centred)
    rr, cc = 512 - r, 512 - c
    inside = (rr < 512) & (cc < 512)
    mirrored = np.zeros(r.shape, bool)
    mirrored[inside] = centred[rr[inside], cc[inside]]
    assert mirrored.mean() >= 0.99


def test_radial_bisection_hits_target():
    mask, lines = radial_mask_for_fraction(512, 512, 0.16)
    assert abs(achieved_fraction(mask) - 0.16) <= 0.01
    direct = radial_mask(MaskSpec("radial", 512, 512, line_count=lines))
    np.testing.assert_array_equal(mask, direct)
    tight, _ = radial_mask_for_fraction(512, 512, 0.16, tolerance=1e-4)
    assert abs(achieved_fraction(tight) - 0.16) <= abs(achieved_fraction(mask) - 0.16)


def test_radial_odd_and_rectangular_grid():
    mask = radial_mask(MaskSpec("radial", 15, 22, line_count=6))
    assert mask.shape == (15, 22) and mask[0, 0]
    assert 0 < achieved_fraction(mask) < 1


def test_achieved_fraction():
    assert achieved_fraction(np.ones((4, 4), bool)) == 1.0
    assert achieved_fraction(np.zeros((4, 4), bool)) == 0.0
    m = np.zeros(65536, bool)
    m[:16384] = True
    assert achieved_fraction(m.reshape(256, 256)) == 0.25
