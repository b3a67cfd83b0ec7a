"""Compressed-sensing MR image reconstruction from partial k-space by ADMM."""

from .estimator import ADMMReconstructor
from .grid import (
    ShapeMismatchError,
    check_image,
    check_mask,
    l1_norm,
    mask_apply,
    masked_frobenius_distance,
    sample_count,
)
from .masks import (
    MaskSpec,
    achieved_fraction,
    cartesian_mask,
    make_mask,
    radial_mask,
    radial_mask_for_fraction,
    random_mask,
)
from .metrics import SparsityReport, psnr, rmse, sparsity_report
from .phantom import PhantomSpec, make_phantom
from .solver import (
    DivergenceError,
    ReconReport,
    SolverConfig,
    SolverState,
    reconstruct,
    soft_threshold,
    zero_filled,
)
from .transform import TransformPlan

__version__ = "0.1.0"

__all__ = [
    "ADMMReconstructor",
    "DivergenceError",
    "MaskSpec",
    "PhantomSpec",
    "ReconReport",
    "ShapeMismatchError",
    "SolverConfig",
    "SolverState",
    "SparsityReport",
    "TransformPlan",
    "achieved_fraction",
    "cartesian_mask",
    "check_image",
    "check_mask",
    "l1_norm",
    "make_mask",
    "make_phantom",
    "mask_apply",
    "masked_frobenius_distance",
    "psnr",
    "radial_mask",
    "radial_mask_for_fraction",
    "random_mask",
    "reconstruct",
    "rmse",
    "sample_count",
    "soft_threshold",
    "sparsity_report",
    "zero_filled",
]
