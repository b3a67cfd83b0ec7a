"""Command line front-end.

Subcommands::

    admmrecon phantom      --kind shepp_logan --size 128 -o phantom.png
    admmrecon mask         --kind random --size 128 --fraction 0.3 --seed 7 -o mask.png
    admmrecon reconstruct  --image phantom.png --mask mask.png -o recon.png
    admmrecon eval         reference.png recon.png
    admmrecon sparsity     phantom.png --mask mask.png -o hist.csv

Exit codes: 0 success, 1 bad input or I/O failure, 2 usage error,
3 numerical divergence.
"""

import argparse
import csv
import datetime
import json
import logging
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import __version__
from .grid import ShapeMismatchError, mask_apply
from .io import (
    ImageFormatError,
    atomic_write,
    load_image,
    load_kspace,
    load_mask,
    save_image,
    save_mask,
    save_trace,
)
from .masks import MASK_KINDS, MaskSpec, achieved_fraction, make_mask, radial_mask_for_fraction
from .metrics import psnr, sparsity_report
from .phantom import PHANTOM_KINDS, PhantomSpec, make_phantom
from .solver import DivergenceError, SolverConfig, reconstruct, zero_filled
from .transform import TransformPlan

logger = logging.getLogger("admmrecon")

EXIT_OK, EXIT_INPUT, EXIT_USAGE, EXIT_DIVERGED = 0, 1, 2, 3


class InputError(Exception):
    """Bad input file or inconsistent inputs; reported with exit code 1."""


def _fraction(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError(f"fraction must be in (0, 1], got {value}")
    return value


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {value}")
    return value


def _nonnegative_float(text):
    value = float(text)
    if not value >= 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _existing(path):
    path = Path(path)
    if not path.is_file():
        raise InputError(f"no such file: {path}")
    return path


def _sibling(path, suffix):
    path = Path(path)
    return path.with_name(path.stem + suffix)


def _write_manifest(args, outputs, extra, started):
    path = args.manifest_out
    if path is None:
        if not outputs:
            return
        path = _sibling(outputs[0], ".manifest.json")
    manifest = {
        "version": __version__,
        "command": args.command,
        "argv": args.argv,
        "seed": args.seed,
        "outputs": [str(p) for p in outputs],
        "started": started,
        "finished": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        **extra,
    }
    with atomic_write(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    logger.info("wrote manifest %s", path)


def _resolve_shape(args):
    return args.size, args.cols if args.cols is not None else args.size


def cmd_phantom(args, started):
    rows, cols = _resolve_shape(args)
    spec = PhantomSpec(kind=args.kind, rows=rows, cols=cols, contrast=args.contrast, seed=args.seed)
    save_image(make_phantom(spec), args.output, bit_depth=args.bit_depth)
    logger.info("wrote phantom %s", args.output)
    _write_manifest(args, [args.output], {"phantom": asdict(spec), "bit_depth": args.bit_depth}, started)
    return EXIT_OK


def cmd_mask(args, started):
    rows, cols = _resolve_shape(args)
    line_count = args.lines
    if args.kind == "radial":
        if (args.lines is None) == (args.fraction is None):
            raise argparse.ArgumentTypeError("radial masks need exactly one of --lines or --fraction")
        if args.lines is None:
            _, line_count = radial_mask_for_fraction(rows, cols, args.fraction)
        spec = MaskSpec("radial", rows, cols, line_count=line_count, seed=args.seed, include_dc=True)
    else:
        if args.fraction is None or args.lines is not None:
            raise argparse.ArgumentTypeError(f"{args.kind} masks need --fraction (and no --lines)")
        spec = MaskSpec(
            args.kind, rows, cols, target_fraction=args.fraction, seed=args.seed, include_dc=not args.no_dc
        )
    mask = make_mask(spec)
    save_mask(mask, args.output)
    frac = achieved_fraction(mask)
    print(f"achieved fraction {frac:.6f} ({int(mask.sum())} of {mask.size} samples)")
    _write_manifest(
        args, [args.output], {"mask": asdict(spec), "achieved_fraction": frac}, started
    )
    return EXIT_OK


def cmd_reconstruct(args, started):
    mask = load_mask(_existing(args.mask))
    plan = TransformPlan(*mask.shape)
    reference = None
    if args.image is not None:
        image = load_image(_existing(args.image))
        if image.shape != mask.shape:
            raise ShapeMismatchError(image.shape, mask.shape)
        kspace = mask_apply(plan.forward(image), mask)
        reference = image
    else:
        kspace = load_kspace(_existing(args.kspace))
        if kspace.shape != mask.shape:
            raise ShapeMismatchError(kspace.shape, mask.shape, what=("k-space", "mask"))
    if args.reference is not None:
        reference = load_image(_existing(args.reference))
        if reference.shape != mask.shape:
            raise ShapeMismatchError(reference.shape, mask.shape, what=("reference", "mask"))

    cfg = SolverConfig(mu1=args.mu1, mu2=args.mu2, max_iters=args.max_iters, tol=args.tol)
    image_out, report = reconstruct(kspace, mask, cfg, reference=reference)

    out = Path(args.output)
    zf_out = Path(args.zero_filled_out or _sibling(out, "_zerofilled" + out.suffix))
    trace_out = Path(args.trace_out or _sibling(out, "_trace.csv"))
    save_image(image_out, out, bit_depth=args.bit_depth)
    save_image(zero_filled(kspace, mask), zf_out, bit_depth=args.bit_depth)
    save_trace(report, trace_out)

    print(f"iterations {report.n_iter} ({report.termination_reason})")
    if reference is not None:
        print(f"PSNR(init.) {report.initial_psnr:.4f} dB")
        print(f"PSNR(end) {report.final_psnr:.4f} dB")
    outputs = [out, zf_out, trace_out]
    logger.info("wrote %s", ", ".join(map(str, outputs)))
    extra = {
        "solver": asdict(cfg),
        "inputs": {
            "image": args.image,
            "kspace": args.kspace,
            "mask": args.mask,
            "reference": args.reference,
        },
        "bit_depth": args.bit_depth,
        "iterations": report.n_iter,
        "termination_reason": report.termination_reason,
    }
    _write_manifest(args, outputs, extra, started)
    return EXIT_OK


def cmd_eval(args, started):
    reference = load_image(_existing(args.reference))
    test = load_image(_existing(args.test))
    if reference.shape != test.shape:
        raise ShapeMismatchError(reference.shape, test.shape, what=("reference", "test"))
    value = psnr(reference, test)
    print("inf" if np.isinf(value) else f"{value:.4f}")
    _write_manifest(args, [], {"inputs": {"reference": args.reference, "test": args.test}}, started)
    return EXIT_OK


def cmd_sparsity(args, started):
    image = load_image(_existing(args.image))
    mask = load_mask(_existing(args.mask))
    if image.shape != mask.shape:
        raise ShapeMismatchError(image.shape, mask.shape)
    plan = TransformPlan(*image.shape)
    zf = zero_filled(plan.forward(image), mask)
    reports = {"original": sparsity_report(image, args.bins), "zero_filled": sparsity_report(zf, args.bins)}
    with atomic_write(args.output, "w") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("series", "bin", "bin_lo", "bin_hi", "count"))
        for name, rep in reports.items():
            for k, count in enumerate(rep.counts):
                writer.writerow((name, k, repr(float(rep.bin_edges[k])), repr(float(rep.bin_edges[k + 1])), int(count)))
    for name, rep in reports.items():
        print(f"{name}: l1 {rep.l1_value:.6g}, near-zero fraction {rep.near_zero_fraction:.6f}")
    extra = {
        "inputs": {"image": args.image, "mask": args.mask},
        "bins": args.bins,
        "near_zero_fraction": {k: r.near_zero_fraction for k, r in reports.items()},
    }
    _write_manifest(args, [Path(args.output)], extra, started)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    common.add_argument("--quiet", action="store_true", help="only print results")
    common.add_argument("--manifest-out", type=Path, default=None, help="manifest path (default: next to the first output)")

    parser = argparse.ArgumentParser(prog="admmrecon", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def shape_args(p):
        p.add_argument("--size", type=_positive_int, required=True, help="number of rows (and columns unless --cols)")
        p.add_argument("--cols", type=_positive_int, default=None)

    p = sub.add_parser("phantom", parents=[common], help="write a synthetic test image")
    p.add_argument("--kind", choices=PHANTOM_KINDS, default="shepp_logan")
    shape_args(p)
    p.add_argument("--contrast", type=_positive_float, default=1.0)
    p.add_argument("--bit-depth", type=int, choices=(8, 16), default=8)
    p.add_argument("-o", "--output", type=Path, required=True)
    p.set_defaults(func=cmd_phantom)

    p = sub.add_parser("mask", parents=[common], help="generate a k-space sampling mask")
    p.add_argument("--kind", choices=MASK_KINDS, required=True)
    shape_args(p)
    p.add_argument("--fraction", type=_fraction, default=None, help="sampled fraction in (0, 1]")
    p.add_argument("--lines", type=_positive_int, default=None, help="spoke count (radial only)")
    p.add_argument("--no-dc", action="store_true", help="do not force the DC sample")
    p.add_argument("-o", "--output", type=Path, required=True)
    p.set_defaults(func=cmd_mask)

    p = sub.add_parser("reconstruct", parents=[common], help="run the ADMM reconstruction")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--image", help="grayscale image; acquisition is simulated with the mask")
    src.add_argument("--kspace", help="raw k-space file (unitary DFT convention)")
    p.add_argument("--mask", required=True)
    p.add_argument("--reference", default=None, help="reference image for PSNR (defaults to --image)")
    p.add_argument("--mu1", type=_positive_float, default=10.0)
    p.add_argument("--mu2", type=_positive_float, default=20.0)
    p.add_argument("--max-iters", type=_positive_int, default=500)
    p.add_argument("--tol", type=_nonnegative_float, default=1e-6)
    p.add_argument("--bit-depth", type=int, choices=(8, 16), default=8)
    p.add_argument("-o", "--output", type=Path, required=True)
    p.add_argument("--zero-filled-out", type=Path, default=None)
    p.add_argument("--trace-out", type=Path, default=None)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("eval", parents=[common], help="PSNR of a test image against a reference")
    p.add_argument("reference")
    p.add_argument("test")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sparsity", parents=[common], help="magnitude histograms: original vs zero-filled")
    p.add_argument("image")
    p.add_argument("--mask", required=True)
    p.add_argument("--bins", type=int, default=64)
    p.add_argument("-o", "--output", type=Path, required=True)
    p.set_defaults(func=cmd_sparsity)
    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    args.argv = argv
    logging.basicConfig(format="%(message)s")
    logger.setLevel(logging.WARNING if args.quiet else logging.INFO)
    started = datetime.datetime.now(datetime.timezone.utc).isoformat()
    try:
        return args.func(args, started)
    except argparse.ArgumentTypeError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    except (InputError, ImageFormatError, FileNotFoundError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
