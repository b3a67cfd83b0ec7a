"""File formats: grayscale images, mask PNGs, trace CSVs and raw k-space.

Raw k-space layout (little-endian throughout)::

    bytes 0-7    magic  b"ADMMKSP1"
    bytes 8-11   rows   uint32
    bytes 12-15  cols   uint32
    bytes 16-    rows*cols complex values, row-major, each as
                 (real float64, imag float64)

Stored values use the unitary DFT convention of
:class:`~admmrecon.transform.TransformPlan`; data from an unnormalised FFT
must be divided by ``sqrt(rows * cols)`` first.

Every writer goes through a temporary file in the destination directory
followed by ``os.replace``, so an interrupted run never leaves a
truncated output behind.
"""

import contextlib
import csv
import io as _io
import math
import os
import struct
import tempfile
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .grid import check_image, check_mask
from .solver import IterationRecord

KSPACE_MAGIC = b"ADMMKSP1"
_KSPACE_HEADER = struct.Struct("<8sII")
TRACE_HEADER = ("iter", "objective", "r1", "r2", "psnr", "seconds")
IMAGE_SUFFIXES = (".png", ".pgm")


class ImageFormatError(ValueError):
    pass


@contextlib.contextmanager
def atomic_write(path, mode="wb"):
    """Open a temp file next to ``path`` and move it into place on success."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, mode, **({} if "b" in mode else {"newline": ""})) as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmp)
        raise


def _read_gray(path):
    path = Path(path)
    if path.suffix.lower() not in IMAGE_SUFFIXES:
        raise ImageFormatError(f"unsupported image format {path.suffix!r} for {path}; use PNG or PGM")
    try:
        with Image.open(path) as im:
            im.load()
            mode = im.mode
            arr = np.array(im)
    except UnidentifiedImageError as exc:
        raise ImageFormatError(f"cannot decode image {path}") from exc
    except OSError as exc:
        if isinstance(exc, FileNotFoundError):
            raise
        raise ImageFormatError(f"corrupt image file {path}: {exc}") from exc
    if mode in ("L", "1"):
        return arr.astype(np.float64), 255.0
    if mode.startswith("I;16") or (mode == "I" and arr.min() >= 0 and arr.max() <= 65535):
        return arr.astype(np.float64), 65535.0
    raise ImageFormatError(f"{path} is not a grayscale image (mode {mode})")


def load_image(path):
    """Read an 8- or 16-bit grayscale PNG/PGM as a complex image in [0, 1]."""
    arr, full_scale = _read_gray(path)
    return (arr / full_scale).astype(np.complex128)


def _quantize(img, bit_depth):
    if bit_depth not in (8, 16):
        raise ValueError(f"bit_depth must be 8 or 16, got {bit_depth}")
    full = 255 if bit_depth == 8 else 65535
    mag = np.clip(np.abs(np.asarray(img)), 0.0, 1.0)
    return np.floor(mag * full + 0.5).astype(np.uint8 if bit_depth == 8 else np.uint16)


def _write_array(arr, path):
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix not in IMAGE_SUFFIXES:
        raise ImageFormatError(f"unsupported image format {path.suffix!r} for {path}; use PNG or PGM")
    buf = _io.BytesIO()
    Image.fromarray(arr).save(buf, format="PNG" if suffix == ".png" else "PPM")
    with atomic_write(path) as fh:
        fh.write(buf.getvalue())


def save_image(img, path, bit_depth=8):
    """Write the magnitude of ``img``, clipped to [0, 1], as grayscale."""
    _write_array(_quantize(img, bit_depth), path)


def save_mask(mask, path):
    """Write a mask as 8-bit PNG (255 = sampled) with DC moved to the centre."""
    mask = check_mask(mask)
    _write_array(np.where(np.fft.fftshift(mask), 255, 0).astype(np.uint8), path)


def load_mask(path):
    """Inverse of :func:`save_mask`; any nonzero pixel counts as sampled."""
    arr, _ = _read_gray(path)
    return np.fft.ifftshift(arr > 0)


def _fmt(value):
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return repr(float(value))


def save_trace(report, path):
    """Write per-iteration records as CSV; the psnr column is blank without a reference."""
    with atomic_write(path, "w") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for rec in report.records:
            writer.writerow([rec.iter] + [_fmt(getattr(rec, k)) for k in TRACE_HEADER[1:]])


def read_trace(path):
    """Parse a trace CSV back into :class:`IterationRecord` objects."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != TRACE_HEADER:
            raise ValueError(f"{path} is not a trace file (header {reader.fieldnames})")
        return [
            IterationRecord(
                iter=int(row["iter"]),
                objective=float(row["objective"]),
                r1=float(row["r1"]),
                r2=float(row["r2"]),
                psnr=float(row["psnr"]) if row["psnr"] else None,
                seconds=float(row["seconds"]),
            )
            for row in reader
        ]


def save_kspace(kspace, path):
    kspace = check_image(kspace, "k-space")
    rows, cols = kspace.shape
    with atomic_write(path) as fh:
        fh.write(_KSPACE_HEADER.pack(KSPACE_MAGIC, rows, cols))
        fh.write(kspace.astype("<c16").tobytes())


def load_kspace(path):
    data = Path(path).read_bytes()
    if len(data) < _KSPACE_HEADER.size:
        raise ValueError(f"{path} is too short to hold a k-space header")
    magic, rows, cols = _KSPACE_HEADER.unpack_from(data)
    if magic != KSPACE_MAGIC:
        raise ValueError(f"{path} has bad magic {magic!r}; expected {KSPACE_MAGIC!r}")
    expected = _KSPACE_HEADER.size + 16 * rows * cols
    if len(data) != expected:
        raise ValueError(f"{path} holds {len(data)} bytes, expected {expected} for {rows}x{cols}")
    arr = np.frombuffer(data, dtype="<c16", offset=_KSPACE_HEADER.size).reshape(rows, cols)
    return check_image(arr, "k-space")
