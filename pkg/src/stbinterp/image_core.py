"""Image I/O and the experiment-preparation transforms.

Images are numpy arrays of float64 intensities in ``[0, 1]``: ``(H, W)`` for
gray, ``(H, W, 3)`` for RGB. Files are 8-bit PGM (P2/P5) or PNG.
"""

import io
import os

import numpy as np
from PIL import Image, UnidentifiedImageError

from ._validation import check_image
from .exceptions import DecodeError, DimensionError, ImageWriteError, ParameterError

LUMA_WEIGHTS = np.array([0.299, 0.587, 0.114])

_PGM_WHITESPACE = b" \t\r\n\x0b\x0c"


def _pgm_tokens(data, count):
    """Read ``count`` header tokens, skipping whitespace and ``#`` comments.

    Returns the tokens and the offset just past the last token.
    """
    tokens = []
    pos = 0
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos] in _PGM_WHITESPACE:
            pos += 1
        if pos < n and data[pos:pos + 1] == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        if pos >= n:
            raise DecodeError("PGM: truncated header")
        start = pos
        while pos < n and data[pos] not in _PGM_WHITESPACE and data[pos:pos + 1] != b"#":
            pos += 1
        tokens.append(data[start:pos])
    return tokens, pos


def _decode_pgm(data):
    magic = data[:2]
    tokens, pos = _pgm_tokens(data[2:], 3)
    pos += 2
    try:
        width, height, maxval = (int(t) for t in tokens)
    except ValueError as exc:
        raise DecodeError(f"PGM: malformed header {tokens!r}") from exc
    if width < 1 or height < 1:
        raise DecodeError(f"PGM: invalid dimensions {width}x{height}")
    if maxval != 255:
        raise DecodeError(f"PGM: unsupported maxval {maxval} (only 255)")
    count = width * height

    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        raster = data[pos + 1:pos + 1 + count]
        if len(raster) != count:
            raise DecodeError(f"PGM: truncated raster ({len(raster)} of {count} bytes)")
        values = np.frombuffer(raster, dtype=np.uint8)
    else:
        body = data[pos:].split()
        if len(body) < count:
            raise DecodeError(f"PGM: truncated raster ({len(body)} of {count} values)")
        try:
            values = np.array([int(v) for v in body[:count]], dtype=np.int64)
        except ValueError as exc:
            raise DecodeError("PGM: non-integer sample") from exc
        if values.min() < 0 or values.max() > 255:
            raise DecodeError("PGM: sample outside [0, 255]")
    return values.reshape(height, width).astype(np.float64) / 255.0


def _decode_png(data):
    try:
        with Image.open(io.BytesIO(data)) as img:
            img.load()
            mode = img.mode
            if mode not in ("L", "RGB"):
                raise DecodeError(f"PNG: unsupported mode {mode!r} (8-bit L or RGB only)")
            arr = np.asarray(img, dtype=np.uint8)
    except (OSError, UnidentifiedImageError, SyntaxError, ValueError) as exc:
        if isinstance(exc, DecodeError):
            raise
        raise DecodeError(f"PNG: {exc}") from exc
    return arr.astype(np.float64) / 255.0


def load_image(path):
    """Load a PGM (P2/P5, maxval 255) or 8-bit PNG file into ``[0, 1]`` floats.

    Raises
    ------
    DecodeError
        If the file is malformed or in an unsupported format.
    OSError
        If the file cannot be read.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:2] in (b"P2", b"P5"):
        return _decode_pgm(data)
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        return _decode_png(data)
    raise DecodeError(f"unsupported image format in {os.fspath(path)!r}")


def quantize(image):
    """Map ``[0, 1]`` intensities to bytes by round-half-up of ``v * 255``."""
    codes = np.floor(np.asarray(image, dtype=np.float64) * 255.0 + 0.5)
    return np.clip(codes, 0, 255).astype(np.uint8)


def save_image(image, path):
    """Write an image as binary PGM (``.pgm``) or PNG (``.png``).

    Intensities are quantized with :func:`quantize`, so loading the file
    back gives ``quantize(image) / 255`` exactly.
    """
    image = check_image(image, check_range=False)
    codes = quantize(image)
    ext = os.path.splitext(os.fspath(path))[1].lower()
    try:
        if ext == ".pgm":
            if codes.ndim != 2:
                raise ValueError("PGM output requires a 1-channel image")
            header = f"P5\n{codes.shape[1]} {codes.shape[0]}\n255\n".encode("ascii")
            with open(path, "wb") as fh:
                fh.write(header)
                fh.write(codes.tobytes())
        elif ext == ".png":
            Image.fromarray(codes, mode="L" if codes.ndim == 2 else "RGB").save(path, format="PNG")
        else:
            raise ValueError(f"unsupported output extension {ext!r} (use .pgm or .png)")
    except OSError as exc:
        raise ImageWriteError(f"cannot write {os.fspath(path)!r}: {exc}") from exc


def to_grayscale(image):
    """Return the luma (0.299 R + 0.587 G + 0.114 B) of an RGB image.

    Gray images are returned unchanged.
    """
    image = check_image(image, check_range=False)
    if image.ndim == 2:
        return image
    return np.clip(image @ LUMA_WEIGHTS, 0.0, 1.0)


def naive_downsample(image, factor=2):
    """Keep every ``factor``-th row and column, starting with the first.

    No anti-aliasing filter is applied. Output dimensions are
    ``ceil(dim / factor)``.
    """
    if int(factor) != factor or factor < 2:
        raise ParameterError(f"factor must be an integer >= 2, got {factor!r}")
    factor = int(factor)
    image = check_image(image, min_size=factor, check_range=False)
    return image[::factor, ::factor].copy()


def add_gaussian_noise(image, variance, seed=None):
    """Add i.i.d. ``N(0, variance)`` noise and clamp to ``[0, 1]``.

    ``variance`` is on the ``[0, 1]`` intensity scale, so "0.1% variance"
    is ``0.001``. ``seed`` is anything accepted by
    :func:`numpy.random.default_rng`.
    """
    if variance < 0:
        raise ParameterError(f"variance must be >= 0, got {variance}")
    image = check_image(image, check_range=False)
    if variance == 0:
        return image.copy()
    rng = np.random.default_rng(seed)
    noisy = image + rng.normal(0.0, np.sqrt(variance), size=image.shape)
    return np.clip(noisy, 0.0, 1.0)


def crop(image, rows, cols):
    """Return the top-left ``rows x cols`` sub-image."""
    image = check_image(image, check_range=False)
    if rows < 1 or cols < 1 or rows > image.shape[0] or cols > image.shape[1]:
        raise DimensionError(
            f"cannot crop {image.shape[0]}x{image.shape[1]} image to {rows}x{cols}"
        )
    return image[:rows, :cols].copy()
