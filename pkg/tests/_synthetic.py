"""Synthetic test images with known analytic structure."""

from pathlib import Path

import numpy as np

DATA_DIR = Path(__file__).parent / "data"
LENA = DATA_DIR / "lena512.pgm"


def diagonal_edge(n=64, offset=0.5, lo=0.2, hi=0.8, supersample=8):
    """Box-filtered (anti-aliased) 45 degree step edge.

    Pixel ``(r, c)`` covers ``[r, r+1) x [c, c+1)`` and takes the value
    ``hi`` on the side ``x - y > offset``. Its intensity is the exact area
    coverage estimated on a ``supersample``-squared grid.
    """
    t = (np.arange(supersample) + 0.5) / supersample
    r = np.arange(n)[:, None, None, None] + t[None, None, :, None]
    c = np.arange(n)[None, :, None, None] + t[None, None, None, :]
    inside = (c - r) > offset
    return lo + (hi - lo) * inside.mean(axis=(2, 3))


def random_image(rng, shape):
    return rng.random(shape)


def smooth_random_image(rng, shape, sigma=1.5):
    from scipy import ndimage

    img = ndimage.gaussian_filter(rng.random(shape), sigma)
    img -= img.min()
    return img / img.max()


def write_pgm(path, codes, ascii_=False):
    codes = np.asarray(codes, dtype=np.uint8)
    h, w = codes.shape
    if ascii_:
        body = "\n".join(" ".join(str(v) for v in row) for row in codes)
        Path(path).write_text(f"P2\n# test\n{w} {h}\n255\n{body}\n")
    else:
        Path(path).write_bytes(f"P5\n{w} {h}\n255\n".encode() + codes.tobytes())
