"""Structure-tensor-based x2 image interpolation.

Coordinates here are 0-based. A low-resolution (LR) pixel ``(m, n)`` lands
on high-resolution (HR) pixel ``(2m, 2n)``; HR pixel ``(r, c)`` sits at LR
coordinate ``(r / 2, c / 2)``. HR pixels with a half-integer LR coordinate
are *interpolation sites*.

Edge sites are filled with a normalized weighted average over a
``(2D+1) x (2D+1)`` LR window, each neighbor weighted by
``exp(-beta * dist) * exp(gamma * |tangent . u|)`` where ``u`` is the unit
vector from the neighbor to the site. Uniform and corner sites, and sites
whose window leaves the image, use bilinear interpolation.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_image
from .exceptions import DimensionError, ParameterError
from .image_core import to_grayscale
from .tensor import (
    PixelClass,
    classify_pixels,
    compute_gradients,
    compute_structure_tensor,
    eigen_decompose,
)

ANCHORS = ("site", "nearest")
GRADIENT_MASKS = ("central", "sobel")

# (row, col) half-offsets of the three site types in the LR frame
_SITE_TYPES = ((0.5, 0.0), (0.0, 0.5), (0.5, 0.5))


@dataclass(frozen=True)
class StbParams:
    """Algorithm configuration.

    ``half_size`` is the neighborhood half-width D and ``threshold`` the
    uniform-region threshold T on the ``[0, 100]`` gradient scale.
    ``anchor="nearest"`` measures weights from the nearest LR pixel instead
    of from the site itself.
    """

    sigma: float = 2.0
    half_size: int = 2
    beta: float = 5.0
    gamma: float = 10.0
    threshold: float = 20.0
    corner_ratio: float = 0.5
    corner_abs: float = 0.01
    gradient_mask: str = "central"
    anchor: str = "site"

    def __post_init__(self):
        if not self.sigma > 0:
            raise ParameterError(f"sigma must be > 0, got {self.sigma}")
        if int(self.half_size) != self.half_size or self.half_size < 1:
            raise ParameterError(f"half_size must be an integer >= 1, got {self.half_size}")
        if self.beta < 0 or self.gamma < 0:
            raise ParameterError("beta and gamma must be >= 0")
        if not 0 <= self.threshold <= 100:
            raise ParameterError(f"threshold must lie in [0, 100], got {self.threshold}")
        if not 0 <= self.corner_ratio <= 1:
            raise ParameterError(f"corner_ratio must lie in [0, 1], got {self.corner_ratio}")
        if self.corner_abs < 0:
            raise ParameterError(f"corner_abs must be >= 0, got {self.corner_abs}")
        if self.gradient_mask not in GRADIENT_MASKS:
            raise ParameterError(f"gradient_mask must be one of {GRADIENT_MASKS}")
        if self.anchor not in ANCHORS:
            raise ParameterError(f"anchor must be one of {ANCHORS}")


@dataclass(frozen=True)
class InterpolationSite:
    """An HR pixel to synthesize, at LR coordinate ``(ms, ns)``."""

    ms: float
    ns: float

    def __post_init__(self):
        for v in (self.ms, self.ns):
            if (2 * v) != int(2 * v):
                raise ValueError(f"site coordinates must be multiples of 1/2, got {v}")
        if self.ms == int(self.ms) and self.ns == int(self.ns):
            raise ValueError("integer coordinates are lattice pixels, not sites")

    @classmethod
    def from_hr(cls, row, col):
        return cls(row / 2.0, col / 2.0)

    @property
    def nearest(self):
        """Nearest LR pixel, ties resolved by flooring both coordinates."""
        return math.floor(self.ms), math.floor(self.ns)

    def window(self, half_size):
        """Inclusive LR index ranges ``((r0, r1), (c0, c1))`` of the neighborhood."""
        m, n = self.nearest
        return (m - half_size, m + half_size), (n - half_size, n + half_size)

    def window_fits(self, shape, half_size):
        (r0, r1), (c0, c1) = self.window(half_size)
        return r0 >= 0 and c0 >= 0 and r1 < shape[0] and c1 < shape[1]


@dataclass(frozen=True)
class Analysis:
    """Per-pixel fields computed once from the (luma of the) LR image."""

    gradients: object
    tensor: object
    eigen: object
    classes: np.ndarray


def _offset(site, pij, anchor):
    """Vector from LR pixel ``pij`` to the anchor, as ``(x, y)``."""
    if anchor == "site":
        am, an = site.ms, site.ns
    else:
        am, an = site.nearest
    return an - pij[1], am - pij[0]


def distance_weight(site, pij, beta, anchor="site"):
    """``exp(-beta * ||anchor - pij||)``."""
    dx, dy = _offset(site, pij, anchor)
    return math.exp(-beta * math.hypot(dx, dy))


def tensor_weight(site, pij, tangent, gamma, anchor="site"):
    """``exp(gamma * |tangent . u|)``, ``u`` the unit vector from ``pij`` to the anchor.

    With ``anchor="nearest"`` and ``pij`` equal to the nearest pixel the
    direction is undefined and the weight is ``exp(gamma)``.
    """
    dx, dy = _offset(site, pij, anchor)
    dist = math.hypot(dx, dy)
    if dist == 0.0:
        return math.exp(gamma)
    cos = (tangent[0] * dx + tangent[1] * dy) / dist
    return math.exp(gamma * abs(cos))


def interpolate_site(site, lr, eig, params):
    """Edge-directed value at one site (reference, unvectorized).

    The window must lie inside ``lr``. For color images every channel is
    averaged with the same weights.
    """
    D = int(params.half_size)
    if not site.window_fits(lr.shape, D):
        raise DimensionError(f"window of {site} leaves the {lr.shape[0]}x{lr.shape[1]} image")
    (r0, r1), (c0, c1) = site.window(D)
    num = 0.0
    den = 0.0
    for i in range(r0, r1 + 1):
        for j in range(c0, c1 + 1):
            w = (distance_weight(site, (i, j), params.beta, params.anchor)
                 * tensor_weight(site, (i, j), eig.tangent[i, j], params.gamma, params.anchor))
            num = num + w * lr[i, j]
            den += w
    window = lr[r0:r1 + 1, c0:c1 + 1]
    lo = window.min(axis=(0, 1))
    hi = window.max(axis=(0, 1))
    return np.clip(num / den, lo, hi)


def bilinear_at(site, lr):
    """Bilinear value at a site: the mean of its 2 or 4 enclosing LR pixels."""
    r0, c0 = site.nearest
    r1 = r0 + 1 if site.ms != r0 else r0
    c1 = c0 + 1 if site.ns != c0 else c0
    if r1 >= lr.shape[0] or c1 >= lr.shape[1] or r0 < 0 or c0 < 0:
        raise DimensionError(f"{site} is not enclosed by the image")
    if r1 == r0:
        return (lr[r0, c0] + lr[r0, c1]) / 2.0
    if c1 == c0:
        return (lr[r0, c0] + lr[r1, c0]) / 2.0
    return (lr[r0, c0] + lr[r0, c1] + lr[r1, c0] + lr[r1, c1]) / 4.0


def hr_shape(lr_shape):
    return (2 * lr_shape[0] - 1, 2 * lr_shape[1] - 1) + tuple(lr_shape[2:])


def bilinear_upscale(lr):
    """Plain bilinear x2 upscale onto the ``(2M-1) x (2N-1)`` lattice."""
    lr = check_image(lr, check_range=False)
    out = np.empty(hr_shape(lr.shape))
    out[0::2, 0::2] = lr
    out[1::2, 0::2] = (lr[:-1, :] + lr[1:, :]) / 2.0
    out[0::2, 1::2] = (lr[:, :-1] + lr[:, 1:]) / 2.0
    out[1::2, 1::2] = (lr[:-1, :-1] + lr[:-1, 1:] + lr[1:, :-1] + lr[1:, 1:]) / 4.0
    return out


def analyze(image, params=None):
    """Gradients, tensor, eigen system and classes of a gray LR image."""
    params = params or StbParams()
    grads = compute_gradients(image, params.gradient_mask)
    tensor = compute_structure_tensor(grads, params.sigma)
    eig = eigen_decompose(tensor)
    classes = classify_pixels(grads, eig, params.threshold, params.corner_ratio, params.corner_abs)
    return Analysis(gradients=grads, tensor=tensor, eigen=eig, classes=classes)


def _window_weights(dm, dn, D, beta, gamma, anchor, tx, ty):
    """Weight arrays for every offset of one site type over an interior block.

    ``tx``/``ty`` are tangent components sliced so that index ``(a, b)``
    of the returned list corresponds to LR pixel ``(fm + a - D, fn + b - D)``.
    Yields ``(a, b, weights)``.
    """
    for a in range(-D, D + 1):
        for b in range(-D, D + 1):
            if anchor == "site":
                dy, dx = dm - a, dn - b
            else:
                dy, dx = float(-a), float(-b)
            dist = math.hypot(dx, dy)
            t_x, t_y = tx(a, b), ty(a, b)
            if dist == 0.0:
                w = np.full(t_x.shape, math.exp(gamma))
            else:
                cos = np.abs(t_x * (dx / dist) + t_y * (dy / dist))
                w = math.exp(-beta * dist) * np.exp(gamma * cos)
            yield a, b, w


def stb_upscale(lr, params=None, analysis=None):
    """Upscale an LR image by two onto the ``(2M-1) x (2N-1)`` lattice.

    Parameters
    ----------
    lr : ndarray (M, N) or (M, N, 3)
    params : StbParams, optional
    analysis : Analysis, optional
        Precomputed fields; by default computed from the luma of ``lr``.
        Color channels share one tangent field and one classification.

    Returns
    -------
    ndarray of shape ``(2M-1, 2N-1[, 3])``. LR pixels are copied to even
    HR positions unchanged, and every value lies within the input range.
    """
    params = params or StbParams()
    D = int(params.half_size)
    lr = check_image(lr, min_size=2 * D + 2, check_range=False)
    if analysis is None:
        analysis = analyze(to_grayscale(lr), params)
    M, N = lr.shape[:2]
    if analysis.classes.shape != (M, N):
        raise DimensionError("analysis fields do not match the image size")

    out = bilinear_upscale(lr)
    tangent = analysis.eigen.tangent
    edge = analysis.classes == PixelClass.EDGE
    color = lr.ndim == 3

    for dm, dn in _SITE_TYPES:
        # eligible nearest pixels: the whole window fits inside the image
        rows = slice(D, M - D)
        cols = slice(D, N - D)
        mask = edge[rows, cols]
        if mask.size == 0 or not mask.any():
            continue
        bh, bw = mask.shape

        def shifted(arr, a, b):
            return arr[D + a:D + a + bh, D + b:D + b + bw]

        num = np.zeros((bh, bw, 3) if color else (bh, bw))
        den = np.zeros((bh, bw))
        weights = _window_weights(
            dm, dn, D, params.beta, params.gamma, params.anchor,
            lambda a, b: shifted(tangent[..., 0], a, b),
            lambda a, b: shifted(tangent[..., 1], a, b),
        )
        lo = np.full(num.shape, np.inf)
        hi = np.full(num.shape, -np.inf)
        for a, b, w in weights:
            values = shifted(lr, a, b)
            num += w[..., None] * values if color else w * values
            den += w
            np.minimum(lo, values, out=lo)
            np.maximum(hi, values, out=hi)
        value = np.clip(num / (den[..., None] if color else den), lo, hi)

        r_hr = slice(2 * D + int(2 * dm), 2 * D + int(2 * dm) + 2 * bh, 2)
        c_hr = slice(2 * D + int(2 * dn), 2 * D + int(2 * dn) + 2 * bw, 2)
        block = out[r_hr, c_hr]
        block[mask] = value[mask]
        out[r_hr, c_hr] = block

    return out
