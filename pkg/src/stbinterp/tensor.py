"""Gradients, the Gaussian-smoothed structure tensor and its eigen system.

Vector quantities use ``(x, y)`` component order where ``x`` runs along
columns and ``y`` along rows, so ``tangent[..., 0]`` pairs with ``gx``.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from ._validation import check_image
from .exceptions import NumericalError, ParameterError

_SOBEL_DERIV = np.array([-1.0, 0.0, 1.0])
_SOBEL_SMOOTH = np.array([1.0, 2.0, 1.0])


class PixelClass(enum.IntEnum):
    UNIFORM = 0
    EDGE = 1
    CORNER = 2


@dataclass(frozen=True)
class GradientField:
    gx: np.ndarray
    gy: np.ndarray
    gmag_norm: np.ndarray


@dataclass(frozen=True)
class TensorField:
    t11: np.ndarray
    t12: np.ndarray
    t22: np.ndarray
    sigma: float


@dataclass(frozen=True)
class EigenField:
    """Eigenvalues ``d <= dperp`` and the unit tangent (small-eigenvalue) vector."""

    d: np.ndarray
    dperp: np.ndarray
    tangent: np.ndarray  # (H, W, 2), (x, y) components

    @property
    def normal(self):
        """Tangent rotated by 90 degrees; carries ``dperp``."""
        return np.stack([-self.tangent[..., 1], self.tangent[..., 0]], axis=-1)


def compute_gradients(image, mask="central"):
    """Horizontal/vertical derivatives and the gradient magnitude on ``[0, 100]``.

    Parameters
    ----------
    image : ndarray (H, W)
    mask : {"central", "sobel"}
        ``central`` is ``(I[j+1] - I[j-1]) / 2``; ``sobel`` is the 3x3 Sobel
        pair scaled by 1/8 so both masks agree on linear ramps. Boundaries
        are replicated.
    """
    image = check_image(image, channels=(1,), min_size=2, check_range=False)
    if mask == "central":
        padded = np.pad(image, 1, mode="edge")
        gx = (padded[1:-1, 2:] - padded[1:-1, :-2]) / 2.0
        gy = (padded[2:, 1:-1] - padded[:-2, 1:-1]) / 2.0
    elif mask == "sobel":
        gx = ndimage.correlate1d(image, _SOBEL_DERIV, axis=1, mode="nearest")
        gx = ndimage.correlate1d(gx, _SOBEL_SMOOTH, axis=0, mode="nearest") / 8.0
        gy = ndimage.correlate1d(image, _SOBEL_DERIV, axis=0, mode="nearest")
        gy = ndimage.correlate1d(gy, _SOBEL_SMOOTH, axis=1, mode="nearest") / 8.0
    else:
        raise ParameterError(f"unknown gradient mask {mask!r}")

    mag = np.hypot(gx, gy)
    peak = mag.max()
    gmag_norm = 100.0 * mag / peak if peak > 0 else np.zeros_like(mag)
    return GradientField(gx=gx, gy=gy, gmag_norm=gmag_norm)


def gaussian_kernel(sigma):
    """Normalized 1-D Gaussian sampled on ``[-r, r]``, ``r = ceil(3 sigma)``."""
    if not sigma > 0:
        raise ParameterError(f"sigma must be > 0, got {sigma}")
    radius = math.ceil(3.0 * sigma)
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    kernel = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return kernel / kernel.sum()


def smooth(field, kernel):
    """Separable 2-D convolution (rows, then columns), replicate boundary."""
    out = ndimage.correlate1d(np.asarray(field, dtype=np.float64), kernel, axis=1, mode="nearest")
    return ndimage.correlate1d(out, kernel, axis=0, mode="nearest")


def compute_structure_tensor(grads, sigma):
    kernel = gaussian_kernel(sigma)
    gx, gy = grads.gx, grads.gy
    return TensorField(
        t11=smooth(gx * gx, kernel),
        t12=smooth(gx * gy, kernel),
        t22=smooth(gy * gy, kernel),
        sigma=float(sigma),
    )


def eigen_decompose(tensor):
    """Closed-form eigen system of a field of symmetric 2x2 tensors.

    The tangent is ``(T22 - T11 + s, -2 T12)`` normalized, with
    ``s = sqrt((T22 - T11)^2 + 4 T12^2)``. Where ``T11 > T22`` the parallel
    vector ``(-2 T12, T11 - T22 + s)`` is used instead to avoid
    cancellation. A vanishing vector (``T12 = 0``) falls back to the x axis
    if ``T11 <= T22`` and the y axis otherwise.

    Raises
    ------
    NumericalError
        If the field is not positive semi-definite within round-off.
    """
    t11, t12, t22 = tensor.t11, tensor.t12, tensor.t22
    trace = t11 + t22
    det = t11 * t22 - t12 * t12
    scale = 1.0 + np.abs(trace)
    if (np.any(t11 < -1e-9 * scale) or np.any(t22 < -1e-9 * scale)
            or np.any(det < -1e-9 * scale * scale)):
        raise NumericalError("structure tensor field is not positive semi-definite")

    diff = t22 - t11
    s = np.sqrt(diff * diff + 4.0 * t12 * t12)
    d = 0.5 * (trace - s)
    dperp = 0.5 * (trace + s)

    use_first = diff >= 0
    vx = np.where(use_first, diff + s, -2.0 * t12)
    vy = np.where(use_first, -2.0 * t12, s - diff)
    norm = np.hypot(vx, vy)
    eps = 1e-12 * np.maximum(1.0, trace)
    degenerate = norm < eps
    safe = np.where(degenerate, 1.0, norm)
    vx = vx / safe
    vy = vy / safe
    x_axis = t11 <= t22
    vx = np.where(degenerate, np.where(x_axis, 1.0, 0.0), vx)
    vy = np.where(degenerate, np.where(x_axis, 0.0, 1.0), vy)
    return EigenField(d=d, dperp=dperp, tangent=np.stack([vx, vy], axis=-1))


def classify_pixels(grads, eig, threshold=20.0, corner_ratio=0.5, corner_abs=0.01):
    """Label pixels as uniform, edge or corner.

    A pixel is uniform when its normalized gradient magnitude is below
    ``threshold``; ``threshold >= 100`` and gradient-free images make every
    pixel uniform. Remaining pixels are corners when the small eigenvalue
    exceeds ``corner_abs * max(dperp)`` and ``d / dperp > corner_ratio``,
    and edges otherwise.

    Returns
    -------
    ndarray of int8 holding :class:`PixelClass` values.
    """
    gmag = grads.gmag_norm
    if threshold >= 100.0 or not np.any(gmag > 0):
        return np.full(gmag.shape, PixelClass.UNIFORM, dtype=np.int8)

    d, dperp = eig.d, eig.dperp
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(dperp > 0, d / np.where(dperp > 0, dperp, 1.0), 0.0)
    corner = (d > corner_abs * dperp.max()) & (ratio > corner_ratio)

    labels = np.full(gmag.shape, PixelClass.EDGE, dtype=np.int8)
    labels[corner] = PixelClass.CORNER
    labels[gmag < threshold] = PixelClass.UNIFORM
    return labels
