"""Image quality metrics: MSE, PSNR, edge PSNR and SSIM."""

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from ._validation import check_same_shape
from .exceptions import DimensionError

_SOBEL_DERIV = np.array([-1.0, 0.0, 1.0])
_SOBEL_SMOOTH = np.array([1.0, 2.0, 1.0])

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5


def _json_number(value):
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


@dataclass(frozen=True)
class MetricReport:
    mse: float
    psnr: float
    epsnr: float
    ssim: float
    pixel_count: int

    def to_dict(self):
        """Flat mapping with JSON-safe values; infinities become ``"inf"``."""
        return {
            "mse": self.mse,
            "psnr_db": _json_number(self.psnr),
            "epsnr_db": _json_number(self.epsnr),
            "ssim": self.ssim,
        }

    def to_json(self):
        return json.dumps(self.to_dict())


def mse(x, y):
    x, y = check_same_shape(x, y)
    diff = x - y
    return float(np.mean(diff * diff))


def psnr_from_mse(err, data_range=1.0):
    if err == 0:
        return math.inf
    return 10.0 * math.log10(data_range * data_range / err)


def psnr(x, y, data_range=1.0):
    """Peak signal-to-noise ratio in dB; ``inf`` for identical inputs."""
    return psnr_from_mse(mse(x, y), data_range)


def sobel_magnitude(image):
    """Gradient magnitude of the 3x3 Sobel pair with replicated borders."""
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 2:
        raise DimensionError("sobel_magnitude expects a 1-channel image")
    if image.shape[0] < 3 or image.shape[1] < 3:
        raise DimensionError(f"sobel_magnitude needs at least 3x3, got {image.shape}")
    gx = ndimage.correlate1d(image, _SOBEL_DERIV, axis=1, mode="nearest")
    gx = ndimage.correlate1d(gx, _SOBEL_SMOOTH, axis=0, mode="nearest")
    gy = ndimage.correlate1d(image, _SOBEL_DERIV, axis=0, mode="nearest")
    gy = ndimage.correlate1d(gy, _SOBEL_SMOOTH, axis=1, mode="nearest")
    return np.hypot(gx, gy)


def epsnr(x, y, data_range=None):
    """PSNR between the Sobel magnitude maps of ``x`` (original) and ``y``.

    ``data_range`` defaults to the peak of the original's edge map, or 1
    when the original has no edges at all.
    """
    x, y = check_same_shape(x, y)
    ex = sobel_magnitude(x)
    ey = sobel_magnitude(y)
    if data_range is None:
        data_range = float(ex.max()) or 1.0
    return psnr(ex, ey, data_range)


def _gaussian_window():
    half = SSIM_WINDOW // 2
    t = np.arange(-half, half + 1, dtype=np.float64)
    g = np.exp(-(t * t) / (2.0 * SSIM_SIGMA * SSIM_SIGMA))
    return g / g.sum()


def _valid_filter(img, g):
    """Separable correlation keeping only fully-covered windows."""
    k = len(g)
    rows = sum(g[i] * img[:, i:img.shape[1] - k + 1 + i] for i in range(k))
    return sum(g[i] * rows[i:rows.shape[0] - k + 1 + i, :] for i in range(k))


def ssim_terms(x, y, data_range=1.0):
    """Luminance and contrast-structure maps over every fully-contained window.

    Windows are 11x11 Gaussian (sigma 1.5); the local SSIM is their product.
    """
    x, y = check_same_shape(x, y)
    if x.ndim != 2:
        raise DimensionError("ssim expects 1-channel images")
    if x.shape[0] < SSIM_WINDOW or x.shape[1] < SSIM_WINDOW:
        raise DimensionError(f"ssim needs at least {SSIM_WINDOW}x{SSIM_WINDOW}, got {x.shape}")
    c1 = (0.01 * data_range) ** 2
    c2 = (0.03 * data_range) ** 2
    g = _gaussian_window()
    mu_x = _valid_filter(x, g)
    mu_y = _valid_filter(y, g)
    var_x = _valid_filter(x * x, g) - mu_x * mu_x
    var_y = _valid_filter(y * y, g) - mu_y * mu_y
    cov = _valid_filter(x * y, g) - mu_x * mu_y
    luminance = (2.0 * mu_x * mu_y + c1) / (mu_x * mu_x + mu_y * mu_y + c1)
    contrast_structure = (2.0 * cov + c2) / (var_x + var_y + c2)
    return luminance, contrast_structure


def ssim_map(x, y, data_range=1.0):
    luminance, contrast_structure = ssim_terms(x, y, data_range)
    return luminance * contrast_structure


def ssim(x, y, data_range=1.0):
    """Mean structural similarity (11x11 Gaussian window, sigma 1.5)."""
    return float(np.mean(ssim_map(x, y, data_range)))


def evaluate(original, reconstructed):
    """All metrics for a gray original/reconstruction pair."""
    err = mse(original, reconstructed)
    return MetricReport(
        mse=err,
        psnr=psnr_from_mse(err),
        epsnr=epsnr(original, reconstructed),
        ssim=ssim(original, reconstructed),
        pixel_count=int(np.asarray(original).size),
    )
