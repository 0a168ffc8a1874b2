"""Input validation helpers shared by the estimators and functional API."""

import numpy as np

from .exceptions import DimensionError, MetricError


def check_image(image, *, channels=(1, 3), min_size=1, name="image", check_range=True):
    """Validate and convert an image to a float64 array.

    Gray images are ``(H, W)`` and color images ``(H, W, 3)``. Intensities
    live in ``[0, 1]``.

    Parameters
    ----------
    image : array-like
    channels : tuple of int
        Accepted channel counts.
    min_size : int or (int, int)
        Minimum ``(height, width)``.
    name : str
        Used in error messages.
    check_range : bool
        Reject values outside ``[0, 1]``.

    Returns
    -------
    ndarray of float64
    """
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim == 3 and arr.shape[2] == 1:
        arr = arr[:, :, 0]
    if arr.ndim == 2:
        n_channels = 1
    elif arr.ndim == 3:
        n_channels = arr.shape[2]
    else:
        raise DimensionError(f"{name} must be 2-D (H, W) or 3-D (H, W, C), got ndim={arr.ndim}")
    if n_channels not in channels:
        raise DimensionError(f"{name} has {n_channels} channels, expected one of {tuple(channels)}")

    min_h, min_w = (min_size, min_size) if np.isscalar(min_size) else min_size
    if arr.shape[0] < min_h or arr.shape[1] < min_w:
        raise DimensionError(
            f"{name} is {arr.shape[0]}x{arr.shape[1]}, needs at least {min_h}x{min_w}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or infinite values")
    if check_range and arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
        raise ValueError(f"{name} intensities must lie in [0, 1]")
    return arr


def check_same_shape(x, y):
    """Convert a pair of images for metric computation, requiring equal shapes."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise MetricError(f"shape mismatch: {x.shape} vs {y.shape}")
    if x.size == 0:
        raise MetricError("empty images")
    return x, y


def n_channels(image):
    return 1 if image.ndim == 2 else image.shape[2]
