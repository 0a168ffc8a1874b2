"""scikit-learn compatible wrappers around the x2 upscalers.

The transformers are stateless: ``fit`` only validates hyper-parameters,
and ``transform`` maps one image ``(M, N[, 3])`` to its
``(2M-1, 2N-1[, 3])`` upscale. ``n_iter`` repeats the x2 step.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_image
from .image_core import to_grayscale
from .interpolate import StbParams, analyze, bilinear_upscale, stb_upscale
from .exceptions import ParameterError


class BilinearUpscaler(TransformerMixin, BaseEstimator):
    """Bilinear x2 upscaling onto the odd-sized lattice.

    Parameters
    ----------
    n_iter : int, default=1
        Number of successive x2 steps.
    """

    def __init__(self, n_iter=1):
        self.n_iter = n_iter

    def fit(self, X, y=None):
        if int(self.n_iter) != self.n_iter or self.n_iter < 1:
            raise ParameterError(f"n_iter must be a positive integer, got {self.n_iter}")
        check_image(X, check_range=False)
        self.n_features_in_ = 1 if np.ndim(X) == 2 else np.shape(X)[2]
        return self

    def transform(self, X):
        check_is_fitted(self)
        out = check_image(X, check_range=False)
        for _ in range(int(self.n_iter)):
            out = bilinear_upscale(out)
        return out


class StbUpscaler(TransformerMixin, BaseEstimator):
    """Structure-tensor-based edge-directed x2 upscaling.

    Parameters
    ----------
    sigma : float, default=2.0
        Gaussian scale of the structure tensor.
    half_size : int, default=2
        Neighborhood half-width; windows are ``2*half_size + 1`` pixels wide.
    beta : float, default=5.0
        Distance decay of the weights.
    gamma : float, default=10.0
        Gain for neighbors whose tangent aligns with the site direction.
    threshold : float, default=20.0
        Pixels whose gradient magnitude (scaled to [0, 100]) is below this
        are interpolated bilinearly.
    corner_ratio, corner_abs : float
        Corner detection thresholds on ``d / dperp`` and ``d / max(dperp)``.
    gradient_mask : {"central", "sobel"}
    anchor : {"site", "nearest"}
    n_iter : int, default=1
        Number of successive x2 steps.

    Examples
    --------
    >>> import numpy as np
    >>> up = StbUpscaler().fit(np.zeros((8, 8)))
    >>> up.transform(np.zeros((8, 8))).shape
    (15, 15)
    """

    def __init__(self, sigma=2.0, half_size=2, beta=5.0, gamma=10.0, threshold=20.0,
                 corner_ratio=0.5, corner_abs=0.01, gradient_mask="central", anchor="site",
                 n_iter=1):
        self.sigma = sigma
        self.half_size = half_size
        self.beta = beta
        self.gamma = gamma
        self.threshold = threshold
        self.corner_ratio = corner_ratio
        self.corner_abs = corner_abs
        self.gradient_mask = gradient_mask
        self.anchor = anchor
        self.n_iter = n_iter

    def _params(self):
        return StbParams(
            sigma=self.sigma, half_size=self.half_size, beta=self.beta, gamma=self.gamma,
            threshold=self.threshold, corner_ratio=self.corner_ratio,
            corner_abs=self.corner_abs, gradient_mask=self.gradient_mask, anchor=self.anchor,
        )

    def fit(self, X, y=None):
        if int(self.n_iter) != self.n_iter or self.n_iter < 1:
            raise ParameterError(f"n_iter must be a positive integer, got {self.n_iter}")
        self.params_ = self._params()
        check_image(X, check_range=False)
        self.n_features_in_ = 1 if np.ndim(X) == 2 else np.shape(X)[2]
        return self

    def transform(self, X):
        check_is_fitted(self)
        out = check_image(X, min_size=2 * int(self.params_.half_size) + 2, check_range=False)
        for _ in range(int(self.n_iter)):
            out = stb_upscale(out, self.params_)
        return out

    def classify(self, X):
        """Per-pixel :class:`~stbinterp.tensor.PixelClass` labels of ``X``'s luma."""
        check_is_fitted(self)
        return analyze(to_grayscale(X), self.params_).classes
