"""Structure-tensor-based edge-directed x2 image upscaling."""

from .estimators import BilinearUpscaler, StbUpscaler
from .exceptions import (
    DecodeError,
    DimensionError,
    ImageWriteError,
    MetricError,
    NumericalError,
    ParameterError,
    StbError,
)
from .image_core import (
    add_gaussian_noise,
    crop,
    load_image,
    naive_downsample,
    save_image,
    to_grayscale,
)
from .interpolate import StbParams, analyze, bilinear_upscale, stb_upscale
from .metrics import MetricReport, epsnr, evaluate, mse, psnr, ssim
from .tensor import PixelClass

__version__ = "0.1.0"

__all__ = [
    "BilinearUpscaler",
    "DecodeError",
    "DimensionError",
    "ImageWriteError",
    "MetricError",
    "MetricReport",
    "NumericalError",
    "ParameterError",
    "PixelClass",
    "StbError",
    "StbParams",
    "StbUpscaler",
    "add_gaussian_noise",
    "analyze",
    "bilinear_upscale",
    "crop",
    "epsnr",
    "evaluate",
    "load_image",
    "mse",
    "naive_downsample",
    "psnr",
    "save_image",
    "ssim",
    "stb_upscale",
    "to_grayscale",
]
