"""Downsample, reconstruct, measure: the experiment harness behind the CLI."""

import csv
import io
import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .exceptions import MetricError, ParameterError
from .image_core import (
    add_gaussian_noise,
    crop,
    load_image,
    naive_downsample,
    save_image,
    to_grayscale,
)
from .interpolate import StbParams, analyze, bilinear_upscale, stb_upscale
from .metrics import MetricReport, evaluate
from .tensor import PixelClass

logger = logging.getLogger(__name__)

METHODS = ("stb", "bilinear")
CSV_COLUMNS = ("image", "method", "mse", "psnr_db", "epsnr_db", "ssim", "time_sec", "status")
IMAGE_SUFFIXES = (".pgm", ".png")

_CLASS_GRAY = {PixelClass.UNIFORM: 0.0, PixelClass.EDGE: 128 / 255, PixelClass.CORNER: 1.0}


@dataclass
class ExperimentSpec:
    corpus: list
    params: StbParams = field(default_factory=StbParams)
    noise_variance: float = 0.0
    seed: int = 0
    methods: tuple = METHODS
    report_format: str = "csv"
    dump_classes_dir: object = None

    def __post_init__(self):
        if not self.corpus:
            raise ParameterError("corpus is empty")
        if self.noise_variance < 0:
            raise ParameterError("noise_variance must be >= 0")
        unknown = set(self.methods) - set(METHODS)
        if unknown or not self.methods:
            raise ParameterError(f"methods must be drawn from {METHODS}, got {self.methods}")
        if self.report_format not in ("csv", "json"):
            raise ParameterError(f"unknown report format {self.report_format!r}")


@dataclass
class BenchmarkRow:
    image: str
    method: str
    report: MetricReport = None
    wall_time: float = None
    error: str = None

    @property
    def ok(self):
        return self.error is None

    def to_dict(self):
        row = {"image": self.image, "method": self.method}
        if self.ok:
            row.update(self.report.to_dict())
            row["time_sec"] = self.wall_time
            row["status"] = "ok"
        else:
            row.update({k: None for k in ("mse", "psnr_db", "epsnr_db", "ssim", "time_sec")})
            row["status"] = "failed"
            row["error"] = self.error
        return row


def worker_count(default=None):
    """Worker cap from ``STB_THREADS`` (0 or unset means automatic)."""
    raw = os.environ.get("STB_THREADS", "")
    try:
        n = int(raw) if raw.strip() else 0
    except ValueError:
        logger.warning("ignoring non-integer STB_THREADS=%r", raw)
        n = 0
    if n > 0:
        return n
    return default or os.cpu_count() or 1


def list_corpus(directory):
    paths = sorted(p for p in Path(directory).iterdir()
                   if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES)
    if not paths:
        raise ParameterError(f"no .pgm/.png images in {directory}")
    return paths


def match_original(original, reconstructed):
    """Crop the original to the reconstruction when it is at most one pixel larger per axis."""
    (h, w), (rh, rw) = original.shape[:2], reconstructed.shape[:2]
    if h - rh not in (0, 1) or w - rw not in (0, 1):
        raise MetricError(f"cannot compare {h}x{w} original with {rh}x{rw} reconstruction")
    if (h, w) == (rh, rw):
        return original
    return crop(original, rh, rw)


def evaluate_images(original, reconstructed):
    original = to_grayscale(original)
    reconstructed = to_grayscale(reconstructed)
    return evaluate(match_original(original, reconstructed), reconstructed)


def evaluate_files(original_path, reconstructed_path):
    return evaluate_images(load_image(original_path), load_image(reconstructed_path))


def upscale_file(input_path, output_path, params=None, color_mode="gray"):
    """Load, upscale by two and save. ``rgb`` mode keeps color, sharing the luma tensor field."""
    image = load_image(input_path)
    if color_mode == "gray":
        image = to_grayscale(image)
    elif color_mode != "rgb":
        raise ParameterError(f"unknown color mode {color_mode!r}")
    out = stb_upscale(image, params or StbParams())
    save_image(out, output_path)
    return out


def classes_to_image(classes):
    img = np.zeros(classes.shape)
    for label, gray in _CLASS_GRAY.items():
        img[classes == label] = gray
    return img


def _run_image(index, path, spec):
    name = Path(path).name
    try:
        original = to_grayscale(load_image(path))
        lr = naive_downsample(original, 2)
        if spec.noise_variance > 0:
            lr = add_gaussian_noise(lr, spec.noise_variance, seed=[spec.seed, index])
        analysis = None
        if spec.dump_classes_dir is not None:
            analysis = analyze(lr, spec.params)
            save_image(classes_to_image(analysis.classes),
                       Path(spec.dump_classes_dir) / f"{Path(path).stem}.classes.pgm")
    except Exception as exc:
        logger.error("%s: %s", name, exc)
        return [BenchmarkRow(name, method, error=str(exc)) for method in spec.methods]

    rows = []
    for method in spec.methods:
        try:
            start = time.perf_counter()
            if method == "stb":
                hr = stb_upscale(lr, spec.params, analysis)
            else:
                hr = bilinear_upscale(lr)
            elapsed = time.perf_counter() - start
            report = evaluate(match_original(original, hr), hr)
            rows.append(BenchmarkRow(name, method, report, max(elapsed, 1e-9)))
        except Exception as exc:
            logger.error("%s/%s: %s", name, method, exc)
            rows.append(BenchmarkRow(name, method, error=str(exc)))
    return rows


def run_benchmark(spec, max_workers=None):
    """Run every image of the corpus through every method.

    Rows come back in corpus order, then method order. The noise for image
    ``i`` is drawn from a stream seeded by ``(seed, i)``, so results do not
    depend on the worker count.
    """
    workers = max_workers or worker_count()
    jobs = list(enumerate(spec.corpus))
    if workers == 1 or len(jobs) == 1:
        results = [_run_image(i, p, spec) for i, p in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda job: _run_image(job[0], job[1], spec), jobs))
    return [row for rows in results for row in rows]


def rows_to_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        d = row.to_dict()
        writer.writerow(["" if d[c] is None else _csv_value(d[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def _csv_value(value):
    if isinstance(value, float):
        return repr(value)
    return value


def rows_to_json(rows):
    return json.dumps([row.to_dict() for row in rows], indent=2) + "\n"
