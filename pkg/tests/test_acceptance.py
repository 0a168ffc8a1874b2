"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary.
Reference values for Lena come from the published STB results on the
512x512 grayscale image with default parameters.
"""

import math
import time

import numpy as np
import pytest

from stbinterp import bench
from stbinterp.cli import main
from stbinterp.image_core import crop, naive_downsample
from stbinterp.interpolate import StbParams, bilinear_upscale, stb_upscale
from stbinterp.metrics import mse, psnr, ssim
from stbinterp.tensor import TensorField, eigen_decompose

from _synthetic import LENA, diagonal_edge

LENA_PSNR = 33.99
LENA_SSIM = 0.9147
LENA_NOISY_PSNR = 30.17
PSNR_BAND = 2.0
SSIM_BAND = 0.03
NOISE_VARIANCE = 0.001


@pytest.fixture
def criterion(acceptance_log):
    def check(label, ok, detail):
        acceptance_log.append(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        assert ok, f"{label}: {detail}"

    return check


def test_ac01_passthrough(criterion):
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    bad = 0
    for _ in range(50):
        h, w = rng.integers(8, 65, size=2)
        lr = rng.random((h, w))
        out = stb_upscale(lr, StbParams(threshold=float(rng.uniform(0, 40))))
        bad += not np.array_equal(out[::2, ::2], lr)
    elapsed = time.perf_counter() - start
    criterion("AC1 lattice passthrough", bad == 0 and elapsed < 5.0,
              f"{50 - bad}/50 bit-exact, {elapsed:.2f} s (< 5 s)")


def test_ac02_constant_reproduction(criterion):
    worst = 0.0
    for shape, value in [((6, 6), 0.0), ((7, 11), 0.3), ((16, 16), 0.5), ((33, 20), 0.77), ((64, 64), 1.0)]:
        out = stb_upscale(np.full(shape, value), StbParams(threshold=0.0))
        worst = max(worst, float(np.abs(out - value).max()))
    criterion("AC2 constant reproduction", worst <= 1e-12, f"max deviation {worst:.3g} (<= 1e-12)")


def test_ac03_eigen_oracle(criterion):
    rng = np.random.default_rng(3)
    start = time.perf_counter()
    b = rng.normal(size=(1000, 2, 2))
    t = b @ np.transpose(b, (0, 2, 1))
    field = TensorField(t[:, 0, 0], t[:, 0, 1], t[:, 1, 1], 1.0)
    e = eigen_decompose(field)
    tr = t[:, 0, 0] + t[:, 1, 1]
    det = t[:, 0, 0] * t[:, 1, 1] - t[:, 0, 1] ** 2
    disc = np.sqrt(tr * tr / 4 - det)
    eig_err = max(np.abs(e.d - (tr / 2 - disc)).max(), np.abs(e.dperp - (tr / 2 + disc)).max())
    resid = np.linalg.norm(np.einsum("kij,kj->ki", t, e.tangent) - e.d[:, None] * e.tangent, axis=1).max()
    trace_err = (np.abs(e.d + e.dperp - tr) / (1 + tr)).max()
    det_err = (np.abs(e.d * e.dperp - det) / (1 + tr ** 2)).max()
    elapsed = time.perf_counter() - start
    ok = eig_err <= 1e-9 and resid <= 1e-9 and trace_err <= 1e-9 and det_err <= 1e-9 and elapsed < 1.0
    criterion("AC3 eigen oracle", ok,
              f"eig {eig_err:.2g}, residual {resid:.2g}, trace {trace_err:.2g}, det {det_err:.2g}, "
              f"{elapsed:.3f} s")


def test_ac04_bilinear_equivalence(criterion):
    rng = np.random.default_rng(4)
    equal = 0
    for _ in range(20):
        h, w = rng.integers(6, 48, size=2)
        lr = rng.random((h, w))
        equal += np.array_equal(stb_upscale(lr, StbParams(threshold=100.0)), bilinear_upscale(lr))
    criterion("AC4 bilinear equivalence at T=100", equal == 20, f"{equal}/20 element-wise identical")


def test_ac05_edge_advantage(criterion):
    img = diagonal_edge(n=64, offset=0.5)
    lr = naive_downsample(img, 2)
    ref = crop(img, 63, 63)
    p_stb = psnr(ref, stb_upscale(lr))
    p_bil = psnr(ref, bilinear_upscale(lr))
    criterion("AC5 45-degree edge advantage", p_stb - p_bil >= 0.5,
              f"STB {p_stb:.2f} dB vs bilinear {p_bil:.2f} dB, margin {p_stb - p_bil:.2f} (>= 0.5)")


def test_ac06_lena_reproduction(criterion):
    start = time.perf_counter()
    row = bench.run_benchmark(bench.ExperimentSpec(corpus=[LENA], methods=("stb",)))[0]
    elapsed = time.perf_counter() - start
    assert row.ok, row.error
    p, s = row.report.psnr, row.report.ssim
    ok = abs(p - LENA_PSNR) <= PSNR_BAND and abs(s - LENA_SSIM) <= SSIM_BAND and elapsed < 30
    criterion("AC6 Lena reproduction", ok,
              f"PSNR {p:.2f} dB (ref {LENA_PSNR} +/- {PSNR_BAND}), SSIM {s:.4f} "
              f"(ref {LENA_SSIM} +/- {SSIM_BAND}), EPSNR {row.report.epsnr:.2f} dB, {elapsed:.2f} s")


def test_ac07_noise_robustness(criterion):
    spec = bench.ExperimentSpec(corpus=[LENA], noise_variance=NOISE_VARIANCE, seed=0)
    rows = {r.method: r for r in bench.run_benchmark(spec)}
    p_stb = rows["stb"].report.psnr
    p_bil = rows["bilinear"].report.psnr
    ok = abs(p_stb - LENA_NOISY_PSNR) <= PSNR_BAND and p_stb >= p_bil
    criterion("AC7 noise robustness", ok,
              f"STB {p_stb:.2f} dB (ref {LENA_NOISY_PSNR} +/- {PSNR_BAND}), bilinear {p_bil:.2f} dB")


def test_ac08_performance(criterion):
    lr = naive_downsample(bench.to_grayscale(bench.load_image(LENA)), 2)
    assert lr.shape == (256, 256)
    stb_upscale(lr)  # warm caches
    times = []
    for _ in range(3):
        start = time.perf_counter()
        out = stb_upscale(lr)
        times.append(time.perf_counter() - start)
    assert out.shape == (511, 511)
    criterion("AC8 256x256 -> 511x511 under 1 s", max(times) < 1.0,
              f"worst of 3 runs {max(times) * 1000:.0f} ms")


def test_ac09_metric_self_tests(criterion):
    rng = np.random.default_rng(9)
    x = rng.random((32, 32))
    checks = {
        "mse identical": mse(x, x) == 0.0,
        "mse example": math.isclose(mse(np.array([0.0, 0.0]), np.array([0.0, 0.2])), 0.02, rel_tol=1e-15),
        "mse symmetric": mse(x, x[::-1]) == mse(x[::-1], x),
        "psnr 20 dB": math.isclose(psnr(np.zeros(100), np.full(100, 0.1)), 20.0, abs_tol=1e-12),
        "psnr inf": psnr(x, x) == math.inf,
        "psnr scale": math.isclose(psnr(2 * x, 2 * x[::-1], 2.0), psnr(x, x[::-1]), abs_tol=1e-12),
        "ssim self": abs(ssim(x, x) - 1.0) <= 1e-12,
        "ssim inverted": ssim(0.25 + 0.5 * x, 0.75 - 0.5 * x) < 0,
    }
    failed = [k for k, v in checks.items() if not v]
    criterion("AC9 metric self-tests", not failed,
              f"{len(checks) - len(failed)}/{len(checks)} passed" + (f", failed: {failed}" if failed else ""))


def test_ac10_determinism(criterion, tmp_path, monkeypatch):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    rng = np.random.default_rng(10)
    for i in range(3):
        bench.save_image(np.clip(rng.random((24 + 4 * i, 30)) * 0.6 + 0.2, 0, 1), corpus / f"img{i}.pgm")
    bench.save_image(diagonal_edge(n=40), corpus / "edge.pgm")

    def metric_columns(path):
        lines = path.read_text().splitlines()
        cut = bench.CSV_COLUMNS.index("time_sec")
        return [",".join(line.split(",")[:cut]) for line in lines]

    columns = []
    for threads in ("1", "3", "0"):
        monkeypatch.setenv("STB_THREADS", threads)
        out = tmp_path / f"run{threads}.csv"
        assert main(["benchmark", "--corpus", str(corpus), "--noise-variance", str(NOISE_VARIANCE),
                     "--seed", "7", "--methods", "stb,bilinear", "--format", "csv", "--out", str(out)]) == 0
        columns.append(metric_columns(out))
    same = columns[0] == columns[1] == columns[2]
    criterion("AC10 determinism across STB_THREADS", same,
              f"{len(columns[0]) - 1} rows, metric columns byte-identical for STB_THREADS=1,3,0")
