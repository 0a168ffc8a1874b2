"""Command-line interface: ``stbinterp upscale | evaluate | benchmark``."""

import argparse
import logging
import sys
from pathlib import Path

from . import bench
from .exceptions import StbError
from .interpolate import ANCHORS, GRADIENT_MASKS, StbParams

logger = logging.getLogger("stbinterp")


def _param_parser():
    defaults = StbParams()
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("algorithm parameters")
    g.add_argument("--sigma", type=float, default=defaults.sigma, help="structure tensor Gaussian scale")
    g.add_argument("--d", dest="half_size", type=int, default=defaults.half_size,
                   help="neighborhood half-size D")
    g.add_argument("--beta", type=float, default=defaults.beta, help="distance decay")
    g.add_argument("--gamma", type=float, default=defaults.gamma, help="tangent alignment gain")
    g.add_argument("--threshold", type=float, default=defaults.threshold,
                   help="uniform-region threshold T on the [0, 100] gradient scale")
    g.add_argument("--corner-ratio", type=float, default=defaults.corner_ratio)
    g.add_argument("--corner-abs", type=float, default=defaults.corner_abs)
    g.add_argument("--mask", dest="gradient_mask", choices=GRADIENT_MASKS, default=defaults.gradient_mask)
    g.add_argument("--anchor", choices=ANCHORS, default=defaults.anchor)
    return p


def _params_from(args):
    return StbParams(
        sigma=args.sigma, half_size=args.half_size, beta=args.beta, gamma=args.gamma,
        threshold=args.threshold, corner_ratio=args.corner_ratio, corner_abs=args.corner_abs,
        gradient_mask=args.gradient_mask, anchor=args.anchor,
    )


def build_parser():
    params = _param_parser()
    parser = argparse.ArgumentParser(prog="stbinterp", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    up = sub.add_parser("upscale", parents=[params], help="upscale one image by two")
    up.add_argument("--input", required=True)
    up.add_argument("--output", required=True)
    up.add_argument("--rgb", action="store_true", help="keep color (default: luma only)")

    ev = sub.add_parser("evaluate", help="compare a reconstruction with its original")
    ev.add_argument("--original", required=True)
    ev.add_argument("--reconstructed", required=True)

    bm = sub.add_parser("benchmark", parents=[params],
                        help="downsample, reconstruct and measure every image of a corpus")
    bm.add_argument("--corpus", required=True, help="directory of .pgm/.png images")
    bm.add_argument("--noise-variance", type=float, default=0.0,
                    help="Gaussian noise variance added to the downsampled image ([0, 1] scale)")
    bm.add_argument("--seed", type=int, default=0)
    bm.add_argument("--methods", default="stb,bilinear")
    bm.add_argument("--format", choices=("csv", "json"), default="csv")
    bm.add_argument("--out", required=True, help="report path, '-' for stdout")
    bm.add_argument("--dump-classes", action="store_true",
                    help="write per-image classification maps next to the report")
    return parser


def _cmd_upscale(args):
    bench.upscale_file(args.input, args.output, _params_from(args), "rgb" if args.rgb else "gray")
    return 0


def _cmd_evaluate(args):
    report = bench.evaluate_files(args.original, args.reconstructed)
    print(report.to_json())
    return 0


def _cmd_benchmark(args):
    out = None if args.out == "-" else Path(args.out)
    dump_dir = None
    if args.dump_classes:
        dump_dir = out.parent if out is not None else Path.cwd()
    spec = bench.ExperimentSpec(
        corpus=bench.list_corpus(args.corpus),
        params=_params_from(args),
        noise_variance=args.noise_variance,
        seed=args.seed,
        methods=tuple(m.strip() for m in args.methods.split(",") if m.strip()),
        report_format=args.format,
        dump_classes_dir=dump_dir,
    )
    rows = bench.run_benchmark(spec)
    text = bench.rows_to_csv(rows) if args.format == "csv" else bench.rows_to_json(rows)
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)
    failed = sum(not r.ok for r in rows)
    if failed:
        logger.error("%d of %d rows failed", failed, len(rows))
        return 1
    return 0


_COMMANDS = {"upscale": _cmd_upscale, "evaluate": _cmd_evaluate, "benchmark": _cmd_benchmark}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except (StbError, OSError) as exc:
        logger.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
