"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 input/format error, 4 degenerate input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import gaussian, imageio, otsu, pipeline, ringcheck, synth
from .errors import (DegenerateHistogram, EmptyImage, ImageFormatError, IndexOutOfRange,
                     InvalidSigma, ShapeOutOfBounds, ThreshForgeError, TooFewDistinctPoints)
from .kmeans import KMeansConfig, cluster_image

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_DEGENERATE = 0, 2, 3, 4
DEGENERATE = (DegenerateHistogram, EmptyImage, TooFewDistinctPoints)


class UsageError(Exception):
    pass


def _dump_json(obj, path):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _say(args, text):
    # keep stdout clean when a report is streamed there
    if getattr(args, "report", None) != "-":
        print(text)


def _select_rule(text: str):
    if text in ("brightest", "largest"):
        return text
    if text.startswith("index:"):
        try:
            return int(text.split(":", 1)[1])
        except ValueError:
            pass
    raise argparse.ArgumentTypeError(f"expected brightest, largest or index:N, got {text!r}")


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def cmd_otsu(args):
    img = imageio.read_image(args.input)
    mask, report = pipeline.binarize_classic(img)
    if args.out:
        imageio.write_image(args.out, mask)
    if args.report:
        _dump_json(report.to_dict(timings=not args.no_timings), args.report)
    _say(args, f"threshold {report.threshold_report.threshold}")


def cmd_binarize(args):
    img = imageio.read_image(args.input)
    if args.method == "classic":
        mask, report = pipeline.binarize_classic(img)
    else:
        km = KMeansConfig(k=args.k, init="random" if args.seed is not None else "quantile",
                          seed=args.seed)
        config = pipeline.PipelineConfig(k=args.k, select=args.select, sigma=args.sigma,
                                         kmeans=km, spatial=args.spatial, order=args.order)
        mask, report = pipeline.binarize_improved(img, config)
    if args.out:
        imageio.write_image(args.out, mask)
    if args.report:
        _dump_json(report.to_dict(timings=not args.no_timings), args.report)
    _say(args, f"threshold {report.threshold_report.threshold}")


def cmd_blur(args):
    kernel = gaussian.kernel_1d(args.sigma)
    if args.dump_kernel:
        print(json.dumps(kernel.tolist()))
    if args.input is None:
        if not args.dump_kernel:
            raise UsageError("blur needs an input image unless --dump-kernel is given")
        return
    img = imageio.read_image(args.input)
    out = gaussian.smooth(img, args.sigma)
    if args.out:
        imageio.write_image(args.out, out)


def cmd_kmeans(args):
    img = imageio.read_image(args.input)
    config = KMeansConfig(k=args.k, init="random" if args.seed is not None else "quantile",
                          seed=args.seed, max_iter=args.max_iter)
    result, label_map = cluster_image(img, config, spatial=args.spatial)
    if args.labels_out:
        scale = 255 // max(1, args.k - 1)
        imageio.write_image(args.labels_out, (label_map * scale).astype(np.uint8))
    if args.report:
        _dump_json(result.summary(), args.report)
    _say(args, f"iterations {result.iterations} inertia {result.inertia:.6g}")


def _spec_from_args(args, seed):
    shape = synth.default_shape(args.shape, args.width, args.height)
    if args.radius is not None:
        cls = synth.Disk if isinstance(shape, synth.Disk) else synth.TriLobe
        shape = cls(shape.cx, shape.cy, args.radius)
    return synth.SynthSpec(args.width, args.height, args.fg, args.bg, shape,
                           args.noise, seed)


def cmd_synth(args):
    spec = _spec_from_args(args, args.seed)
    img, truth = synth.generate(spec)
    imageio.write_image(args.out, img)
    if args.truth_out:
        imageio.write_image(args.truth_out, truth)


def cmd_compare(args):
    spec = _spec_from_args(args, 1)
    config = pipeline.PipelineConfig(k=args.k, select=args.select, sigma=args.sigma,
                                     order=args.order)
    report = synth.run_comparison(spec, config, args.seeds)
    if args.csv:
        Path(args.csv).write_text(report.to_csv())
    if args.report:
        _dump_json(report.to_dict(), args.report)
    _say(args, f"classic mean {report.classic_mean:.6f}  improved mean "
               f"{report.improved_mean:.6f}  improved wins "
               f"{report.improved_wins}/{len(report.seeds)}")


def cmd_ringcheck(args):
    if args.sample is not None:
        report = ringcheck.verify_ring_axioms("sampled", n=args.sample, seed=args.seed)
    else:
        report = ringcheck.verify_ring_axioms("exhaustive")
    for r in report.results if args.report != "-" else ():
        status = "PASS" if r.passed else "FAIL"
        tag = " (extra)" if r.extra else ""
        ce = f"  counterexample {r.counterexample}" if r.counterexample else ""
        print(f"{status}  {r.name}{tag}{ce}")
    if args.report:
        _dump_json(report.to_dict(), args.report)
    return EXIT_OK if report.passed else 1


def _add_synth_args(p, single_seed):
    p.add_argument("--shape", choices=["disk", "tri-lobe"], default="disk")
    p.add_argument("--fg", type=int, default=180)
    p.add_argument("--bg", type=int, default=60)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--width", type=int, default=128)
    p.add_argument("--height", type=int, default=128)
    p.add_argument("--radius", type=float, default=None)
    if single_seed:
        p.add_argument("--seed", type=int, required=True)


def _add_improved_args(p):
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--select", type=_select_rule, default="brightest")
    p.add_argument("--sigma", type=_positive_float, default=2.0)
    p.add_argument("--order", choices=pipeline.ORDERS, default="cluster-first")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thresh-forge",
                                     description="Otsu and cluster-then-threshold binarization")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("otsu", help="classic Otsu binarization")
    p.add_argument("input")
    p.add_argument("--out")
    p.add_argument("--report")
    p.add_argument("--no-timings", action="store_true")
    p.set_defaults(func=cmd_otsu)

    p = sub.add_parser("binarize", help="classic or improved binarization")
    p.add_argument("input")
    p.add_argument("--method", choices=["classic", "improved"], default="improved")
    _add_improved_args(p)
    p.add_argument("--spatial", action="store_true")
    p.add_argument("--seed", type=int, help="seeded random K-means init")
    p.add_argument("--out")
    p.add_argument("--report")
    p.add_argument("--no-timings", action="store_true")
    p.set_defaults(func=cmd_binarize)

    p = sub.add_parser("blur", help="Gaussian smoothing")
    p.add_argument("input", nargs="?")
    p.add_argument("--sigma", type=_positive_float, required=True)
    p.add_argument("--out")
    p.add_argument("--dump-kernel", action="store_true")
    p.set_defaults(func=cmd_blur)

    p = sub.add_parser("kmeans", help="K-means clustering of pixel intensities")
    p.add_argument("input")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--spatial", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--labels-out")
    p.add_argument("--report")
    p.set_defaults(func=cmd_kmeans)

    p = sub.add_parser("synth", help="render a synthetic image and its truth mask")
    _add_synth_args(p, single_seed=True)
    p.add_argument("--out", required=True)
    p.add_argument("--truth-out")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("compare", help="classic vs improved on synthetic images")
    _add_synth_args(p, single_seed=False)
    _add_improved_args(p)
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--csv")
    p.add_argument("--report")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("ringcheck", help="verify the ring axioms of Z/256")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--exhaustive", action="store_true")
    group.add_argument("--sample", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")
    p.set_defaults(func=cmd_ringcheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"thresh-forge: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DEGENERATE as exc:
        print(f"thresh-forge: degenerate input: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ImageFormatError, ShapeOutOfBounds, InvalidSigma, IndexOutOfRange) as exc:
        print(f"thresh-forge: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ThreshForgeError, ValueError) as exc:
        print(f"thresh-forge: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
