"""Batch command-line front end.

Every subcommand is a thin adapter over the library: it loads files,
invokes exactly one pipeline, and writes files or prints a report, so
results are byte-identical to direct library calls.

Exit codes: 0 success, 1 I/O error, 2 invalid arguments, 3 malformed
container or image format.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .codec import ContainerError, Ro3Container, decode, denoise_ro3, encode, get_codec
from .deblur import deblur
from .denoise import denoise_threshold
from .image_io import ImageBuf, ImageFormatError, add_gaussian_noise, load_image, save_image
from .metrics import Histogram, compare, histogram
from .ro3 import DETAIL_GAINS, Ro3Params, superresolve_once, superresolve_twice
from .wavelet import get_basis

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_FORMAT = 3


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"{text} is not > 0")
    return value


def _nonneg_float(text: str) -> float:
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text} is negative")
    return value


def _quality(text: str) -> int:
    value = int(text)
    if not 1 <= value <= 100:
        raise argparse.ArgumentTypeError(f"quality {text} outside 1..100")
    return value


def _levels(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"levels {text} must be >= 1")
    return value


def _add_io(sub, output=True):
    sub.add_argument("--input", "-i", required=True, help="input image path")
    if output:
        sub.add_argument("--output", "-o", required=True, help="output path")


def _ro3_params(args) -> Ro3Params:
    return Ro3Params(
        ap=args.ap,
        basis=get_basis(args.basis),
        detail_gain=args.detail_gain,
    )


def _cmd_sr(args) -> int:
    img = load_image(args.input)
    params = _ro3_params(args)
    if args.factor == 2:
        out = superresolve_once(img, params)
    else:
        out = superresolve_twice(img, params)
    save_image(out, args.output)
    return EXIT_OK


def _cmd_encode(args) -> int:
    img = load_image(args.input)
    container = encode(
        img,
        basis=get_basis(args.basis),
        codec=get_codec(args.codec),
        quality=args.quality,
        ap=args.ap,
        recommend_deblur=args.recommend_deblur,
    )
    Path(args.output).write_bytes(container.serialize())
    return EXIT_OK


def _cmd_decode(args) -> int:
    container = Ro3Container.parse(Path(args.input).read_bytes())
    params = None
    if args.ap is not None or args.detail_gain != "faithful":
        params = Ro3Params(
            ap=args.ap if args.ap is not None else float(container.ap),
            basis=get_basis({0: "haar", 1: "db4"}.get(container.basis_id, "haar")),
            detail_gain=args.detail_gain,
        )
    out = decode(container, params=params, apply_deblur=args.deblur)
    save_image(out, args.output)
    return EXIT_OK


def _cmd_denoise(args) -> int:
    img = load_image(args.input)
    if args.method == "ro3":
        out = denoise_ro3(img, _ro3_params(args))
    else:
        out = denoise_threshold(
            img, basis=get_basis(args.basis), levels=args.levels, mode=args.method
        )
    save_image(out, args.output)
    return EXIT_OK


def _cmd_deblur(args) -> int:
    save_image(deblur(load_image(args.input)), args.output)
    return EXIT_OK


def _cmd_metrics(args) -> int:
    ref = load_image(args.ref)
    test = load_image(args.test)
    uncompressed = compressed = None
    if args.container is not None:
        compressed = Path(args.container).stat().st_size
        uncompressed = ref.orig_width * ref.orig_height * ref.channels
    report = compare(ref, test, uncompressed, compressed)
    print(json.dumps(report.to_dict()))
    return EXIT_OK


def _combined_histogram(img: ImageBuf) -> Histogram:
    parts = [histogram(p) for p in img.planes]
    return Histogram(
        bins=sum(h.bins for h in parts),
        total=sum(h.total for h in parts),
    )


def _cmd_histogram(args) -> int:
    img = load_image(args.input)
    h = _combined_histogram(img)
    lines = [f"{i},{int(count)}" for i, count in enumerate(h.bins)]
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_noise(args) -> int:
    img = load_image(args.input)
    out = add_gaussian_noise(img, mean=args.mean, std=args.std, seed=args.seed)
    save_image(out, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ro3kit",
        description="Wavelet Rule-of-Three superresolution, catalyst codec, "
        "denoising, deblurring and metrics",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("sr", help="superresolve an image x2 or x4")
    _add_io(p)
    p.add_argument("--factor", type=int, choices=(2, 4), default=2)
    p.add_argument("--basis", choices=("haar", "db4"), default="haar")
    p.add_argument("--ap", type=_positive_float, default=1e-4)
    p.add_argument("--detail-gain", choices=DETAIL_GAINS, default="faithful")
    p.set_defaults(func=_cmd_sr)

    p = subs.add_parser("encode", help="compress into a catalyst container")
    _add_io(p)
    p.add_argument("--codec", choices=("store", "jpeg", "png", "jp2"), default="store")
    p.add_argument("--quality", type=_quality, default=75)
    p.add_argument("--basis", choices=("haar", "db4"), default="haar")
    p.add_argument("--ap", type=_positive_float, default=1e-4)
    p.add_argument("--recommend-deblur", action="store_true")
    p.set_defaults(func=_cmd_encode)

    p = subs.add_parser("decode", help="reconstruct an image from a container")
    _add_io(p)
    p.add_argument("--deblur", action="store_true", help="sharpen after decoding")
    p.add_argument("--ap", type=_positive_float, default=None)
    p.add_argument("--detail-gain", choices=DETAIL_GAINS, default="faithful")
    p.set_defaults(func=_cmd_decode)

    p = subs.add_parser("denoise", help="wavelet denoising")
    _add_io(p)
    p.add_argument("--method", choices=("soft", "hard", "ro3"), default="soft")
    p.add_argument("--basis", choices=("haar", "db4"), default="haar")
    p.add_argument("--levels", type=_levels, default=1)
    p.add_argument("--ap", type=_positive_float, default=1e-4)
    p.add_argument("--detail-gain", choices=DETAIL_GAINS, default="faithful")
    p.set_defaults(func=_cmd_denoise)

    p = subs.add_parser("deblur", help="apply the fixed sharpening mask")
    _add_io(p)
    p.set_defaults(func=_cmd_deblur)

    p = subs.add_parser("metrics", help="MSE/PSNR/MAE (and CR/PSS) as JSON")
    p.add_argument("--ref", required=True, help="reference image")
    p.add_argument("--test", required=True, help="image under test")
    p.add_argument("--container", default=None, help="container file for CR/PSS")
    p.set_defaults(func=_cmd_metrics)

    p = subs.add_parser("histogram", help="emit the 256-bin histogram as CSV")
    _add_io(p, output=False)
    p.add_argument("--output", "-o", default=None, help="CSV path (default stdout)")
    p.set_defaults(func=_cmd_histogram)

    p = subs.add_parser("noise", help="add seeded Gaussian noise")
    _add_io(p)
    p.add_argument("--mean", type=float, default=0.0)
    p.add_argument("--std", type=_nonneg_float, default=0.02)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_noise)

    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ImageFormatError, ContainerError) as exc:
        print(f"ro3kit: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except OSError as exc:
        print(f"ro3kit: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"ro3kit: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
