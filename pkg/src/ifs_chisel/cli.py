"""Command-line front door wiring the library pipelines to files and stdout.

Subcommands: ellipse, verify, iterate, hausdorff, locus, attractor. All
randomness comes from explicit --seed flags, so identical argv produces
byte-identical output. Exit codes: 0 success, 1 usage or input errors,
2 verification failure, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .errors import ChiselError, ResourceLimit
from .geometry import Box
from .ifs import BUILTIN_NAMES, builtin, parse_ifs
from .discrete import hausdorff_distance, rasterize_region
from .region import (
    bounding_box,
    contains,
    custom_region,
    ellipse_params,
    verify_invariance,
)
from .iterate import attractor_estimate, deletion_iterate, forward_iterate, trace_csv
from .render import (
    format_float,
    pbm_bytes,
    points_csv_bytes,
    read_points_csv,
    render_locus,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAIL = 2
EXIT_RESOURCE = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _parse_point(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise _UsageError(f"expected X,Y, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise _UsageError(f"expected numeric X,Y, got {text!r}") from None


def _parse_box(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise _UsageError(f"expected X0,Y0,X1,Y1, got {text!r}")
    try:
        return Box(*(float(p) for p in parts))
    except ValueError:
        raise _UsageError(f"expected numeric X0,Y0,X1,Y1, got {text!r}") from None


def _load_system(args):
    if args.builtin is not None:
        return builtin(args.builtin)
    try:
        data = Path(args.ifs).read_bytes()
    except OSError as exc:
        raise _UsageError(f"cannot read {args.ifs}: {exc}") from exc
    return parse_ifs(data)


def _add_system_flags(parser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--ifs", metavar="FILE", help="IFS JSON document")
    group.add_argument(
        "--builtin", choices=BUILTIN_NAMES, help="gallery system by name"
    )


def _write_atomic(path: Path, data: bytes):
    """Write via a temp file in the same directory, then rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _fmt(value) -> str:
    return f"{value:.12g}"


def _cmd_ellipse(args) -> int:
    system = _load_system(args)
    ellipse = ellipse_params(system)
    if args.json:
        doc = {
            "foci": [[x, y] for x, y in ellipse.foci],
            "lambda_max": ellipse.lambda_max,
            "d_max": ellipse.d_max,
            "m_threshold": ellipse.m_threshold,
        }
        print(json.dumps(doc))
    else:
        foci = " ".join(f"({_fmt(x)}, {_fmt(y)})" for x, y in ellipse.foci)
        print(f"foci: {foci}")
        print(f"lambda = {_fmt(ellipse.lambda_max)}")
        print(f"D = {_fmt(ellipse.d_max)}")
        print(f"M = {_fmt(ellipse.m_threshold)}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    system = _load_system(args)
    region = ellipse_params(system)
    if args.focus or args.threshold is not None:
        foci = (
            [_parse_point(p) for p in args.focus] if args.focus else region.foci
        )
        threshold = (
            args.threshold if args.threshold is not None else region.m_threshold
        )
        region = custom_region(foci, threshold)
    report = verify_invariance(system, region, args.samples, args.seed)
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


def _cmd_iterate(args) -> int:
    system = _load_system(args)
    out_dir = Path(args.out)
    if args.mode == "forward":
        if args.seed_point is None:
            raise _UsageError("forward mode needs --seed-point X,Y")
        seed = _parse_point(args.seed_point)
        trace = forward_iterate(system, [seed], args.n)
        for k, stage in enumerate(trace.stages):
            _write_atomic(out_dir / f"stage_{k:03}.csv", points_csv_bytes(stage))
    else:
        if args.resolution is None:
            raise _UsageError("deletion mode needs --resolution R")
        ellipse = ellipse_params(system)
        b0 = rasterize_region(
            lambda pts: contains(ellipse, pts),
            bounding_box(ellipse),
            args.resolution,
        )
        trace = deletion_iterate(system, b0, args.n)
        for k, stage in enumerate(trace.stages):
            _write_atomic(out_dir / f"stage_{k:03}.pbm", pbm_bytes(stage))
    _write_atomic(out_dir / "trace.csv", trace_csv(trace).encode("ascii"))
    print(f"wrote {len(trace.stages)} stages to {out_dir}")
    return EXIT_OK


def _cmd_hausdorff(args) -> int:
    a = read_points_csv(args.a)
    b = read_points_csv(args.b)
    print(format_float(hausdorff_distance(a, b)))
    return EXIT_OK


def _cmd_locus(args) -> int:
    foci = read_points_csv(args.foci)
    box = _parse_box(args.box)
    result = render_locus(foci, args.sum, box, args.resolution)
    _write_atomic(Path(args.out), pbm_bytes(result.region))
    if args.boundary_out:
        _write_atomic(Path(args.boundary_out), pbm_bytes(result.boundary))
    print(f"wrote {result.region.marked_count} marked cells to {args.out}")
    return EXIT_OK


def _cmd_attractor(args) -> int:
    system = _load_system(args)
    if args.seed_point is not None:
        seed = _parse_point(args.seed_point)
    else:
        seed = tuple(system.fixed_points[0])
    points = attractor_estimate(system, args.eps, seed)
    _write_atomic(Path(args.out), points_csv_bytes(points))
    print(f"wrote {len(points)} points to {args.out}")
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="ifs-chisel", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("ellipse", help="print invariant-region constants")
    _add_system_flags(p)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(handler=_cmd_ellipse)

    p = sub.add_parser("verify", help="check f_i(B) stays inside B by sampling")
    _add_system_flags(p)
    p.add_argument("--samples", type=int, default=10000, metavar="N")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.add_argument(
        "--threshold",
        type=float,
        default=None,
        metavar="M",
        help="override the region threshold (lab use; no invariance claim)",
    )
    p.add_argument(
        "--focus",
        action="append",
        metavar="X,Y",
        help="override region foci (repeatable; lab use)",
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("iterate", help="run an attractor pipeline to files")
    _add_system_flags(p)
    p.add_argument("--mode", choices=("forward", "deletion"), required=True)
    p.add_argument("--n", type=int, required=True, metavar="K")
    p.add_argument("--seed-point", metavar="X,Y", help="forward-mode seed point")
    p.add_argument(
        "--resolution", type=int, metavar="R", help="deletion-mode grid resolution"
    )
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(handler=_cmd_iterate)

    p = sub.add_parser("hausdorff", help="distance between two CSV point sets")
    p.add_argument("--a", required=True, metavar="FILE")
    p.add_argument("--b", required=True, metavar="FILE")
    p.set_defaults(handler=_cmd_hausdorff)

    p = sub.add_parser("locus", help="render a distance-sum locus to PBM")
    p.add_argument("--foci", required=True, metavar="FILE", help="foci CSV")
    p.add_argument("--sum", type=float, required=True, metavar="S")
    p.add_argument("--box", required=True, metavar="X0,Y0,X1,Y1")
    p.add_argument("--resolution", type=int, required=True, metavar="R")
    p.add_argument("--out", required=True, metavar="FILE")
    p.add_argument("--boundary-out", metavar="FILE", help="also write contour cells")
    p.set_defaults(handler=_cmd_locus)

    p = sub.add_parser("attractor", help="eps-close attractor estimate to CSV")
    _add_system_flags(p)
    p.add_argument("--eps", type=float, required=True, metavar="E")
    p.add_argument("--out", required=True, metavar="FILE")
    p.add_argument(
        "--seed-point",
        metavar="X,Y",
        help="seed point (default: the first map's fixed point)",
    )
    p.set_defaults(handler=_cmd_attractor)
    return parser


def run(argv) -> int:
    """Execute one CLI invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "handler", None) is None:
            raise _UsageError("a subcommand is required (see --help)")
        return args.handler(args)
    except SystemExit as exc:  # argparse --help/--version
        return int(exc.code or 0)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ChiselError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
