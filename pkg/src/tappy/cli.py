"""Command-line front door.

    tappy analyze <file> --device <id>   score a layout, exit 1 on failures
    tappy predict ...                    one-off prediction for a single size
    tappy size-for --rate R              inverse sizing
    tappy devices                        list the device registry
    tappy serve                          run the local HTTP API

Exit codes: 0 all elements passed (or nothing to check), 1 at least one
element below the threshold, 2 usage or input error. The device registry
comes from ``--devices FILE`` if given, else the ``TAPPY_DEVICES``
environment variable, else the built-in table.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import __version__
from .devices import DeviceRegistry, load_registry, mm_to_px, px_to_mm
from .errors import TappyError
from .layout import ElementSelection, parse_document
from .model import (
    PhysicalSize,
    min_square_size_for_rate,
    min_width_for_rate,
    success_rate,
)
from .report import DEFAULT_THRESHOLD, REPORT_FORMATS, analyze_document, render_report
from .service import DEFAULT_PORT, ServiceConfig
from .service import serve as run_service

DEVICES_ENV_VAR = "TAPPY_DEVICES"


def _registry_for(args: argparse.Namespace) -> DeviceRegistry:
    path = getattr(args, "devices", None) or os.environ.get(DEVICES_ENV_VAR)
    return load_registry(path) if path else load_registry()


def _fmt_px(value: float) -> str:
    return str(int(value)) if value == int(value) else format(value, "g")


def _ceil_to(value: float, decimals: int) -> float:
    scale = 10**decimals
    return math.ceil(value * scale - 1e-12) / scale


def _cmd_analyze(args: argparse.Namespace) -> int:
    registry = _registry_for(args)
    doc = parse_document(args.file)
    device_id = args.device or doc.default_device
    if device_id is None:
        raise TappyError(
            "no device: pass --device or set default_device in the document"
        )
    profile = registry.get(device_id)
    selection = ElementSelection(
        include_containers=args.all,
        name_glob=args.select,
        explicit_only=args.explicit_only,
    )
    report = analyze_document(
        doc,
        profile,
        threshold=args.threshold,
        selection=selection,
        timestamp=not args.reproducible,
    )
    sys.stdout.write(render_report(report, args.format))
    return 0 if report.all_passed else 1


def _cmd_predict(args: argparse.Namespace) -> int:
    lines = []
    if args.mm is not None:
        if args.px is not None:
            raise TappyError("use either --mm or --px, not both")
        width_mm, height_mm = args.mm
        prediction = success_rate(PhysicalSize(width_mm, height_mm))
        lines.append(f"width:   {width_mm:.3f} mm")
        lines.append(f"height:  {height_mm:.3f} mm")
    else:
        if args.px is None or args.device is None:
            raise TappyError("predict needs --mm W H, or --px W H together with --device")
        registry = _registry_for(args)
        profile = registry.get(args.device)
        width_px, height_px = args.px
        width_mm = px_to_mm(width_px, profile)
        height_mm = px_to_mm(height_px, profile)
        prediction = success_rate(PhysicalSize(width_mm, height_mm))
        lines.append(f"device:  {profile.id} ({profile.display_name})")
        lines.append(f"width:   {_fmt_px(width_px)} px = {width_mm:.3f} mm")
        lines.append(f"height:  {_fmt_px(height_px)} px = {height_mm:.3f} mm")
    lines.append(f"sigma_x: {prediction.sigma_x_mm:.3f} mm")
    lines.append(f"sigma_y: {prediction.sigma_y_mm:.3f} mm")
    lines.append(f"success rate: {prediction.success_rate * 100:.2f}%")
    print("\n".join(lines))
    return 0


def _cmd_size_for(args: argparse.Namespace) -> int:
    if args.height_mm is not None:
        size_mm = min_width_for_rate(args.rate, args.height_mm)
        label = f"minimum width at height {args.height_mm:.3f} mm"
    else:
        size_mm = min_square_size_for_rate(args.rate)
        label = "minimum square side"
    # Display values round up so the printed size still meets the rate.
    print(f"{label}: {_ceil_to(size_mm, 3):.3f} mm")
    if args.device is not None:
        profile = _registry_for(args).get(args.device)
        size_px = _ceil_to(mm_to_px(size_mm, profile), 2)
        print(f"on {profile.id}: {size_px:.2f} logical px")
    return 0


def _cmd_devices(args: argparse.Namespace) -> int:
    registry = _registry_for(args)
    rows = [
        (
            profile.id,
            profile.display_name,
            f"{profile.ppi:g} ppi",
            f"{profile.scale_factor}x",
            f"{_fmt_px(profile.logical_width)}x{_fmt_px(profile.logical_height)}",
        )
        for profile in registry
    ]
    widths = [max(len(row[col]) for row in rows) for col in range(len(rows[0]))]
    for row in rows:
        print("  ".join(cell.ljust(widths[col]) for col, cell in enumerate(row)).rstrip())
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    registry = _registry_for(args)
    run_service(ServiceConfig(port=args.port, host=args.host), registry)
    return 0


def _add_devices_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--devices",
        metavar="FILE",
        help=f"device registry file (overrides ${DEVICES_ENV_VAR} and the built-in table)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tappy",
        description="Predict tap success rates of smartphone UI elements.",
    )
    parser.add_argument("--version", action="version", version=f"tappy {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="score all elements of a layout file")
    analyze.add_argument("file", help="layout JSON file")
    analyze.add_argument("--device", metavar="ID", help="device id from the registry")
    analyze.add_argument(
        "--threshold",
        type=float,
        default=DEFAULT_THRESHOLD,
        metavar="R",
        help="minimum acceptable success rate (default %(default)s)",
    )
    analyze.add_argument("--select", metavar="GLOB", help="only score nodes whose name matches")
    group = analyze.add_mutually_exclusive_group()
    group.add_argument(
        "--all", action="store_true", help="also score container nodes"
    )
    group.add_argument(
        "--explicit-only",
        action="store_true",
        help="only score nodes flagged tappable: true",
    )
    analyze.add_argument(
        "--format", choices=REPORT_FORMATS, default="text", help="output format"
    )
    analyze.add_argument(
        "--reproducible",
        action="store_true",
        help="omit the timestamp so output is byte-identical across runs",
    )
    _add_devices_flag(analyze)
    analyze.set_defaults(func=_cmd_analyze)

    predict = sub.add_parser("predict", help="predict the rate for a single size")
    predict.add_argument("--device", metavar="ID", help="device id (required with --px)")
    predict.add_argument(
        "--px", nargs=2, type=float, metavar=("W", "H"), help="size in logical pixels"
    )
    predict.add_argument(
        "--mm", nargs=2, type=float, metavar=("W", "H"), help="size in millimetres"
    )
    _add_devices_flag(predict)
    predict.set_defaults(func=_cmd_predict)

    size_for = sub.add_parser("size-for", help="smallest size reaching a target rate")
    size_for.add_argument("--rate", type=float, required=True, metavar="R")
    size_for.add_argument(
        "--height-mm",
        type=float,
        metavar="H",
        help="fix the height and solve for the width",
    )
    size_for.add_argument("--device", metavar="ID", help="also report logical px for this device")
    _add_devices_flag(size_for)
    size_for.set_defaults(func=_cmd_size_for)

    devices = sub.add_parser("devices", help="list the device registry")
    _add_devices_flag(devices)
    devices.set_defaults(func=_cmd_devices)

    serve = sub.add_parser("serve", help="run the local HTTP JSON API")
    serve.add_argument("--port", type=int, default=DEFAULT_PORT, metavar="N")
    serve.add_argument("--host", default="127.0.0.1", metavar="ADDR")
    _add_devices_flag(serve)
    serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TappyError as exc:
        print(f"tappy: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
