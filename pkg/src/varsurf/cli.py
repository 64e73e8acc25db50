"""Command-line driver.

    varsurf analyze --surface ruled1 --r 1 --d 1
    varsurf sweep-ruled --start 0.05 --stop 2 --step 0.05 --out ruled.csv --plot
    varsurf sweep-hemi --step 0.2 --out hemi.csv --plot

Exit codes: 0 ok, 2 config, 3 geometry, 4 IO, 5 empty output.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import bench
from .bench import ConfigError, EmptyOutput, RunConfig
from .errors import InvalidGeometry

log = logging.getLogger("varsurf")

EXIT_OK, EXIT_CONFIG, EXIT_GEOMETRY, EXIT_IO, EXIT_EMPTY = 0, 2, 3, 4, 5


def _corners(text: str):
    try:
        pts = json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"--corners must be JSON: {exc}") from exc
    if not (isinstance(pts, list) and len(pts) == 4 and all(len(p) == 3 for p in pts)):
        raise argparse.ArgumentTypeError("--corners needs four [x, y, z] triples")
    return pts


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run config; flags override its values")
    common.add_argument("--surface", choices=bench.SURFACES)
    common.add_argument("--r", type=float)
    common.add_argument("--d", type=float)
    common.add_argument("--b", type=float)
    common.add_argument("--c", type=float)
    common.add_argument("--corners", type=_corners, help="JSON list [r1, r2, r3bar, r4bar]")
    common.add_argument("--start", type=float)
    common.add_argument("--stop", type=float)
    common.add_argument("--step", type=float)
    common.add_argument("--quad-order", type=int, dest="quad_order",
                        help="fixed Gauss order per axis (default: 32 for polynomial patches, adaptive otherwise)")
    common.add_argument("--quad-tol", type=float, dest="quad_tol",
                        help="relative tolerance of adaptive quadrature")
    common.add_argument("--out", help="output file (JSON for analyze, CSV for sweeps); stdout if omitted")
    common.add_argument("--plot", action="store_true", default=None,
                        help="also write SVG plots next to --out")
    common.add_argument("--minimize", choices=("mu2", "area"))
    common.add_argument("--workers", type=int)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="varsurf", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="analyze one surface")
    sub.add_parser("sweep-ruled", parents=[common], help="sweep r for the ruled family")
    sub.add_parser("sweep-hemi", parents=[common], help="sweep (b, c) for the hemiellipsoid")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig.from_json(args.config) if args.config else RunConfig()
    keys = [f for f in vars(RunConfig()) if hasattr(args, f)]
    return cfg.merged({k: getattr(args, k) for k in keys}).validate()


def _write(text: str, out):
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text)


def _plots(records, out, xlabel):
    if out is None:
        raise ConfigError("--plot needs --out to place the SVG files")
    stem = Path(out).with_suffix("")
    for kind in ("tmin", "decrease"):
        path = bench.emit_svg(records, kind, f"{stem}_{kind}.svg", xlabel=xlabel)
        log.info("wrote %s", path)


def _run(args: argparse.Namespace) -> int:
    cfg = _config(args)
    if args.command == "analyze":
        s, res = bench.analyze(cfg)
        _write(bench.result_json(s, res), cfg.out)
        return EXIT_OK

    if args.command == "sweep-ruled":
        family = cfg.surface or "ruled1"
        if family not in ("ruled1", "ruled2"):
            raise ConfigError("sweep-ruled works on ruled1 or ruled2")
        records, xlabel = bench.sweep_ruled(cfg, family), "r"
    else:
        records, xlabel = bench.sweep_hemi(cfg), "b"

    if cfg.out is None:
        sys.stdout.write(bench.csv_text(records))
    else:
        bench.emit_csv(records, cfg.out)
    if cfg.plot:
        _plots(records, cfg.out, xlabel)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return _run(args)
    except ConfigError as exc:
        return _fail(EXIT_CONFIG, f"config error: {exc}")
    except InvalidGeometry as exc:
        return _fail(EXIT_GEOMETRY, f"geometry error: {exc}")
    except EmptyOutput as exc:
        return _fail(EXIT_EMPTY, f"empty output: {exc}")
    except OSError as exc:
        return _fail(EXIT_IO, f"I/O error on {exc.filename}: {exc.strerror or exc}")


def _fail(code: int, message: str) -> int:
    print(f"varsurf: {message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
