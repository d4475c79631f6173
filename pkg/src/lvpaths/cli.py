"""Command line entry point: ``lvpaths --network net.geojson --out solution.json``."""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from . import __version__
from .pipeline import ConfigError, make_config, read_config, run_pipeline


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lvpaths",
        description="Identify customer paths in a low-voltage network and report what the data cannot explain.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--config", help="flat key = value file; flags given here override it")
    ap.add_argument("--network", help="GeoJSON or CSV network file")

    g = ap.add_argument_group("search")
    g.add_argument("--max-paths", type=int, help="candidate paths per customer (N)")
    g.add_argument("--max-distance", type=float, help="connection distance D in metres")
    g.add_argument("--max-length", type=float, help="maximum path length L in metres")
    g.add_argument("--alpha", type=float, help="edge reuse penalty factor (> 1)")
    g.add_argument("--customer-junction", action="store_const", const=True, help="allow customers to attach directly to junctions")
    g.add_argument("--workers", type=int, help="processes for candidate generation")

    g = ap.add_argument_group("model and solver")
    g.add_argument("--lambda", dest="lam", help='assignment penalty, a number or "auto"')
    g.add_argument("--node-limit", type=int)
    g.add_argument("--time-limit", type=float, help="seconds")

    g = ap.add_argument_group("input handling")
    g.add_argument("--lonlat", action="store_const", const=True, help="input coordinates are lon/lat degrees")
    g.add_argument("--lenient", action="store_const", const=True, help="keep customers with missing junction labels")
    g.add_argument("--neighbors", type=int, help="covered customers consulted for junction suggestions")

    g = ap.add_argument_group("outputs")
    g.add_argument("--out", help="solution JSON")
    g.add_argument("--geojson-out", help="coloured GeoJSON")
    g.add_argument("--svg-out", help="SVG map")
    g.add_argument("--lp-out", help="model in LP format")
    g.add_argument("--mps-out", help="model in fixed MPS format")
    g.add_argument("--diagnostics-out", help="diagnostics JSON")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    overrides = {k: v for k, v in vars(args).items() if k not in ("config", "verbose")}
    try:
        file_values = read_config(args.config) if args.config else {}
        cfg = make_config(file_values, **overrides)
    except ConfigError as exc:
        print(f"lvpaths: error: [config] {exc}", file=sys.stderr)
        return 1
    return run_pipeline(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
