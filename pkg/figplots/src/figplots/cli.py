"""Command line front end.

    figplots --in grid.csv --value gap --out grid.png --title "Gap"

renders one value column of a grid CSV to a PNG.  ``--dump-checksum``
skips rendering and instead prints the value column's hash twice: once
from the raw file text, once re-emitted from the parsed grid.  Matching
hashes certify that parsing neither altered nor reordered the data.

Exit codes: 0 success, 2 usage or bad input (malformed CSV, missing
column, unwritable output), 4 checksum mismatch.
"""

import argparse
import sys

from .grid import GridError, checksum_roundtrip
from .render import DEFAULT_CMAP, DEFAULT_STYLE, STYLES, PlotSpec, render_surface


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="figplots",
        description="Render a value column of a grid CSV as an image.",
    )
    p.add_argument("--in", dest="csv_path", required=True, metavar="CSV",
                   help="input grid CSV (header row, x and y first)")
    p.add_argument("--value", required=True, metavar="COLUMN",
                   help="value column to plot")
    p.add_argument("--out", metavar="PNG",
                   help="output image path (required unless --dump-checksum)")
    p.add_argument("--title", default="", help="figure title")
    p.add_argument("--x-label", default="",
                   help="x axis label (default: the CSV's first column name)")
    p.add_argument("--y-label", default="",
                   help="y axis label (default: the CSV's second column name)")
    p.add_argument("--cmap", default=DEFAULT_CMAP,
                   help=f"matplotlib colormap (default: {DEFAULT_CMAP})")
    p.add_argument("--style", default=DEFAULT_STYLE, choices=STYLES,
                   help=f"heatmap or 3d surface (default: {DEFAULT_STYLE})")
    p.add_argument("--dump-checksum", action="store_true",
                   help="print input and parsed hashes instead of rendering")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2

    if args.dump_checksum:
        try:
            input_hash, parsed_hash = checksum_roundtrip(args.csv_path, args.value)
        except GridError as exc:
            print(f"figplots: {exc}", file=sys.stderr)
            return 2
        print(f"input  {input_hash}")
        print(f"parsed {parsed_hash}")
        if input_hash != parsed_hash:
            print("figplots: parsed grid does not match the input column; "
                  "rendering must never alter or reorder data", file=sys.stderr)
            return 4
        return 0

    if not args.out:
        print("figplots: --out is required when rendering", file=sys.stderr)
        return 2
    spec = PlotSpec(
        csv_path=args.csv_path,
        value_column=args.value,
        out_path=args.out,
        title=args.title,
        x_label=args.x_label,
        y_label=args.y_label,
        cmap=args.cmap,
        style=args.style,
    )
    try:
        render_surface(spec)
    except GridError as exc:
        print(f"figplots: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"figplots: cannot write {args.out}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
