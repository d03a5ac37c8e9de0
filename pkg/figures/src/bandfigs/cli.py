"""figures <figure-id> --data <dir> --out <path>, or `figures reproduce` for all panels."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .io import FIGURE_IDS, FigureSpec, SchemaError
from .panels import render


def build_parser():
    parser = argparse.ArgumentParser(prog="figures", description=__doc__)
    parser.add_argument("figure_id", help="one of %s, or 'reproduce'" % ", ".join(FIGURE_IDS))
    parser.add_argument("--data", default="data/golden", help="directory with the result CSVs")
    parser.add_argument("--out", default=None, help="output image path (single figure)")
    parser.add_argument("--out-dir", default="panels", help="output directory for reproduce")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.figure_id == "reproduce":
            out_dir = Path(args.out_dir)
            out_dir.mkdir(parents=True, exist_ok=True)
            for figure_id in FIGURE_IDS:
                spec = FigureSpec.from_data_dir(figure_id, args.data, out_dir / f"{figure_id}.png")
                print(render(spec))
            return 0
        out = args.out or f"{args.figure_id}.png"
        spec = FigureSpec.from_data_dir(args.figure_id, args.data, out)
        print(render(spec))
        return 0
    except SchemaError as exc:
        print(f"error[schema]: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
