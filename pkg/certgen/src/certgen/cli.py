"""certgen command line: regenerate fixture certificates."""
from __future__ import annotations

import argparse
import sys

from .fixtures import CURVES, generate


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="certgen",
        description="Generate global-kernel certificates for the fixture curves")
    parser.add_argument("labels", nargs="*", help="fixture labels (default: all)")
    parser.add_argument("--out-dir", required=True)
    parser.add_argument("--cache-dir", default=None,
                        help="directory for cached saturated orders")
    parser.add_argument("--list", action="store_true", help="list known labels")
    args = parser.parse_args(argv)
    if args.list:
        for label in CURVES:
            print(label)
        return 0
    labels = args.labels or list(CURVES)
    for label in labels:
        if label not in CURVES:
            sys.stderr.write(f"unknown label {label}\n")
            return 2
        generate(label, args.out_dir, cache_dir=args.cache_dir)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
