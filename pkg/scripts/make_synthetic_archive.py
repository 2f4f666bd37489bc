#!/usr/bin/env python3
"""Write the built-in synthetic datasets as a UCR-style archive directory.

The result is a valid input for `varlen-tsc generate` and `varlen-tsc run`.
"""

import argparse
from pathlib import Path

from varlen_tsc.synthetic import default_archive
from varlen_tsc.ucr_io import write_ucr_dataset


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out", help="archive directory to create")
    parser.add_argument("--length", type=int, default=100,
                        help="series length for every dataset (default 100)")
    args = parser.parse_args()

    root = Path(args.out)
    for ds in default_archive(length=args.length):
        write_ucr_dataset(
            ds,
            root / ds.name / f"{ds.name}_TRAIN.tsv",
            root / ds.name / f"{ds.name}_TEST.tsv",
        )
        print(f"wrote {root / ds.name} "
              f"({len(ds.train)} train / {len(ds.test)} test, length {args.length})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
