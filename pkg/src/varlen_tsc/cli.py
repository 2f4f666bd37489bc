"""Command-line front end.

Subcommands:

* ``generate`` — write variable-length versions of equal-length archives
  to disk, one directory per (dataset, mechanism).
* ``run``      — the full benchmark cross-product into an output directory
  (resumable; see experiment module).
* ``report``   — rank tables, CD diagrams, and stats from stored records.
* ``dist``     — one-off distance between two series files, for debugging.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from .distances import DistanceMeasure, distance
from .experiment import (
    MECHANISM_NONE,
    ClassifierKind,
    ExperimentConfig,
    REPORT_SCOPES,
    derive_seed,
    load_records,
    report,
    run_experiment,
)
from .generators import GeneratorConfig, Mechanism, modify_dataset
from .preprocessing import PreprocessorKind
from .ucr_io import discover_datasets, load_ucr_dataset, write_ucr_dataset

_MECHANISM_CHOICES = [m.value for m in Mechanism] + [MECHANISM_NONE]


def _add_data_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("data_root", help="directory holding *_TRAIN/*_TEST archive files")
    p.add_argument(
        "--datasets", nargs="+", metavar="NAME", help="restrict to these dataset names"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="varlen-tsc",
        description="variable-length time series classification benchmark",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="emit modified (variable-length) datasets")
    _add_data_args(g)
    g.add_argument("--mechanisms", nargs="+", choices=[m.value for m in Mechanism],
                   default=[m.value for m in Mechanism])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default="generated", help="output directory")

    r = sub.add_parser("run", help="run the benchmark cross-product")
    _add_data_args(r)
    r.add_argument("--mechanisms", nargs="+", choices=_MECHANISM_CHOICES,
                   default=[m.value for m in Mechanism])
    r.add_argument("--preprocessors", nargs="+",
                   choices=[p.value for p in PreprocessorKind],
                   default=[p.value for p in PreprocessorKind])
    r.add_argument("--classifiers", nargs="+",
                   choices=[c.value for c in ClassifierKind],
                   default=[c.value for c in ClassifierKind])
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--out", default="results", help="output directory")

    rep = sub.add_parser("report", help="rank tables and CD diagrams from records")
    rep.add_argument("--out", default="results",
                     help="directory holding records.csv; reports go to OUT/report")
    rep.add_argument("--alpha", type=float, default=0.05)
    rep.add_argument("--scopes", nargs="+", choices=list(REPORT_SCOPES),
                     default=list(REPORT_SCOPES))
    rep.add_argument("--mechanisms", nargs="+", choices=_MECHANISM_CHOICES)

    d = sub.add_parser("dist", help="distance between two single-series files")
    d.add_argument("measure", choices=[m.value for m in DistanceMeasure])
    d.add_argument("file_a")
    d.add_argument("file_b")

    return parser


def _select_datasets(args) -> list[tuple[str, str, str]]:
    found = discover_datasets(args.data_root)
    if args.datasets:
        wanted = set(args.datasets)
        found = [t for t in found if t[0] in wanted]
        missing = wanted - {t[0] for t in found}
        if missing:
            raise FileNotFoundError(f"datasets not found under {args.data_root}: "
                                    f"{sorted(missing)}")
    if not found:
        raise FileNotFoundError(f"no *_TRAIN/*_TEST pairs under {args.data_root}")
    return found


def _cmd_generate(args) -> int:
    out = Path(args.out)
    for name, train_path, test_path in _select_datasets(args):
        ds = load_ucr_dataset(train_path, test_path)
        for mech in args.mechanisms:
            cfg = GeneratorConfig(seed=derive_seed(args.seed, name, mech))
            modified = modify_dataset(ds, Mechanism(mech), cfg)
            stem = f"{name}_{mech}"
            write_ucr_dataset(
                modified,
                out / stem / f"{stem}_TRAIN.tsv",
                out / stem / f"{stem}_TEST.tsv",
            )
            print(f"wrote {out / stem}")
    return 0


def _cmd_run(args) -> int:
    cfg = ExperimentConfig(
        datasets=tuple(_select_datasets(args)),
        mechanisms=tuple(args.mechanisms),
        preprocessors=tuple(PreprocessorKind(p) for p in args.preprocessors),
        classifiers=tuple(ClassifierKind(c) for c in args.classifiers),
        master_seed=args.seed,
        jobs=args.jobs,
        out_dir=args.out,
    )
    results = run_experiment(cfg)
    print(f"{len(results)} completed records in {Path(args.out) / 'results.csv'}")
    failed = _count_errors(Path(args.out) / "records.csv")
    if failed:
        print(f"warning: {failed} task(s) failed; rerun to retry "
              f"(details in records.csv)", file=sys.stderr)
    return 0


def _count_errors(records_path: Path) -> int:
    if not records_path.exists():
        return 0
    with records_path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    ok = {tuple(r[k] for k in ("dataset", "mechanism", "preprocessor", "classifier"))
          for r in rows if r["status"] == "ok"}
    failed = {
        tuple(r[k] for k in ("dataset", "mechanism", "preprocessor", "classifier"))
        for r in rows if r["status"] == "error"
    }
    return len(failed - ok)


def _cmd_report(args) -> int:
    records = load_records(Path(args.out) / "records.csv")
    if not records:
        print("no completed records to report on", file=sys.stderr)
        return 1
    written = report(
        records,
        Path(args.out) / "report",
        alpha=args.alpha,
        scopes=tuple(args.scopes),
        mechanisms=args.mechanisms,
    )
    for path in written:
        print(f"wrote {path}")
    return 0


def _read_series_file(path: str) -> np.ndarray:
    tokens = Path(path).read_text(encoding="utf-8").replace(",", " ").split()
    if not tokens:
        raise ValueError(f"{path}: no values")
    return np.array([float(t) for t in tokens])


def _cmd_dist(args) -> int:
    a = _read_series_file(args.file_a)
    b = _read_series_file(args.file_b)
    print("%.17g" % distance(DistanceMeasure(args.measure), a, b))
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "generate": _cmd_generate,
        "run": _cmd_run,
        "report": _cmd_report,
        "dist": _cmd_dist,
    }
    try:
        return handlers[args.command](args)
    except BrokenPipeError:
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
