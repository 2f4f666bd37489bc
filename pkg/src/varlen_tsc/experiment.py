"""Cross-product benchmark runner: mechanisms x preprocessors x classifiers.

Each task is one (dataset, mechanism, preprocessor, classifier) cell:
load the dataset, derive a variable-length version with the mechanism,
length-equalize with the preprocessor, fit on train, score on test. Tasks
are fully independent: every per-stage seed is derived by hashing the
master seed with the task's identity, so results never depend on worker
count or completion order, and adding or removing tasks does not perturb
the others.

Two files land in the output directory while running:

* ``records.csv``  — append-only task log (includes wall time and status);
  reruns skip tasks already logged as ok and retry failed ones.
* ``results.csv``  — canonical sorted accuracies, byte-identical for a
  given (data, config, master seed) regardless of parallelism.

plus ``manifest.json`` describing the config and all derived task seeds.
"""

from __future__ import annotations

import csv
import enum
import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .boss import SfaConfig, boss_fit, boss_predict
from .distances import DistanceMeasure
from .generators import GeneratorConfig, Mechanism, modify_dataset
from .neighbors import dataset_accuracy
from .preprocessing import Preprocessor, PreprocessorKind, apply_preprocessor
from .proximity import PfConfig, pf_fit, pf_predict
from .ranking import (
    AccuracyTable,
    average_ranks,
    critical_difference,
    friedman_statistic,
    group_cliques,
    rank_table_to_csv,
)
from .cd_diagram import render_cd_diagram
from .series import Dataset
from .ucr_io import load_ucr_dataset

__all__ = [
    "ClassifierKind",
    "MECHANISM_NONE",
    "applicable",
    "applicable_pairs",
    "ExperimentConfig",
    "ResultRecord",
    "derive_seed",
    "run_experiment",
    "load_records",
    "report",
    "REPORT_SCOPES",
]

MECHANISM_NONE = "none"  # pass-through for data that is already variable-length


class ClassifierKind(str, enum.Enum):
    NN_ED = "nn-ed"
    NN_DTW = "nn-dtw"
    NN_SSD = "nn-ssd"
    NN_US = "nn-us"
    NN_SBD = "nn-sbd"
    BOSS = "boss"
    PF = "pf"


_NN_MEASURES = {
    ClassifierKind.NN_ED: DistanceMeasure.EUCLIDEAN_TRUNCATE,
    ClassifierKind.NN_DTW: DistanceMeasure.DTW_FULL,
    ClassifierKind.NN_SSD: DistanceMeasure.SUBSEQUENCE_SLIDING,
    ClassifierKind.NN_US: DistanceMeasure.UNIFORM_SCALING_DIST,
    ClassifierKind.NN_SBD: DistanceMeasure.SHAPE_BASED,
}

_EQUALIZING = frozenset(
    {
        PreprocessorKind.UNIFORM_SCALING,
        PreprocessorKind.SUFFIX_NOISE,
        PreprocessorKind.PREFIX_SUFFIX_NOISE,
    }
)

# Which preprocessors each classifier runs with. The sliding subsequence
# measure needs unequal lengths to have anything to slide over; the two
# ensembles need equal lengths to train at all.
_APPLICABLE: dict[ClassifierKind, frozenset[PreprocessorKind]] = {
    ClassifierKind.NN_ED: frozenset(PreprocessorKind),
    ClassifierKind.NN_DTW: frozenset(PreprocessorKind),
    ClassifierKind.NN_US: frozenset(PreprocessorKind),
    ClassifierKind.NN_SBD: frozenset(PreprocessorKind),
    ClassifierKind.NN_SSD: frozenset(
        {PreprocessorKind.NO_PROCESSING, PreprocessorKind.PREFIX_SUFFIX_ZERO}
    ),
    ClassifierKind.BOSS: _EQUALIZING,
    ClassifierKind.PF: _EQUALIZING,
}


def applicable(preprocessor: PreprocessorKind, classifier: ClassifierKind) -> bool:
    return preprocessor in _APPLICABLE[classifier]


def applicable_pairs(
    preprocessors=tuple(PreprocessorKind), classifiers=tuple(ClassifierKind)
) -> list[tuple[PreprocessorKind, ClassifierKind]]:
    return [
        (p, c) for p in preprocessors for c in classifiers if applicable(p, c)
    ]


@dataclass(frozen=True)
class ExperimentConfig:
    """One benchmark run. ``datasets`` holds (name, train_path, test_path)."""

    datasets: tuple[tuple[str, str, str], ...]
    mechanisms: tuple[str, ...] = tuple(m.value for m in Mechanism)
    preprocessors: tuple[PreprocessorKind, ...] = tuple(PreprocessorKind)
    classifiers: tuple[ClassifierKind, ...] = tuple(ClassifierKind)
    master_seed: int = 0
    jobs: int = 1
    out_dir: str = "results"

    def __post_init__(self):
        if not self.datasets:
            raise ValueError("no datasets configured")
        if not (self.mechanisms and self.preprocessors and self.classifiers):
            raise ValueError("mechanisms/preprocessors/classifiers must be non-empty")
        valid = {m.value for m in Mechanism} | {MECHANISM_NONE}
        unknown = set(self.mechanisms) - valid
        if unknown:
            raise ValueError(f"unknown mechanisms: {sorted(unknown)}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")


@dataclass(frozen=True)
class ResultRecord:
    dataset: str
    mechanism: str
    preprocessor: str
    classifier: str
    accuracy: float
    wall_time_seconds: float
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.accuracy <= 1.0:
            raise ValueError("accuracy must be in [0, 1]")
        if self.wall_time_seconds < 0:
            raise ValueError("wall time must be >= 0")

    @property
    def key(self) -> tuple[str, str, str, str]:
        return (self.dataset, self.mechanism, self.preprocessor, self.classifier)


def derive_seed(*parts) -> int:
    """Stable 64-bit seed from the task identity (order-sensitive)."""
    text = "|".join(str(p) for p in parts)
    return int.from_bytes(hashlib.blake2b(text.encode(), digest_size=8).digest(), "big")


_RECORD_FIELDS = [
    "dataset", "mechanism", "preprocessor", "classifier", "seed",
    "status", "accuracy", "wall_time_seconds", "message",
]
_RESULT_FIELDS = ["dataset", "mechanism", "preprocessor", "classifier", "accuracy", "seed"]


def _score(clf: ClassifierKind, ds: Dataset, seed: int) -> float:
    if clf in _NN_MEASURES:
        return dataset_accuracy(ds, _NN_MEASURES[clf])
    if clf is ClassifierKind.BOSS:
        model = boss_fit(ds, SfaConfig(), seed)
        hits = sum(boss_predict(model, s) == s.label for s in ds.test)
        return hits / len(ds.test)
    model = pf_fit(ds, PfConfig(seed=seed))
    hits = sum(pf_predict(model, s) == s.label for s in ds.test)
    return hits / len(ds.test)


def _run_one(task: dict) -> dict:
    """Worker body; never raises, reports failures in the row."""
    t0 = time.perf_counter()
    row = {
        "dataset": task["dataset"],
        "mechanism": task["mechanism"],
        "preprocessor": task["preprocessor"],
        "classifier": task["classifier"],
        "seed": task["task_seed"],
        "message": "",
    }
    try:
        ds = load_ucr_dataset(task["train_path"], task["test_path"])
        if task["mechanism"] != MECHANISM_NONE:
            ds = modify_dataset(
                ds, Mechanism(task["mechanism"]), GeneratorConfig(seed=task["mech_seed"])
            )
        pre = Preprocessor(
            PreprocessorKind(task["preprocessor"]), noise_seed=task["pre_seed"]
        )
        ds = apply_preprocessor(pre, ds)
        acc = _score(ClassifierKind(task["classifier"]), ds, task["task_seed"])
        row.update(status="ok", accuracy="%.17g" % acc)
    except Exception as exc:  # per-task isolation: the run must continue
        row.update(status="error", accuracy="", message=f"{type(exc).__name__}: {exc}")
    row["wall_time_seconds"] = "%.6f" % (time.perf_counter() - t0)
    return row


def _build_tasks(cfg: ExperimentConfig) -> list[dict]:
    tasks = []
    for name, train_path, test_path in cfg.datasets:
        for mech in cfg.mechanisms:
            mech_seed = derive_seed(cfg.master_seed, name, mech)
            for pre, clf in applicable_pairs(cfg.preprocessors, cfg.classifiers):
                tasks.append(
                    {
                        "dataset": name,
                        "train_path": train_path,
                        "test_path": test_path,
                        "mechanism": mech,
                        "preprocessor": pre.value,
                        "classifier": clf.value,
                        "mech_seed": mech_seed,
                        "pre_seed": derive_seed(cfg.master_seed, name, mech, pre.value),
                        "task_seed": derive_seed(
                            cfg.master_seed, name, mech, pre.value, clf.value
                        ),
                    }
                )
    return tasks


def _row_key(row: dict) -> tuple[str, str, str, str]:
    return (row["dataset"], row["mechanism"], row["preprocessor"], row["classifier"])


def _read_ok_rows(records_path: Path) -> dict[tuple, dict]:
    """Completed rows from a previous run, last occurrence wins per key."""
    done: dict[tuple, dict] = {}
    if not records_path.exists():
        return done
    with records_path.open(newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            if row.get("status") == "ok":
                done[_row_key(row)] = row
    return done


def _record_to_result(row: dict) -> ResultRecord:
    return ResultRecord(
        dataset=row["dataset"],
        mechanism=row["mechanism"],
        preprocessor=row["preprocessor"],
        classifier=row["classifier"],
        accuracy=float(row["accuracy"]),
        wall_time_seconds=float(row.get("wall_time_seconds", 0.0)),
        seed=int(row["seed"]),
    )


def run_experiment(cfg: ExperimentConfig) -> list[ResultRecord]:
    """Run all missing tasks, append to records.csv, rewrite results.csv.

    Failed tasks get an error row and are retried on the next invocation;
    completed tasks are never recomputed.
    """
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    records_path = out / "records.csv"

    done = _read_ok_rows(records_path)
    tasks = [t for t in _build_tasks(cfg) if _task_key(t) not in done]

    write_header = not records_path.exists() or records_path.stat().st_size == 0
    with records_path.open("a", newline="", encoding="utf-8") as sink:
        writer = csv.DictWriter(sink, fieldnames=_RECORD_FIELDS, lineterminator="\n")
        if write_header:
            writer.writeheader()
        for row in _execute(tasks, cfg.jobs):
            writer.writerow(row)
            sink.flush()
            if row["status"] == "ok":
                done[_row_key(row)] = row

    results = sorted(
        (_record_to_result(r) for r in done.values()), key=lambda r: r.key
    )
    _write_results(out / "results.csv", results)
    _write_manifest(out / "manifest.json", cfg)
    return results


def _task_key(task: dict) -> tuple[str, str, str, str]:
    return (task["dataset"], task["mechanism"], task["preprocessor"], task["classifier"])


def _execute(tasks: list[dict], jobs: int):
    if jobs == 1 or len(tasks) <= 1:
        for t in tasks:
            yield _run_one(t)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_run_one, t) for t in tasks]
        for f in as_completed(futures):
            yield f.result()


def _write_results(path: Path, results: list[ResultRecord]) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_RESULT_FIELDS)
        for r in results:
            writer.writerow(
                [r.dataset, r.mechanism, r.preprocessor, r.classifier,
                 "%.17g" % r.accuracy, r.seed]
            )


def _write_manifest(path: Path, cfg: ExperimentConfig) -> None:
    doc = {
        "master_seed": cfg.master_seed,
        "datasets": [
            {"name": n, "train": tr, "test": te} for n, tr, te in cfg.datasets
        ],
        "mechanisms": list(cfg.mechanisms),
        "preprocessors": [p.value for p in cfg.preprocessors],
        "classifiers": [c.value for c in cfg.classifiers],
        "tasks": [
            {
                "dataset": t["dataset"],
                "mechanism": t["mechanism"],
                "preprocessor": t["preprocessor"],
                "classifier": t["classifier"],
                "seed": t["task_seed"],
            }
            for t in _build_tasks(cfg)
        ],
    }
    with path.open("w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_records(records_path) -> list[ResultRecord]:
    """Completed records from a records.csv, sorted by key."""
    rows = _read_ok_rows(Path(records_path))
    return sorted((_record_to_result(r) for r in rows.values()), key=lambda r: r.key)


REPORT_SCOPES = ("all-pairs", "by-preprocessor", "by-classifier", "table1")


def _cells_to_table(cells: dict[str, dict[str, float]], columns: list[str]):
    """Rows keyed by dataset; rows with < 2 present cells are dropped."""
    usable = {ds: row for ds, row in cells.items() if len(row) >= 2}
    if len(usable) < 1:
        return None
    datasets = tuple(sorted(usable))
    data = np.full((len(datasets), len(columns)), np.nan)
    for i, ds in enumerate(datasets):
        for j, col in enumerate(columns):
            if col in usable[ds]:
                data[i, j] = usable[ds][col]
    keep = [j for j in range(len(columns)) if not np.isnan(data[:, j]).all()]
    if len(keep) < 2:
        return None
    return AccuracyTable(datasets, tuple(columns[j] for j in keep), data[:, keep])


def _scope_cells(records: list[ResultRecord], scope: str) -> tuple[dict, list[str]]:
    cells: dict[str, dict[str, float]] = {}
    if scope == "all-pairs":
        columns = [f"{p.value}+{c.value}" for p, c in applicable_pairs()]
        for r in records:
            cells.setdefault(r.dataset, {})[f"{r.preprocessor}+{r.classifier}"] = r.accuracy
        return cells, columns
    group_by = "preprocessor" if scope == "by-preprocessor" else "classifier"
    columns = [
        k.value for k in (PreprocessorKind if group_by == "preprocessor" else ClassifierKind)
    ]
    sums: dict[str, dict[str, list[float]]] = {}
    for r in records:
        key = getattr(r, group_by)
        sums.setdefault(r.dataset, {}).setdefault(key, []).append(r.accuracy)
    for ds, row in sums.items():
        cells[ds] = {col: sum(v) / len(v) for col, v in row.items()}
    return cells, columns


def _write_table1(records: list[ResultRecord], path: Path) -> bool:
    cells, columns = _scope_cells(records, "all-pairs")
    table = _cells_to_table(cells, columns)
    if table is None:
        return False
    ranks = average_ranks(table)
    avg = dict(zip(ranks.columns, ranks.average_rank))
    pres = [p.value for p in PreprocessorKind]
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["classifier"] + pres)
        for clf in ClassifierKind:
            row = [clf.value]
            for pre in pres:
                col = f"{pre}+{clf.value}"
                row.append("%.4f" % avg[col] if col in avg else "")
            writer.writerow(row)
    return True


def report(
    records: list[ResultRecord],
    out_dir,
    alpha: float = 0.05,
    scopes=REPORT_SCOPES,
    mechanisms=None,
) -> list[Path]:
    """Per-mechanism rank tables, CD diagrams, and stats files.

    Returns the written paths. Scopes: ``all-pairs`` ranks every
    preprocessor+classifier pair, ``by-preprocessor``/``by-classifier``
    rank per-dataset mean accuracies of one axis, ``table1`` formats the
    all-pairs average ranks as a classifier x preprocessor matrix.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    mechs = sorted({r.mechanism for r in records})
    if mechanisms is not None:
        mechs = [m for m in mechs if m in set(mechanisms)]
    for mech in mechs:
        sub = [r for r in records if r.mechanism == mech]
        for scope in scopes:
            if scope == "table1":
                path = out / f"{mech}-table1.csv"
                if _write_table1(sub, path):
                    written.append(path)
                continue
            cells, columns = _scope_cells(sub, scope)
            table = _cells_to_table(cells, columns)
            if table is None:
                continue
            ranks = average_ranks(table)
            cd = critical_difference(ranks.k, ranks.n, alpha)
            groups = group_cliques(ranks, cd)
            base = out / f"{mech}-{scope}"
            ranks_csv = base.with_name(base.name + "-ranks.csv")
            ranks_csv.write_text(rank_table_to_csv(ranks), encoding="utf-8")
            svg = base.with_name(base.name + "-cd.svg")
            txt = base.with_name(base.name + "-cd.txt")
            render_cd_diagram(ranks, groups, svg, txt, cd)
            stat, p = friedman_statistic(table)
            stats_path = base.with_name(base.name + "-stats.txt")
            stats_path.write_text(
                f"k = {ranks.k}\nn = {ranks.n}\nalpha = {alpha}\n"
                f"cd = {cd:.6f}\nfriedman_chi2 = {stat:.6f}\nfriedman_p = {p:.6g}\n",
                encoding="utf-8",
            )
            written.extend([ranks_csv, svg, txt, stats_path])
    return written
