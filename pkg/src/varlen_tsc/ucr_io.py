"""Reading and writing delimiter-separated series archives.

File format: one series per row, first field the class label, remaining
fields the values; tab, comma, or whitespace separated (auto-detected).
Trailing NaN or empty fields are padding on variable-length rows and are
stripped; interior NaNs are linearly interpolated; NaNs at the edges that
cannot be interpolated are dropped. The writer emits tab-separated rows with
17 significant digits so that load -> write -> load is value-exact.
"""

from __future__ import annotations

import math
import os
from pathlib import Path

import numpy as np

from .series import Dataset, TimeSeries

__all__ = [
    "UcrFormatError",
    "load_ucr_split",
    "load_ucr_dataset",
    "write_ucr_split",
    "write_ucr_dataset",
    "discover_datasets",
]


class UcrFormatError(ValueError):
    """Malformed archive file; message carries file and line number."""


def _canonical_label(token: str) -> str:
    try:
        f = float(token)
    except ValueError:
        return token
    if math.isfinite(f) and f == int(f):
        return str(int(f))
    return token


def _split_fields(line: str) -> list[str]:
    if "\t" in line:
        return line.split("\t")
    if "," in line:
        return line.split(",")
    return line.split()


def _parse_row(fields: list[str], where: str) -> TimeSeries:
    raw = np.empty(len(fields) - 1)
    for i, tok in enumerate(fields[1:]):
        tok = tok.strip()
        if not tok or tok.lower() == "nan":
            raw[i] = np.nan
            continue
        try:
            raw[i] = float(tok)
        except ValueError:
            raise UcrFormatError(f"{where}: non-numeric value field {tok!r}") from None

    finite = np.isfinite(raw)
    if not finite.any():
        raise UcrFormatError(f"{where}: row has no usable values")
    first = int(np.argmax(finite))
    last = len(raw) - int(np.argmax(finite[::-1]))
    core = raw[first:last]
    gaps = ~np.isfinite(core)
    if gaps.any():
        idx = np.arange(core.size)
        core[gaps] = np.interp(idx[gaps], idx[~gaps], core[~gaps])
    return TimeSeries(core, _canonical_label(fields[0].strip()))


def load_ucr_split(path) -> list[TimeSeries]:
    """All series of one archive file, in file order."""
    path = os.fspath(path)
    out: list[TimeSeries] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\r\n")
            if not line.strip():
                continue
            fields = _split_fields(line)
            if len(fields) < 2:
                raise UcrFormatError(f"{path}:{lineno}: row has a label but no values")
            out.append(_parse_row(fields, f"{path}:{lineno}"))
    if not out:
        raise UcrFormatError(f"{path}: file contains no series")
    return out


def _dataset_name(train_path) -> str:
    stem = Path(train_path).stem
    for suffix in ("_TRAIN", "_TEST"):
        if stem.endswith(suffix):
            return stem[: -len(suffix)]
    return stem


def load_ucr_dataset(train_path, test_path) -> Dataset:
    return Dataset(
        _dataset_name(train_path),
        load_ucr_split(train_path),
        load_ucr_split(test_path),
    )


def write_ucr_split(series, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for s in series:
            fields = [s.label] + ["%.17g" % v for v in s.values]
            fh.write("\t".join(fields) + "\n")


def write_ucr_dataset(dataset: Dataset, train_path, test_path) -> None:
    write_ucr_split(dataset.train, train_path)
    write_ucr_split(dataset.test, test_path)


def discover_datasets(root) -> list[tuple[str, str, str]]:
    """(name, train_path, test_path) triples under an archive directory.

    Any file whose stem ends in _TRAIN pairs with its _TEST sibling; the
    archive root itself and one level of subdirectories are searched.
    """
    root = Path(root)
    if not root.is_dir():
        raise NotADirectoryError(f"not a directory: {root}")
    found = []
    for train in sorted(root.glob("*_TRAIN*")) + sorted(root.glob("*/*_TRAIN*")):
        if not train.is_file():
            continue
        test = train.with_name(train.name.replace("_TRAIN", "_TEST"))
        if test.is_file():
            found.append((_dataset_name(train), str(train), str(test)))
    return sorted(found)
