"""CSV ingestion of design sets and the bundled synthetic fixture."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .exceptions import DataError
from .pareto import DesignSet


@dataclass(frozen=True)
class DatasetSpec:
    """Where to find designs in a CSV file.

    ``negate_columns`` holds minimize-type objectives (such as area), which
    are multiplied by -1 so that every objective is maximized.
    """

    path: str
    objective_columns: tuple
    negate_columns: tuple = ()
    id_column: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "objective_columns", tuple(self.objective_columns))
        object.__setattr__(self, "negate_columns", tuple(self.negate_columns))
        if not self.objective_columns:
            raise DataError("at least one objective column is required")
        extra = set(self.negate_columns) - set(self.objective_columns)
        if extra:
            raise DataError(f"negated columns are not objectives: {sorted(extra)}")


def load_dataset(spec):
    """Read one design per CSV row into a :class:`DesignSet`."""
    path = Path(spec.path)
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DataError(f"{path}: {exc.strerror}") from exc
    with fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise DataError(f"{path}: empty file")
        header = [h.strip() for h in reader.fieldnames]
        reader.fieldnames = header
        wanted = list(spec.objective_columns) + ([spec.id_column] if spec.id_column else [])
        missing = [c for c in wanted if c not in header]
        if missing:
            raise DataError(f"{path}: missing column(s) {missing}; header is {header}")
        signs = np.array([-1.0 if c in spec.negate_columns else 1.0
                          for c in spec.objective_columns])
        rows, labels = [], []
        for lineno, rec in enumerate(reader, start=2):
            values = []
            for col in spec.objective_columns:
                cell = rec.get(col)
                try:
                    v = float(cell)
                except (TypeError, ValueError):
                    raise DataError(f"{path}: row {lineno}, column {col!r}: "
                                    f"not a number: {cell!r}") from None
                if not math.isfinite(v):
                    raise DataError(f"{path}: row {lineno}, column {col!r}: non-finite value")
                values.append(v)
            rows.append(values)
            labels.append(rec[spec.id_column] if spec.id_column else len(labels))
    if not rows:
        raise DataError(f"{path}: no data rows")
    return DesignSet(np.array(rows) * signs, tuple(labels))


FIXTURE_SPEC = dict(objective_columns=("cost", "value"), negate_columns=("cost",),
                    id_column="design")


def fixture_path():
    """Path of the bundled 20-design synthetic fixture (see scripts/make_fixture.py)."""
    return Path(str(resources.files("conepareto") / "data" / "synthetic20.csv"))


def load_fixture():
    return load_dataset(DatasetSpec(str(fixture_path()), **FIXTURE_SPEC))
