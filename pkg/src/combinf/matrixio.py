"""CSV connectivity-matrix files and JSON cohort manifests."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .connectivity import ConnectivityMatrix, TwinCohort
from .errors import DataError


def _parse_cell(token: str, row: int, col: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise DataError(
            f"cannot parse {token!r} as a number at row {row}, column {col}"
        ) from None


def read_matrix_csv(path, sym_tol: float = 1e-9) -> ConnectivityMatrix:
    """Read a square numeric CSV, with an optional first header row of node
    labels (detected when any first-row token is non-numeric)."""
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            rows = [row for row in csv.reader(fh) if row]
    except OSError as err:
        raise DataError(f"cannot read {path}: {err}") from err
    if not rows:
        raise DataError(f"{path}: empty file")

    labels = None
    first = rows[0]
    def _numeric(tok):
        try:
            float(tok)
            return True
        except ValueError:
            return False
    if not all(_numeric(tok) for tok in first):
        labels = tuple(tok.strip() for tok in first)
        rows = rows[1:]

    p = len(rows)
    if p == 0:
        raise DataError(f"{path}: header but no data rows")
    values = np.empty((p, p))
    for r, row in enumerate(rows):
        if len(row) != p:
            raise DataError(
                f"{path}: row {r + 1} has {len(row)} columns, expected {p} "
                "(matrix must be square)")
        for c, tok in enumerate(row):
            values[r, c] = _parse_cell(tok, r + 1, c + 1)
    if labels is None:
        labels = tuple(f"V{k + 1}" for k in range(p))
    elif len(labels) != p:
        raise DataError(
            f"{path}: {len(labels)} header labels for {p} data rows")
    asym = np.abs(values - values.T)
    bad = np.argwhere(asym > sym_tol)
    if bad.size:
        i, j = bad[0]
        raise DataError(
            f"{path}: matrix not symmetric at ({i},{j}) within {sym_tol}: "
            f"{values[i, j]!r} vs {values[j, i]!r}")
    values = (values + values.T) / 2.0
    return ConnectivityMatrix(labels=labels, values=values)


def write_matrix_csv(matrix, path) -> None:
    """Write a labeled square matrix as CSV with full round-trip precision."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(matrix.labels)
        for row in np.asarray(matrix.values):
            writer.writerow([repr(float(v)) for v in row])


@dataclass(frozen=True)
class CohortManifest:
    """Paths to paired twin matrices: {"pairs": [{"a": ..., "b": ...}, ...]}
    with an optional "labels_from" matrix path."""

    pairs: tuple[tuple[Path, Path], ...]
    labels_from: Path | None = None

    @classmethod
    def load(cls, path) -> "CohortManifest":
        path = Path(path)
        try:
            doc = json.loads(path.read_text())
        except OSError as err:
            raise DataError(f"cannot read {path}: {err}") from err
        except json.JSONDecodeError as err:
            raise DataError(f"{path}: invalid JSON: {err}") from err
        if not isinstance(doc, dict) or "pairs" not in doc:
            raise DataError(f"{path}: manifest must be an object with 'pairs'")
        raw_pairs = doc["pairs"]
        if not isinstance(raw_pairs, list) or len(raw_pairs) < 3:
            raise DataError(f"{path}: need at least 3 pairs, got "
                            f"{len(raw_pairs) if isinstance(raw_pairs, list) else 'non-list'}")
        base = path.parent
        pairs = []
        for k, item in enumerate(raw_pairs):
            if not isinstance(item, dict) or "a" not in item or "b" not in item:
                raise DataError(f"{path}: pairs[{k}] must have 'a' and 'b' paths")
            pairs.append((base / item["a"], base / item["b"]))
        labels_from = base / doc["labels_from"] if doc.get("labels_from") else None
        return cls(pairs=tuple(pairs), labels_from=labels_from)

    def load_cohort(self) -> TwinCohort:
        labels = None
        if self.labels_from is not None:
            labels = read_matrix_csv(self.labels_from).labels
        pairs = []
        for pa, pb in self.pairs:
            ma = read_matrix_csv(pa)
            mb = read_matrix_csv(pb)
            if labels is not None:
                ma = ConnectivityMatrix(labels=labels, values=ma.values)
                mb = ConnectivityMatrix(labels=labels, values=mb.values)
            pairs.append((ma, mb))
        try:
            return TwinCohort(pairs=tuple(pairs))
        except Exception as err:
            raise DataError(f"inconsistent cohort: {err}") from err
