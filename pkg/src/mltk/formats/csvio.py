"""CSV interchange: a header row naming every column, feature columns first,
label columns (0/1) at the end, plus a `<basename>_labels.csv` companion that
lists the label names so readers can tell the two groups apart.

Column kinds are not declared in the file. On read, a feature column whose
non-empty cells all parse as numbers is numeric; anything else is nominal
with categories in first-appearance order. Empty cells are missing values.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from ..dataset import LABEL, NOMINAL, NUMERIC, AttributeMeta, MLDataset
from .arff import FormatError, format_number
from .libsvm import labels_companion, read_label_names, write_label_names


def read_csv_dataset(path, labels_path=None, name: str | None = None) -> MLDataset:
    path = Path(path)
    companion = Path(labels_path) if labels_path else labels_companion(path)
    if not companion.exists():
        raise FormatError(f"missing companion label file {companion}", path)
    label_names = read_label_names(companion)
    k = len(label_names)

    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        table = [row for row in reader if row]
    if len(table) < 2:
        raise FormatError("need a header row and at least one data row", path)
    header, body = table[0], table[1:]
    total = len(header)
    if total < k + 1:
        raise FormatError(
            f"{total} columns cannot hold {k} labels plus at least one feature", path
        )
    if [h.strip() for h in header[total - k:]] != label_names:
        raise FormatError(
            f"trailing columns do not match the label names in {companion.name}", path
        )
    for line_no, row in enumerate(body, start=2):
        if len(row) != total:
            raise FormatError(
                f"row has {len(row)} columns, expected {total}", path, line_no
            )

    f = total - k
    features = np.empty((len(body), f), dtype=np.float64)
    attributes: list[AttributeMeta] = []
    for col in range(f):
        cells = [row[col].strip() for row in body]
        numeric = True
        for cell in cells:
            if not cell:
                continue
            try:
                float(cell)
            except ValueError:
                numeric = False
                break
        if numeric:
            attributes.append(AttributeMeta(header[col].strip(), NUMERIC))
            for row_idx, cell in enumerate(cells):
                features[row_idx, col] = float(cell) if cell else math.nan
        else:
            categories: list[str] = []
            seen: dict[str, int] = {}
            for row_idx, cell in enumerate(cells):
                if not cell:
                    features[row_idx, col] = math.nan
                    continue
                if cell not in seen:
                    seen[cell] = len(categories)
                    categories.append(cell)
                features[row_idx, col] = float(seen[cell])
            attributes.append(AttributeMeta(header[col].strip(), NOMINAL, tuple(categories)))

    labels = np.empty((len(body), k), dtype=np.int8)
    for row_idx, row in enumerate(body):
        for j in range(k):
            cell = row[f + j].strip()
            try:
                value = float(cell)
            except ValueError:
                value = math.nan
            if value not in (0.0, 1.0):
                raise FormatError(
                    f"label {label_names[j]!r} value {cell!r} outside {{0, 1}}",
                    path,
                    row_idx + 2,
                )
            labels[row_idx, j] = int(value)

    attributes.extend(AttributeMeta(n, LABEL) for n in label_names)
    return MLDataset(
        name=name or path.stem,
        features=features,
        labels=labels,
        attributes=tuple(attributes),
        label_names=tuple(label_names),
    )


def write_csv_dataset(ds: MLDataset, path, labels_path=None, include_companion: bool = True) -> Path:
    """Write the table and (unless told otherwise) its label-name companion;
    returns the companion path so callers that manage it can reuse it."""
    path = Path(path)
    companion = Path(labels_path) if labels_path else labels_companion(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow([a.name for a in ds.feature_attributes] + list(ds.label_names))
        for row in range(ds.n):
            cells: list[str] = []
            for col, att in enumerate(ds.feature_attributes):
                value = ds.features[row, col]
                if math.isnan(value):
                    cells.append("")
                elif att.kind == NOMINAL:
                    cells.append(att.categories[int(value)])
                else:
                    cells.append(format_number(value))
            cells.extend(str(int(v)) for v in ds.labels[row])
            writer.writerow(cells)
    if include_companion:
        write_label_names(ds.label_names, companion)
    return companion
