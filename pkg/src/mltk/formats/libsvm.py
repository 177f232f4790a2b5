"""Multi-label LibSVM files.

Each line is `<l1,l2,...> <i:v> <i:v> ...` with 0-based label indices and
1-based feature indices; omitted features are zero. The format carries no
label names or counts, so files travel with a `<basename>_labels.csv`
companion listing one label name per line; an explicit label count can be
given instead, in which case labels are named label1..labelk.
"""

from __future__ import annotations

import re
import warnings
from pathlib import Path

import numpy as np

from ..dataset import LABEL, NOMINAL, NUMERIC, AttributeMeta, MLDataset
from .arff import FormatError, format_number

_LABEL_LIST = re.compile(r"^\d+(,\d+)*$")


def labels_companion(path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + "_labels.csv")


def read_label_names(path) -> list[str]:
    names = [line.strip() for line in Path(path).read_text(encoding="utf-8").splitlines()]
    names = [n for n in names if n]
    if not names:
        raise FormatError("label name file is empty", path)
    return names


def write_label_names(names, path) -> None:
    Path(path).write_text("\n".join(names) + "\n", encoding="utf-8")


def read_libsvm(
    path,
    num_labels: int | None = None,
    labels_path=None,
    num_features: int | None = None,
    name: str | None = None,
) -> MLDataset:
    path = Path(path)
    label_names = None
    companion = Path(labels_path) if labels_path else labels_companion(path)
    if companion.exists():
        label_names = read_label_names(companion)
        if num_labels is not None and num_labels != len(label_names):
            raise FormatError(
                f"label count {num_labels} disagrees with {companion.name} "
                f"({len(label_names)} names)",
                path,
            )
    elif num_labels is None:
        raise FormatError(
            f"cannot determine label count: no {companion.name} and no explicit count", path
        )
    k = len(label_names) if label_names else num_labels
    if label_names is None:
        label_names = [f"label{j + 1}" for j in range(k)]

    rows: list[tuple[int, list[int], list[tuple[int, float]]]] = []
    max_feature = 0
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        tokens = line.split()
        active: list[int] = []
        start = 0
        if ":" not in tokens[0]:
            if not _LABEL_LIST.match(tokens[0]):
                raise FormatError(f"bad label list {tokens[0]!r}", path, line_no, 1)
            active = [int(t) for t in tokens[0].split(",")]
            for idx in active:
                if idx >= k:
                    raise FormatError(
                        f"label index {idx} out of range 0..{k - 1}", path, line_no, 1
                    )
            start = 1
        pairs: list[tuple[int, float]] = []
        for token in tokens[start:]:
            idx_text, sep, value_text = token.partition(":")
            if not sep:
                raise FormatError(f"expected index:value, got {token!r}", path, line_no)
            try:
                idx = int(idx_text)
                value = float(value_text)
            except ValueError:
                raise FormatError(f"bad feature entry {token!r}", path, line_no) from None
            if idx < 1:
                raise FormatError(f"feature index {idx} must be >= 1", path, line_no)
            max_feature = max(max_feature, idx)
            pairs.append((idx, value))
        rows.append((line_no, active, pairs))

    if not rows:
        raise FormatError("no instances", path)
    f = num_features if num_features is not None else max_feature
    if f < max_feature:
        raise FormatError(f"feature index {max_feature} exceeds declared count {f}", path)
    if f < 1:
        raise FormatError(
            "no feature values present; pass an explicit feature count to read this file", path
        )
    features = np.zeros((len(rows), f), dtype=np.float64)
    labels = np.zeros((len(rows), k), dtype=np.int8)
    for row_idx, (_, active, pairs) in enumerate(rows):
        for idx, value in pairs:
            features[row_idx, idx - 1] = value
        for j in active:
            labels[row_idx, j] = 1
    attributes = tuple(
        [AttributeMeta(f"att{i + 1}", NUMERIC) for i in range(f)]
        + [AttributeMeta(n, LABEL) for n in label_names]
    )
    return MLDataset(
        name=name or path.stem,
        features=features,
        labels=labels,
        attributes=attributes,
        label_names=tuple(label_names),
    )


def write_libsvm(ds: MLDataset, path) -> None:
    """Write the data file only; the caller decides where the label-name
    companion goes. Nominal features degrade to their category indices and
    missing values to zero, each with a warning."""
    if any(a.kind == NOMINAL for a in ds.feature_attributes):
        warnings.warn(f"{path}: nominal features written as category indices", stacklevel=3)
    if np.isnan(ds.features).any():
        warnings.warn(f"{path}: missing feature values written as zeros", stacklevel=3)
    lines = []
    for row in range(ds.n):
        parts = []
        active = np.flatnonzero(ds.labels[row]).tolist()
        if active:
            parts.append(",".join(str(j) for j in active))
        for col in range(ds.f):
            value = ds.features[row, col]
            if value == 0.0 or np.isnan(value):
                continue
            parts.append(f"{col + 1}:{format_number(float(value))}")
        if not parts:
            parts.append("1:0")  # keep the empty instance on its own line
        lines.append(" ".join(parts))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
