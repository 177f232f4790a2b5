"""In-memory multi-label dataset model and per-label bookkeeping.

A dataset couples an n x f feature matrix with an n x k binary label matrix.
Feature cells are floats; nominal attributes store the index into their
category list and missing values are NaN. Label columns are normalized to
sit after the feature columns; the column layout of the source file, when it
differed, is kept in ``original_label_positions`` for faithful re-export.

Everything is immutable after construction (the numpy buffers are marked
read-only), so datasets and the tables derived from them can be shared
freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

NUMERIC = "numeric"
NOMINAL = "nominal"
LABEL = "label"

#: Marker stored in LabelStats.irlbl for labels that never occur (Eq. IRLbl
#: would divide by zero); such labels are excluded from MeanIR.
IRLBL_UNDEFINED = None


class DatasetError(ValueError):
    """Raised when dataset invariants are violated."""


@dataclass(frozen=True)
class AttributeMeta:
    """Name and kind of one column; nominal kinds carry their category list."""

    name: str
    kind: str
    categories: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.kind not in (NUMERIC, NOMINAL, LABEL):
            raise DatasetError(f"unknown attribute kind {self.kind!r}")
        if self.kind == NOMINAL:
            if not self.categories:
                raise DatasetError(f"nominal attribute {self.name!r} needs categories")
        elif self.categories is not None:
            raise DatasetError(f"{self.kind} attribute {self.name!r} cannot have categories")


@dataclass(frozen=True)
class LabelStats:
    """Per-label row: occurrence count, frequency, imbalance ratio and the
    mean/CV of the instance concurrence scores over instances where the
    label is active. ``irlbl`` is None for zero-count labels."""

    name: str
    count: int
    frequency: float
    irlbl: float | None
    scumble: float
    scumble_cv: float


@dataclass(frozen=True)
class MLDataset:
    name: str
    features: np.ndarray
    labels: np.ndarray
    attributes: tuple[AttributeMeta, ...]
    label_names: tuple[str, ...]
    citation: str | None = None
    original_label_positions: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        features = np.asarray(self.features, dtype=np.float64)
        raw_labels = np.asarray(self.labels)
        if raw_labels.ndim == 2 and ((raw_labels != 0) & (raw_labels != 1)).any():
            bad = np.argwhere((raw_labels != 0) & (raw_labels != 1))[0]
            raise DatasetError(
                f"label cell ({bad[0]}, {bad[1]}) is "
                f"{raw_labels[bad[0], bad[1]]}, must be 0 or 1"
            )
        labels = raw_labels.astype(np.int8)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "label_names", tuple(self.label_names))
        _validate(self)
        features.setflags(write=False)
        labels.setflags(write=False)

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def f(self) -> int:
        return self.features.shape[1]

    @property
    def k(self) -> int:
        return self.labels.shape[1]

    @property
    def feature_attributes(self) -> tuple[AttributeMeta, ...]:
        return self.attributes[: self.f]

    @property
    def label_attributes(self) -> tuple[AttributeMeta, ...]:
        return self.attributes[self.f :]

    def subset(self, indices, name: str | None = None) -> "MLDataset":
        """New dataset with the given rows, in index order. Metadata,
        citation and label order are preserved."""
        idx = np.asarray(list(indices), dtype=np.intp)
        if idx.size == 0:
            raise DatasetError("subset needs at least one row")
        if idx.min() < 0 or idx.max() >= self.n:
            raise DatasetError(f"row index out of range 0..{self.n - 1}")
        return MLDataset(
            name=name if name is not None else self.name,
            features=self.features[idx].copy(),
            labels=self.labels[idx].copy(),
            attributes=self.attributes,
            label_names=self.label_names,
            citation=self.citation,
            original_label_positions=self.original_label_positions,
        )

    def __eq__(self, other):
        if not isinstance(other, MLDataset):
            return NotImplemented
        return (
            self.name == other.name
            and self.attributes == other.attributes
            and self.label_names == other.label_names
            and self.citation == other.citation
            and np.array_equal(self.features, other.features, equal_nan=True)
            and np.array_equal(self.labels, other.labels)
        )

    __hash__ = None


def _validate(ds: MLDataset) -> None:
    if ds.features.ndim != 2 or ds.labels.ndim != 2:
        raise DatasetError("features and labels must be 2-d matrices")
    n, f = ds.features.shape
    nl, k = ds.labels.shape
    if n < 1 or f < 1:
        raise DatasetError(f"need n >= 1 and f >= 1, got n={n}, f={f}")
    if k < 2:
        raise DatasetError(f"need at least 2 labels, got k={k}")
    if nl != n:
        raise DatasetError(f"feature matrix has {n} rows but label matrix has {nl}")
    bad = (ds.labels != 0) & (ds.labels != 1)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise DatasetError(f"label cell ({i}, {j}) is {ds.labels[i, j]}, must be 0 or 1")
    if len(ds.attributes) != f + k:
        raise DatasetError(
            f"attribute list has {len(ds.attributes)} entries, expected f+k={f + k}"
        )
    for pos, att in enumerate(ds.attributes[:f]):
        if att.kind == LABEL:
            raise DatasetError(f"attribute {pos} ({att.name!r}) is a label inside the feature block")
    for pos, att in enumerate(ds.attributes[f:]):
        if att.kind != LABEL:
            raise DatasetError(f"attribute {f + pos} ({att.name!r}) should be a label")
    names = [a.name for a in ds.attributes]
    if len(set(names)) != len(names):
        dup = next(x for x in names if names.count(x) > 1)
        raise DatasetError(f"duplicate attribute name {dup!r}")
    if len(ds.label_names) != k:
        raise DatasetError(f"{len(ds.label_names)} label names for k={k} labels")
    for want, att in zip(ds.label_names, ds.attributes[f:]):
        if want != att.name:
            raise DatasetError(f"label name {want!r} does not match attribute {att.name!r}")
    for j, att in enumerate(ds.attributes[:f]):
        if att.kind == NOMINAL:
            col = ds.features[:, j]
            real = col[~np.isnan(col)]
            if real.size and (real.min() < 0 or real.max() >= len(att.categories)
                              or not np.all(real == np.floor(real))):
                raise DatasetError(
                    f"nominal attribute {att.name!r} has a category index outside "
                    f"0..{len(att.categories) - 1}"
                )


def labelset_key(row) -> str:
    """Canonical bit-string for one label row, in label-column order."""
    return "".join("1" if v else "0" for v in row)


def labelsets(ds: MLDataset) -> dict[str, int]:
    """Occurrence count of every labelset appearing in the dataset."""
    table: dict[str, int] = {}
    for row in ds.labels:
        key = labelset_key(row)
        table[key] = table.get(key, 0) + 1
    return table


def label_counts(ds: MLDataset) -> np.ndarray:
    return ds.labels.sum(axis=0, dtype=np.int64)


def irlbl(ds: MLDataset) -> list[float | None]:
    """Per-label imbalance ratio: most frequent label count over own count.
    None for labels that never occur."""
    counts = label_counts(ds)
    top = int(counts.max())
    return [top / int(c) if c > 0 else IRLBL_UNDEFINED for c in counts]


def scumble_per_instance(ds: MLDataset) -> list[float]:
    """Concurrence score of each instance: one minus the ratio of the
    geometric to the arithmetic mean of the active labels' imbalance ratios.
    Instances with an empty labelset score 0 (no concurrence possible)."""
    ratios = irlbl(ds)
    values = []
    for row in ds.labels:
        active = [ratios[j] for j in range(ds.k) if row[j]]
        if not active:
            values.append(0.0)
            continue
        log_gm = sum(math.log(v) for v in active) / len(active)
        am = sum(active) / len(active)
        values.append(1.0 - math.exp(log_gm) / am)
    return values


def _population_cv(values: list[float]) -> float:
    if not values:
        return 0.0
    mean = sum(values) / len(values)
    if mean == 0.0:
        return 0.0
    var = sum((v - mean) ** 2 for v in values) / len(values)
    return math.sqrt(var) / mean


def label_stats(ds: MLDataset) -> list[LabelStats]:
    """One row per label, in label-column order."""
    counts = label_counts(ds)
    ratios = irlbl(ds)
    per_instance = scumble_per_instance(ds)
    rows = []
    for j, name in enumerate(ds.label_names):
        active = [per_instance[i] for i in range(ds.n) if ds.labels[i, j]]
        mean = sum(active) / len(active) if active else 0.0
        rows.append(
            LabelStats(
                name=name,
                count=int(counts[j]),
                frequency=int(counts[j]) / ds.n,
                irlbl=ratios[j],
                scumble=mean,
                scumble_cv=_population_cv(active),
            )
        )
    return rows
