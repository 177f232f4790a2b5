"""Dataset builders shared across the test modules."""

from __future__ import annotations

import numpy as np

from mltk import NOMINAL, NUMERIC, AttributeMeta, MLDataset, PredictionSet


def make_dataset(
    labels,
    features=None,
    name: str = "toy",
    label_names=None,
    citation: str | None = None,
    attributes=None,
) -> MLDataset:
    """Build a small dataset from a label matrix, default numeric features."""
    labels = np.asarray(labels, dtype=np.int8)
    n, k = labels.shape
    if features is None:
        features = (np.arange(n, dtype=np.float64) * 0.5 + 0.25).reshape(n, 1)
    features = np.asarray(features, dtype=np.float64)
    f = features.shape[1]
    if label_names is None:
        label_names = tuple(f"label{j + 1}" for j in range(k))
    if attributes is None:
        attributes = tuple(AttributeMeta(f"att{i + 1}", NUMERIC) for i in range(f)) + tuple(
            AttributeMeta(name, "label") for name in label_names
        )
    return MLDataset(
        name=name,
        features=features,
        labels=labels,
        attributes=attributes,
        label_names=tuple(label_names),
        citation=citation,
    )


def random_dataset(
    seed: int,
    n_max: int = 20,
    k_max: int = 5,
    f_max: int = 8,
    name: str | None = None,
    active_bias: float = 0.45,
    ensure_nonempty_rows: bool = False,
) -> MLDataset:
    """Seeded random dataset; every label column gets at least one chance to
    be active but zero-count labels are allowed (they must be handled)."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, n_max + 1))
    k = int(rng.integers(2, k_max + 1))
    f = int(rng.integers(1, f_max + 1))
    labels = (rng.random((n, k)) < active_bias).astype(np.int8)
    if ensure_nonempty_rows:
        for i in range(n):
            if labels[i].sum() == 0:
                labels[i, int(rng.integers(0, k))] = 1
    features = np.round(rng.normal(size=(n, f)), 6)
    return make_dataset(labels, features=features, name=name or f"rnd{seed}")


def skewed_dataset(seed: int, n: int = 200, k: int = 6, f: int = 3) -> MLDataset:
    """Imbalanced label frequencies (roughly geometric), for stratification
    quality comparisons."""
    rng = np.random.default_rng(seed)
    probs = 0.5 * (0.45 ** np.arange(k))
    labels = (rng.random((n, k)) < probs).astype(np.int8)
    for i in range(n):
        if labels[i].sum() == 0 and rng.random() < 0.7:
            labels[i, 0] = 1
    features = np.round(rng.normal(size=(n, f)), 6)
    return make_dataset(labels, features=features, name=f"skew{seed}")


def pset(truth, bip=None, scores=None) -> PredictionSet:
    return PredictionSet(
        truth=np.asarray(truth),
        bipartition=None if bip is None else np.asarray(bip),
        scores=None if scores is None else np.asarray(scores, dtype=np.float64),
    )


def random_pset(seed: int, n_max: int = 8, k_max: int = 4, with_scores: bool = True):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, n_max + 1))
    k = int(rng.integers(2, k_max + 1))
    truth = (rng.random((n, k)) < 0.5).astype(np.int8)
    bip = (rng.random((n, k)) < 0.5).astype(np.int8)
    scores = np.round(rng.random((n, k)), 3) if with_scores else None
    return pset(truth, bip, scores)


def nominal_missing_dataset(name: str = "mixed") -> MLDataset:
    """Golden corpus member: nominal attribute, missing values, an empty
    labelset and a quote-needing category."""
    features = np.array(
        [
            [0.5, 0.0, np.nan],
            [1.25, 1.0, 4.0],
            [-3.0, 2.0, 0.0],
            [np.nan, 0.0, 2.5],
            [7.125, 1.0, -1.0],
        ]
    )
    labels = np.array(
        [
            [1, 0, 1],
            [0, 1, 0],
            [0, 0, 0],
            [1, 1, 0],
            [0, 0, 1],
        ],
        dtype=np.int8,
    )
    attributes = (
        AttributeMeta("temperature", NUMERIC),
        AttributeMeta("color", NOMINAL, ("red", "light blue", "dark-green")),
        AttributeMeta("weight", NUMERIC),
        AttributeMeta("urban", "label"),
        AttributeMeta("nature", "label"),
        AttributeMeta("people", "label"),
    )
    return MLDataset(
        name=name,
        features=features,
        labels=labels,
        attributes=attributes,
        label_names=("urban", "nature", "people"),
        citation='@article{sample2024,\n  title={A sample},\n  year={2024}\n}',
    )
