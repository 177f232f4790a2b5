"""Reproducible dataset partitioning: 3 strategies x 3 schemes.

Strategies: random (shuffle then slice), stratified (proportional dealing
within labelset groups) and iterative stratification (greedy assignment
processing the scarcest label first). Schemes: arbitrary ratio lists,
holdout and k folds. Every run is a pure function of (dataset, spec): the
PRNG is seeded from the spec and consumed in a documented order, desired
counts are kept as exact rationals, so re-runs are bit-identical in any
conforming implementation.

Part sizes always hit the largest-remainder targets exactly, for every
strategy (remainder ties go to the lower part index).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Union

import numpy as np

from .dataset import MLDataset, labelset_key
from .rng import SplitMix64

DEFAULT_SEED = 10
DEFAULT_HOLDOUT_P = 60.0
DEFAULT_K_FOLDS = 5


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class Ratios:
    """Percentages per part, e.g. (35, 25, 40). Must sum to 100."""

    r: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(float(x) for x in self.r))
        if len(self.r) < 1:
            raise PartitionError("ratios need at least one part")
        if any(x <= 0 for x in self.r):
            raise PartitionError(f"ratios must be positive, got {self.r}")
        if abs(sum(self.r) - 100.0) > 1e-9:
            raise PartitionError(f"ratios must sum to 100, got {sum(self.r)}")

    @property
    def parts(self) -> int:
        return len(self.r)

    def weights(self) -> list[Fraction]:
        return [Fraction(x) / 100 for x in self.r]

    def token(self) -> str:
        return "parts"


@dataclass(frozen=True)
class Holdout:
    """Single train/test split; p = training percentage."""

    p: float = DEFAULT_HOLDOUT_P

    def __post_init__(self):
        object.__setattr__(self, "p", float(self.p))
        if not 0.0 < self.p < 100.0:
            raise PartitionError(f"holdout percentage must be in (0, 100), got {self.p}")

    @property
    def parts(self) -> int:
        return 2

    def weights(self) -> list[Fraction]:
        w = Fraction(self.p) / 100
        return [w, 1 - w]

    def token(self) -> str:
        return "holdout"


@dataclass(frozen=True)
class KFolds:
    k_folds: int = DEFAULT_K_FOLDS

    def __post_init__(self):
        if self.k_folds < 2:
            raise PartitionError(f"need at least 2 folds, got {self.k_folds}")

    @property
    def parts(self) -> int:
        return self.k_folds

    def weights(self) -> list[Fraction]:
        return [Fraction(1, self.k_folds)] * self.k_folds

    def token(self) -> str:
        return f"{self.k_folds}cv"


Scheme = Union[Ratios, Holdout, KFolds]

STRATEGIES = ("random", "stratified", "iterative")
#: Short strategy tokens used in exported file names.
STRATEGY_TOKENS = {"random": "rand", "stratified": "strat", "iterative": "iter"}


@dataclass(frozen=True)
class PartitionSpec:
    strategy: str
    scheme: Scheme
    seed: int = DEFAULT_SEED
    materialize: bool = False

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise PartitionError(
                f"unknown strategy {self.strategy!r}, expected one of {STRATEGIES}"
            )
        if not 0 <= self.seed < 2**64:
            raise PartitionError("seed must fit in 64 unsigned bits")


class Fold(NamedTuple):
    train: tuple[int, ...]
    test: tuple[int, ...]


@dataclass(frozen=True)
class PartitionSet:
    """Index lists (0-based internally; 1-based in JSON) plus provenance."""

    spec: PartitionSpec
    dataset_name: str
    parts: tuple  # tuple[tuple[int, ...], ...] for Ratios, tuple[Fold, ...] otherwise

    def scheme_token(self) -> str:
        return self.spec.scheme.token()

    def to_json_dict(self) -> dict:
        scheme = self.spec.scheme
        if isinstance(scheme, Ratios):
            scheme_desc: dict = {"kind": "ratios", "r": list(scheme.r)}
            parts = [[i + 1 for i in part] for part in self.parts]
        else:
            if isinstance(scheme, Holdout):
                scheme_desc = {"kind": "holdout", "p": scheme.p}
            else:
                scheme_desc = {"kind": "kfolds", "k": scheme.k_folds}
            parts = [
                {"train": [i + 1 for i in fold.train], "test": [i + 1 for i in fold.test]}
                for fold in self.parts
            ]
        return {
            "dataset": self.dataset_name,
            "strategy": self.spec.strategy,
            "scheme": scheme_desc,
            "seed": self.spec.seed,
            "parts": parts,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def target_sizes(n: int, weights: list[Fraction]) -> list[int]:
    """Largest-remainder apportionment of n rows over the given weights."""
    quotas = [w * n for w in weights]
    sizes = [int(q) for q in quotas]  # exact floor, quotas are nonnegative
    order = sorted(range(len(weights)), key=lambda i: (sizes[i] - quotas[i], i))
    for i in order[: n - sum(sizes)]:
        sizes[i] += 1
    return sizes


def _assign_random(labels: np.ndarray, sizes: list[int], rng: SplitMix64) -> list[list[int]]:
    order = list(range(labels.shape[0]))
    rng.shuffle(order)
    parts, start = [], 0
    for size in sizes:
        parts.append(order[start : start + size])
        start += size
    return parts


def _labelset_groups(labels: np.ndarray) -> list[list[int]]:
    groups: dict[str, list[int]] = {}
    for i, row in enumerate(labels):
        groups.setdefault(labelset_key(row), []).append(i)
    return list(groups.values())  # first-occurrence order


def _assign_stratified(
    labels: np.ndarray, sizes: list[int], weights: list[Fraction], rng: SplitMix64
) -> list[list[int]]:
    m = len(sizes)
    parts: list[list[int]] = [[] for _ in range(m)]
    capacity = list(sizes)
    for group in _labelset_groups(labels):
        members = list(group)
        rng.shuffle(members)
        alloc = target_sizes(len(members), weights)
        cursor = 0
        overflow: list[int] = []
        for i in range(m):
            take = min(alloc[i], capacity[i])
            parts[i].extend(members[cursor : cursor + take])
            capacity[i] -= take
            overflow.extend(members[cursor + take : cursor + alloc[i]])
            cursor += alloc[i]
        for idx in overflow:
            dest = min(
                (i for i in range(m) if capacity[i] > 0),
                key=lambda i: (len(parts[i]), i),
            )
            parts[dest].append(idx)
            capacity[dest] -= 1
    return parts


def _tie_pick(candidates: list[int], rng: SplitMix64) -> int:
    if len(candidates) == 1:
        return candidates[0]
    return candidates[rng.below(len(candidates))]


def _assign_iterative(
    labels: np.ndarray, sizes: list[int], weights: list[Fraction], rng: SplitMix64
) -> list[list[int]]:
    n, k = labels.shape
    m = len(sizes)
    parts: list[list[int]] = [[] for _ in range(m)]
    capacity = list(sizes)
    totals = labels.sum(axis=0, dtype=np.int64)
    # desired share of each label in each part, kept exact
    desired = [[w * int(totals[j]) for j in range(k)] for w in weights]
    unassigned = np.ones(n, dtype=bool)

    def place(row: int, dest: int) -> None:
        parts[dest].append(row)
        capacity[dest] -= 1
        unassigned[row] = False
        for j in np.flatnonzero(labels[row]):
            desired[dest][j] -= 1

    while True:
        remaining = labels[unassigned].sum(axis=0, dtype=np.int64) if unassigned.any() else None
        if remaining is None or remaining.sum() == 0:
            break
        # scarcest label with work left; ties -> lowest label index
        j = min((int(c), idx) for idx, c in enumerate(remaining) if c > 0)[1]
        for row in np.flatnonzero(unassigned & (labels[:, j] == 1)):
            open_parts = [p for p in range(m) if capacity[p] > 0]
            best = max(desired[p][j] for p in open_parts)
            tied = [p for p in open_parts if desired[p][j] == best]
            if len(tied) > 1:
                top_cap = max(capacity[p] for p in tied)
                tied = [p for p in tied if capacity[p] == top_cap]
            place(int(row), _tie_pick(tied, rng))
    for row in np.flatnonzero(unassigned):  # empty labelsets, balance by spare room
        top_cap = max(capacity)
        tied = [p for p in range(m) if capacity[p] == top_cap]
        place(int(row), _tie_pick(tied, rng))
    return parts


def _assign(ds: MLDataset, spec: PartitionSpec) -> list[list[int]]:
    weights = spec.scheme.weights()
    sizes = target_sizes(ds.n, weights)
    if min(sizes) < 1:
        raise PartitionError(
            f"dataset of {ds.n} rows cannot fill {spec.scheme.parts} parts"
        )
    rng = SplitMix64(spec.seed)
    if spec.strategy == "random":
        return _assign_random(ds.labels, sizes, rng)
    if spec.strategy == "stratified":
        return _assign_stratified(ds.labels, sizes, weights, rng)
    return _assign_iterative(ds.labels, sizes, weights, rng)


def partition(ds: MLDataset, spec: PartitionSpec) -> PartitionSet:
    """Deterministic partition of the dataset under the given spec."""
    raw = _assign(ds, spec)
    if isinstance(spec.scheme, Ratios):
        parts: tuple = tuple(tuple(p) for p in raw)
    elif isinstance(spec.scheme, Holdout):
        parts = (Fold(train=tuple(raw[0]), test=tuple(raw[1])),)
    else:
        folds = []
        for i in range(len(raw)):
            train: list[int] = []
            for j, other in enumerate(raw):
                if j != i:
                    train.extend(other)
            folds.append(Fold(train=tuple(train), test=tuple(raw[i])))
        parts = tuple(folds)
    return PartitionSet(spec=spec, dataset_name=ds.name, parts=parts)


def partition_2x5(
    ds: MLDataset, strategy: str, seeds: tuple[int, int] = (DEFAULT_SEED, DEFAULT_SEED + 1)
) -> tuple[PartitionSet, PartitionSet]:
    """Two independent 5-fold runs under distinct seeds (2x5 cross-validation)."""
    if seeds[0] == seeds[1]:
        raise PartitionError("the two 5-fold runs need distinct seeds")
    scheme = KFolds(5)
    return (
        partition(ds, PartitionSpec(strategy=strategy, scheme=scheme, seed=seeds[0])),
        partition(ds, PartitionSpec(strategy=strategy, scheme=scheme, seed=seeds[1])),
    )


def materialize(ds: MLDataset, pset: PartitionSet):
    """Slice the dataset along the partition: a list of datasets for ratio
    parts, a list of (train, test) dataset pairs otherwise. Row order
    follows the index lists."""
    if ds.name != pset.dataset_name:
        raise PartitionError(
            f"partition was built for {pset.dataset_name!r}, not {ds.name!r}"
        )
    if isinstance(pset.spec.scheme, Ratios):
        return [ds.subset(part) for part in pset.parts]
    return [(ds.subset(fold.train), ds.subset(fold.test)) for fold in pset.parts]
