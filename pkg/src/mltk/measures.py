"""Dataset characterization: the 13-measure bundle and its pieces.

The theoretical complexity score uses the natural logarithm; switching the
base would only rescale every score by a constant, but reported values here
are ln-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

from .dataset import (
    MLDataset,
    _population_cv,
    irlbl,
    labelsets,
    scumble_per_instance,
)


@dataclass(frozen=True)
class MeasureBundle:
    """The 13 dataset-level characterization measures."""

    num_attributes: int
    num_inputs: int
    num_labels: int
    num_instances: int
    num_labelsets: int
    num_single_labelsets: int
    max_frequency: int
    cardinality: float
    density: float
    mean_ir: float | None
    scumble: float
    scumble_cv: float
    tcs: float

    def as_dict(self) -> dict:
        return asdict(self)


def cardinality(ds: MLDataset) -> float:
    """Average number of active labels per instance."""
    return float(ds.labels.sum()) / ds.n


def density(ds: MLDataset) -> float:
    """Cardinality normalized by the number of labels."""
    return cardinality(ds) / ds.k


def mean_ir(ds: MLDataset) -> float | None:
    """Mean of the defined per-label imbalance ratios. Labels that never
    occur have no ratio and are left out of the average."""
    defined = [r for r in irlbl(ds) if r is not None]
    if not defined:
        return None
    return sum(defined) / len(defined)


def scumble(ds: MLDataset) -> tuple[float, float, list[float]]:
    """Dataset concurrence: (mean, coefficient of variation, per-instance
    values). The CV uses the population standard deviation and is 0 when
    the mean is 0."""
    values = scumble_per_instance(ds)
    mean = sum(values) / len(values)
    return mean, _population_cv(values), values


def tcs(ds: MLDataset) -> float:
    """Theoretical complexity score: ln(f * k * number of labelsets)."""
    return math.log(ds.f * ds.k * len(labelsets(ds)))


def measure_bundle(ds: MLDataset) -> MeasureBundle:
    table = labelsets(ds)
    scumble_mean, scumble_cv, _ = scumble(ds)
    return MeasureBundle(
        num_attributes=ds.f + ds.k,
        num_inputs=ds.f,
        num_labels=ds.k,
        num_instances=ds.n,
        num_labelsets=len(table),
        num_single_labelsets=sum(1 for c in table.values() if c == 1),
        max_frequency=max(table.values()),
        cardinality=cardinality(ds),
        density=density(ds),
        mean_ir=mean_ir(ds),
        scumble=scumble_mean,
        scumble_cv=scumble_cv,
        tcs=tcs(ds),
    )
