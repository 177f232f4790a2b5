"""Dataset model: construction invariants, labelset table, per-label stats."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mltk import (
    NOMINAL,
    NUMERIC,
    AttributeMeta,
    DatasetError,
    MLDataset,
    irlbl,
    label_counts,
    label_stats,
    labelset_key,
    labelsets,
)
from oracles import o_label_scumble
from util import make_dataset, random_dataset


def test_shape_properties():
    ds = make_dataset([[1, 0], [0, 1], [1, 1]])
    assert (ds.n, ds.f, ds.k) == (3, 1, 2)
    assert len(ds.attributes) == ds.f + ds.k
    assert [a.name for a in ds.label_attributes] == list(ds.label_names)


def test_rejects_empty_dataset():
    with pytest.raises(DatasetError):
        make_dataset(np.zeros((0, 2), dtype=np.int8), features=np.zeros((0, 1)))


def test_rejects_single_label():
    with pytest.raises(DatasetError):
        make_dataset([[1], [0]])


def test_rejects_no_features():
    with pytest.raises(DatasetError):
        make_dataset([[1, 0], [0, 1]], features=np.zeros((2, 0)))


def test_rejects_label_values_outside_binary():
    with pytest.raises(DatasetError):
        make_dataset([[1, 2], [0, 1]])


def test_rejects_attribute_count_mismatch():
    attrs = (AttributeMeta("a", NUMERIC), AttributeMeta("l1", "label"))
    with pytest.raises(DatasetError):
        MLDataset(
            name="bad",
            features=np.zeros((2, 1)),
            labels=np.array([[1, 0], [0, 1]], dtype=np.int8),
            attributes=attrs,
            label_names=("l1", "l2"),
        )


def test_rejects_duplicate_attribute_names():
    attrs = (
        AttributeMeta("a", NUMERIC),
        AttributeMeta("a", "label"),
        AttributeMeta("l2", "label"),
    )
    with pytest.raises(DatasetError):
        MLDataset(
            name="bad",
            features=np.zeros((2, 1)),
            labels=np.array([[1, 0], [0, 1]], dtype=np.int8),
            attributes=attrs,
            label_names=("a", "l2"),
        )


def test_rejects_nominal_index_out_of_range():
    attrs = (
        AttributeMeta("c", NOMINAL, ("x", "y")),
        AttributeMeta("l1", "label"),
        AttributeMeta("l2", "label"),
    )
    with pytest.raises(DatasetError):
        MLDataset(
            name="bad",
            features=np.array([[2.0], [0.0]]),
            labels=np.array([[1, 0], [0, 1]], dtype=np.int8),
            attributes=attrs,
            label_names=("l1", "l2"),
        )


def test_rejects_missing_values_in_labels():
    with pytest.raises(DatasetError):
        MLDataset(
            name="bad",
            features=np.zeros((2, 1)),
            labels=np.array([[1.0, np.nan], [0.0, 1.0]]),
            attributes=(
                AttributeMeta("a", NUMERIC),
                AttributeMeta("l1", "label"),
                AttributeMeta("l2", "label"),
            ),
            label_names=("l1", "l2"),
        )


def test_nominal_meta_requires_categories():
    with pytest.raises(DatasetError):
        AttributeMeta("c", NOMINAL)
    with pytest.raises(DatasetError):
        AttributeMeta("x", NUMERIC, ("a",))


def test_matrices_are_immutable():
    ds = make_dataset([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        ds.labels[0, 0] = 0
    with pytest.raises(ValueError):
        ds.features[0, 0] = 9.0


def test_labelset_key_is_column_order_bit_string():
    assert labelset_key(np.array([1, 0, 1], dtype=np.int8)) == "101"


def test_labelsets_example_counts():
    ds = make_dataset([[1, 0], [1, 1], [1, 0]])
    assert labelsets(ds) == {"10": 2, "11": 1}


def test_labelsets_identical_rows():
    ds = make_dataset([[1, 1]] * 4)
    assert labelsets(ds) == {"11": 4}


def test_labelsets_all_distinct():
    ds = make_dataset([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
    table = labelsets(ds)
    assert len(table) == 4
    assert set(table.values()) == {1}


def test_irlbl_balanced_counts():
    ds = make_dataset([[1, 1], [1, 1], [1, 1]])
    assert irlbl(ds) == [1.0, 1.0]


def test_irlbl_hand_example():
    # counts 4 and 2: most frequent divided by own count
    ds = make_dataset([[1, 1], [1, 1], [1, 0], [1, 0]])
    assert irlbl(ds) == [1.0, 2.0]


def test_irlbl_zero_count_label_is_undefined():
    ds = make_dataset([[1, 0], [1, 0], [1, 0], [1, 0]])
    assert irlbl(ds) == [1.0, None]


def test_label_stats_fields_and_conventions():
    ds = make_dataset([[1, 1], [1, 1], [1, 0], [1, 0]])
    rows = label_stats(ds)
    assert [r.name for r in rows] == ["label1", "label2"]
    assert [r.count for r in rows] == [4, 2]
    assert [r.frequency for r in rows] == [1.0, 0.5]
    assert [r.irlbl for r in rows] == [1.0, 2.0]


def test_label_stats_zero_count_label():
    ds = make_dataset([[1, 0], [1, 0]])
    zero = label_stats(ds)[1]
    assert zero.count == 0 and zero.irlbl is None
    assert zero.scumble == 0.0 and zero.scumble_cv == 0.0


def test_label_stats_scumble_matches_oracle():
    ds = make_dataset([[1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 0, 0], [1, 1, 1]])
    rows = label_stats(ds)
    for row, (mean, cv) in zip(rows, o_label_scumble(ds.labels.tolist())):
        assert row.scumble == pytest.approx(mean, abs=1e-12)
        assert row.scumble_cv == pytest.approx(cv, abs=1e-12)


@given(st.integers(0, 400))
def test_permuting_instances_preserves_stats(seed):
    ds = random_dataset(seed)
    perm = np.random.default_rng(seed + 1).permutation(ds.n)
    shuffled = make_dataset(ds.labels[perm], features=ds.features[perm], name=ds.name)
    assert labelsets(shuffled) == labelsets(ds)
    for a, b in zip(label_stats(shuffled), label_stats(ds)):
        assert (a.name, a.count, a.frequency, a.irlbl) == (b.name, b.count, b.frequency, b.irlbl)
        assert a.scumble == pytest.approx(b.scumble, abs=1e-12)
        assert a.scumble_cv == pytest.approx(b.scumble_cv, abs=1e-12)


@given(st.integers(0, 400))
def test_min_defined_irlbl_is_one_at_every_top_label(seed):
    ds = random_dataset(seed, ensure_nonempty_rows=True)
    values = irlbl(ds)
    counts = label_counts(ds)
    top = counts.max()
    defined = [v for v in values if v is not None]
    assert min(defined) == 1.0
    for j, v in enumerate(values):
        if counts[j] == top:
            assert v == 1.0
        elif v is not None:
            assert v > 1.0


@given(st.integers(0, 400))
def test_count_sum_equals_popcount_weighted_table(seed):
    ds = random_dataset(seed)
    total = sum(r.count for r in label_stats(ds))
    table = labelsets(ds)
    assert total == sum(key.count("1") * c for key, c in table.items())
    assert sum(table.values()) == ds.n


def test_subset_slices_rows_in_given_order():
    ds = make_dataset([[1, 0], [0, 1], [1, 1]])
    sub = ds.subset([2, 0])
    assert sub.n == 2
    assert sub.labels.tolist() == [[1, 1], [1, 0]]
    assert sub.features.tolist() == [ds.features[2].tolist(), ds.features[0].tolist()]
    assert sub.attributes == ds.attributes
