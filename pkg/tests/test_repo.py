"""Repository builder: scan, archives, JSON records, deterministic output."""

import hashlib
import json
import tarfile

import numpy as np
import pytest

from mltk import (
    Format,
    RepoConfig,
    RepoError,
    build_partitions,
    build_repository,
    build_site,
    dataset_record,
    load_config,
    measure_bundle,
    scan,
    sparsity,
    write,
)
from mltk.repo import webassets_root
from util import make_dataset, nominal_missing_dataset

EXPECTED_STRATEGIES = ("random", "stratified", "iterative")
EXPECTED_SCHEMES = ("holdout", "2x5", "10cv")
EXPECTED_FORMATS = ("mulan", "meka", "keel", "libsvm", "csv")


def corpus_dataset(name="demo", n=20, k=3, seed=5):
    rng = np.random.default_rng(seed)
    labels = (rng.random((n, k)) < 0.5).astype(np.int8)
    labels[0] = 1  # keep every label populated
    return make_dataset(
        labels,
        features=np.round(rng.normal(size=(n, 2)), 4),
        name=name,
        citation="@misc{demo2024, title={Demo}}",
    )


def tree_digest(root):
    digest = hashlib.sha256()
    for path in sorted(p for p in root.rglob("*") if p.is_file()):
        digest.update(path.relative_to(root).as_posix().encode())
        digest.update(path.read_bytes())
    return digest.hexdigest()


# -- scan --------------------------------------------------------------------


def test_scan_reads_datasets_and_isolates_failures(tmp_path):
    write(corpus_dataset("good"), [Format.MULAN], out_dir=tmp_path)
    write(nominal_missing_dataset("mixed"), [Format.CSV], out_dir=tmp_path)
    (tmp_path / "broken.arff").write_text("@relation broken\n@data\n")
    (tmp_path / "notes.txt").write_text("not a dataset\n")
    result = scan(tmp_path)
    assert sorted(ds.name for ds in result.datasets) == ["good", "mixed"]
    assert [p.name for p, _ in result.errors] == ["broken.arff"]
    assert [p.name for p in result.skipped] == ["notes.txt"]


def test_scan_requires_directory(tmp_path):
    with pytest.raises(RepoError):
        scan(tmp_path / "missing")


def test_scan_warns_when_empty(tmp_path):
    with pytest.warns(UserWarning, match="no datasets"):
        scan(tmp_path)


# -- partition archives --------------------------------------------------------


@pytest.fixture(scope="module")
def archive_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("archives")
    archives = build_partitions(corpus_dataset(), out)
    return out, archives


def test_exactly_45_archives_with_documented_names(archive_dir):
    _, archives = archive_dir
    assert len(archives) == 45
    expected = {
        f"demo-{strategy}-{scheme}-{fmt}.tar.gz"
        for strategy in EXPECTED_STRATEGIES
        for scheme in EXPECTED_SCHEMES
        for fmt in EXPECTED_FORMATS
    }
    assert {p.name for p in archives} == expected


def members(path):
    with tarfile.open(path, "r:gz") as tar:
        return sorted(tar.getnames())


def test_holdout_archive_contents(archive_dir):
    out, _ = archive_dir
    got = members(out / "demo-stratified-holdout-mulan.tar.gz")
    assert got == [
        "demo-holdout-strat-1-tra.arff",
        "demo-holdout-strat-1-tst.arff",
        "demo.xml",
    ]


def test_10cv_csv_archive_contents(archive_dir):
    out, _ = archive_dir
    got = members(out / "demo-random-10cv-csv.tar.gz")
    assert len(got) == 21
    assert "demo_labels.csv" in got
    assert sum(name.endswith("-tra.csv") for name in got) == 10
    assert sum(name.endswith("-tst.csv") for name in got) == 10
    assert all("-10cv-rand-" in name for name in got if name != "demo_labels.csv")


def test_2x5_archive_uses_5x2_file_names(archive_dir):
    out, _ = archive_dir
    got = members(out / "demo-iterative-2x5-libsvm.tar.gz")
    assert len(got) == 21  # 10 folds x train/test + label names
    data = [name for name in got if name != "demo_labels.csv"]
    assert all("-5x2-iter-" in name for name in data)
    indices = sorted({int(name.split("-")[3]) for name in data})
    assert indices == list(range(1, 11))


def test_archive_metadata_is_zeroed(archive_dir):
    out, _ = archive_dir
    with tarfile.open(out / "demo-random-holdout-keel.tar.gz", "r:gz") as tar:
        for info in tar.getmembers():
            assert info.mtime == 0 and info.uid == 0 and info.gid == 0
            assert info.uname == "" and info.mode == 0o644


def test_archive_bytes_are_reproducible(tmp_path, archive_dir):
    out, _ = archive_dir
    again = tmp_path / "again"
    build_partitions(corpus_dataset(), again)
    name = "demo-iterative-10cv-mulan.tar.gz"
    assert (again / name).read_bytes() == (out / name).read_bytes()


# -- records -----------------------------------------------------------------


def test_dataset_record_schema():
    ds = nominal_missing_dataset()
    record = dataset_record(ds)
    assert set(record) == {"name", "measures", "sparsity", "labels", "attributes", "citation"}
    assert record["measures"] == measure_bundle(ds).as_dict()
    assert record["sparsity"] == sparsity(ds).ratio
    assert [l["name"] for l in record["labels"]] == list(ds.label_names)
    assert set(record["labels"][0]) == {
        "name", "count", "frequency", "irlbl", "scumble", "scumble_cv",
    }
    kinds = [a["kind"] for a in record["attributes"]]
    assert kinds == ["numeric", "nominal", "numeric", "label", "label", "label"]
    assert record["attributes"][1]["categories"] == ["red", "light blue", "dark-green"]
    assert "categories" not in record["attributes"][0]
    assert record["citation"] == ds.citation


# -- full build ----------------------------------------------------------------


@pytest.fixture(scope="module")
def built_repo(tmp_path_factory):
    src = tmp_path_factory.mktemp("src")
    for name in ("emotions-like", "birdsong", "chess"):
        write(corpus_dataset(name, seed=hash(name) % 1000), [Format.MULAN], out_dir=src)
    out = tmp_path_factory.mktemp("out")
    manifest = build_repository(src, out, site=False)
    return src, out, manifest


def test_build_layout(built_repo):
    _, out, manifest = built_repo
    assert (out / "json" / "index.json").is_file()
    for name in ("birdsong", "chess", "emotions-like"):
        assert (out / "json" / f"{name}.json").is_file()
        assert (out / "full" / f"{name}.arff").is_file()
        assert (out / "full" / f"{name}.xml").is_file()
        assert len(list((out / "partitions" / name).iterdir())) == 45
    assert len(manifest.records) == 3


def test_index_json_contents(built_repo):
    _, out, _ = built_repo
    index = json.loads((out / "json" / "index.json").read_text())
    assert index["title"] == "Multi-label dataset repository"
    assert index["accent_color"] == "#2a7ae2"
    assert index["partition"] is True
    assert index["formats"] == list(EXPECTED_FORMATS)
    assert index["seeds"] == {"single": 10, "pair": [10, 11]}
    assert index["generated_at"] is None
    names = [row["name"] for row in index["datasets"]]
    assert names == sorted(names) == ["birdsong", "chess", "emotions-like"]
    row = index["datasets"][0]
    assert set(row) == {
        "name", "instances", "inputs", "labels", "labelsets", "cardinality",
        "density", "mean_ir", "scumble", "tcs", "sparsity",
    }


def test_per_dataset_json_matches_direct_computation(built_repo):
    src, out, _ = built_repo
    record = json.loads((out / "json" / "birdsong.json").read_text())
    from mltk import read

    ds = read(src / "birdsong.arff")
    fresh = dataset_record(ds)
    for key, value in fresh["measures"].items():
        assert record["measures"][key] == pytest.approx(value), key
    assert record["sparsity"] == pytest.approx(fresh["sparsity"])
    downloads = record["downloads"]
    assert downloads["full"]["format"] == "mulan"
    assert sorted(downloads["full"]["files"]) == [
        "full/birdsong.arff", "full/birdsong.xml",
    ]
    partitions = downloads["partitions"]
    assert len(partitions) == 45
    combos = {(p["strategy"], p["scheme"], p["format"]) for p in partitions}
    assert len(combos) == 45
    for entry in partitions:
        expected = (
            f"partitions/birdsong/birdsong-{entry['strategy']}"
            f"-{entry['scheme']}-{entry['format']}.tar.gz"
        )
        assert entry["path"] == expected
        assert (out / entry["path"]).is_file()


def test_rebuild_is_byte_identical(built_repo, tmp_path):
    src, out, _ = built_repo
    second = tmp_path / "rebuild"
    build_repository(src, second, site=False)
    assert tree_digest(second) == tree_digest(out)


def test_source_date_epoch_sets_generated_at(tmp_path, monkeypatch):
    src = tmp_path / "src"
    write(corpus_dataset("one"), [Format.MULAN], out_dir=src)
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
    manifest = build_repository(src, tmp_path / "out", site=False)
    assert manifest.generated_at == "2023-11-14T22:13:20Z"


def test_partitions_can_be_disabled(tmp_path):
    src = tmp_path / "src"
    write(corpus_dataset("one"), [Format.MULAN], out_dir=src)
    config = RepoConfig(partition=False, formats=(Format.CSV,))
    manifest = build_repository(src, tmp_path / "out", config, site=False)
    record = manifest.records[0]
    assert "partitions" not in record["downloads"]
    assert not (tmp_path / "out" / "partitions").exists()
    assert record["downloads"]["full"]["format"] == "csv"


def test_duplicate_names_rejected(tmp_path):
    src = tmp_path / "src"
    ds = corpus_dataset("twice")
    write(ds, [Format.MULAN], out_dir=src)
    write(ds, [Format.CSV], out_dir=src)
    with pytest.raises(RepoError, match="duplicate"):
        build_repository(src, tmp_path / "out", site=False)


def test_parallel_build_matches_serial(tmp_path):
    src = tmp_path / "src"
    for name in ("aa", "bb"):
        write(corpus_dataset(name, seed=len(name)), [Format.MEKA], out_dir=src)
    serial = tmp_path / "serial"
    threaded = tmp_path / "threaded"
    build_repository(src, serial, site=False, jobs=1)
    build_repository(src, threaded, site=False, jobs=4)
    assert tree_digest(serial) == tree_digest(threaded)


def test_corrupt_file_warns_but_build_continues(tmp_path):
    src = tmp_path / "src"
    write(corpus_dataset("fine"), [Format.MULAN], out_dir=src)
    (src / "broken.arff").write_text("@relation nope\n")
    with pytest.warns(UserWarning, match="broken.arff"):
        manifest = build_repository(src, tmp_path / "out", site=False)
    assert [r["name"] for r in manifest.records] == ["fine"]


def test_site_step_depends_on_bundle(tmp_path):
    src = tmp_path / "src"
    write(corpus_dataset("one"), [Format.MULAN], out_dir=src)
    out = tmp_path / "out"
    if webassets_root() is None:
        with pytest.raises(RepoError, match="bundle"):
            build_repository(src, out, site=True)
    else:
        build_repository(src, out, site=True)
        assert (out / "index.html").is_file()


def test_build_site_requires_bundle_or_copies_it(tmp_path):
    if webassets_root() is None:
        with pytest.raises(RepoError):
            build_site(tmp_path)
    else:
        build_site(tmp_path)
        assert (tmp_path / "index.html").is_file()


# -- config --------------------------------------------------------------------


def test_load_config_defaults_and_file(tmp_path):
    assert load_config(None) == RepoConfig()
    path = tmp_path / "repo.json"
    path.write_text(
        json.dumps(
            {
                "title": "My archive",
                "accent_color": "#aa0000",
                "partition": False,
                "formats": ["csv", "mulan"],
            }
        )
    )
    config = load_config(path)
    assert config.title == "My archive"
    assert config.accent_color == "#aa0000"
    assert config.partition is False
    assert config.formats == (Format.CSV, Format.MULAN)


def test_load_config_rejects_unknown_keys(tmp_path):
    path = tmp_path / "repo.json"
    path.write_text('{"theme": "dark"}')
    with pytest.raises(RepoError, match="unknown"):
        load_config(path)


def test_load_config_rejects_bad_values(tmp_path):
    path = tmp_path / "repo.json"
    path.write_text('{"partition": "yes"}')
    with pytest.raises(RepoError):
        load_config(path)
    path.write_text("not json")
    with pytest.raises(RepoError):
        load_config(path)
    with pytest.raises(RepoError):
        RepoConfig(formats=())
