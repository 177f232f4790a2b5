"""Static repository builder.

Ingests a directory of dataset files, then lays out a browsable site:

    out/index.html, out/assets/*     catalog bundle (optional)
    out/json/index.json              catalog rows + site config
    out/json/<name>.json             full per-dataset record
    out/full/<name>.<ext>            one full-dataset download
    out/partitions/<name>/*.tar.gz   45 archives: 3 strategies x 3 schemes
                                     (holdout 60/40, 2x5 five-fold runs,
                                     10-fold cv) x 5 formats

Builds are deterministic: fixed seeds (10; 10 and 11 for the 2x5 pair),
sorted archive members with zeroed timestamps, and a generated_at that is
null unless SOURCE_DATE_EPOCH pins a build time, so two builds from the
same input are byte-identical.
"""

from __future__ import annotations

import gzip
import json
import os
import shutil
import tarfile
import tempfile
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path

from .dataset import MLDataset, label_stats
from .formats import (
    Format,
    parse_format,
    read,
    sparsity,
    valid_basename,
    write,
    write_citation_sidecar,
    write_partition_files,
)
from .measures import measure_bundle
from .partition import (
    Holdout,
    KFolds,
    PartitionSpec,
    partition,
    partition_2x5,
)

DEFAULT_SEED = 10
PAIR_SEEDS = (10, 11)

#: Partition matrix: (archive token, file-name token) per scheme.
SCHEME_TOKENS = (("holdout", "holdout"), ("2x5", "5x2"), ("10cv", "10cv"))
ARCHIVE_STRATEGIES = ("random", "stratified", "iterative")

_DATA_SUFFIXES = (".arff", ".svm", ".libsvm", ".csv")


class RepoError(ValueError):
    pass


@dataclass(frozen=True)
class RepoConfig:
    title: str = "Multi-label dataset repository"
    accent_color: str = "#2a7ae2"
    partition: bool = True
    formats: tuple[Format, ...] = tuple(Format)

    def __post_init__(self):
        if not self.formats:
            raise RepoError("config needs at least one output format")


def load_config(path=None) -> RepoConfig:
    if path is None:
        return RepoConfig()
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise RepoError(f"cannot load config {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise RepoError(f"config {path} must be a JSON object")
    known = {"title", "accent_color", "partition", "formats"}
    unknown = set(raw) - known
    if unknown:
        raise RepoError(f"config {path} has unknown keys: {sorted(unknown)}")
    kwargs: dict = {}
    if "title" in raw:
        kwargs["title"] = str(raw["title"])
    if "accent_color" in raw:
        kwargs["accent_color"] = str(raw["accent_color"])
    if "partition" in raw:
        if not isinstance(raw["partition"], bool):
            raise RepoError("config key 'partition' must be true or false")
        kwargs["partition"] = raw["partition"]
    if "formats" in raw:
        kwargs["formats"] = tuple(parse_format(f) for f in raw["formats"])
    return RepoConfig(**kwargs)


@dataclass
class ScanResult:
    datasets: list[MLDataset] = field(default_factory=list)
    errors: list[tuple[Path, str]] = field(default_factory=list)
    skipped: list[Path] = field(default_factory=list)


def _is_companion(path: Path) -> bool:
    return (
        path.suffix.lower() in (".xml", ".bib")
        or path.name.lower().endswith("_labels.csv")
    )


def scan(input_dir) -> ScanResult:
    """Parse every recognized dataset file directly inside input_dir.
    Companion files are skipped; a file that fails to parse is reported in
    the result instead of aborting the scan."""
    input_dir = Path(input_dir)
    if not input_dir.is_dir():
        raise RepoError(f"not a directory: {input_dir}")
    result = ScanResult()
    for path in sorted(input_dir.iterdir()):
        if not path.is_file() or _is_companion(path):
            continue
        if path.suffix.lower() not in _DATA_SUFFIXES:
            result.skipped.append(path)
            continue
        try:
            result.datasets.append(read(path))
        except ValueError as exc:
            result.errors.append((path, str(exc)))
    if not result.datasets:
        warnings.warn(f"no datasets found in {input_dir}")
    return result


def _deterministic_tar(archive: Path, files: list[Path]) -> None:
    """Pack files (flat, sorted by name) with zeroed metadata so the bytes
    depend only on the contents."""
    with open(archive, "wb") as raw:
        with gzip.GzipFile(filename="", fileobj=raw, mode="wb", mtime=0) as gz:
            with tarfile.open(fileobj=gz, mode="w") as tar:
                for path in sorted(files, key=lambda p: p.name):
                    info = tarfile.TarInfo(name=path.name)
                    info.size = path.stat().st_size
                    info.mtime = 0
                    info.uid = info.gid = 0
                    info.uname = info.gname = ""
                    info.mode = 0o644
                    with path.open("rb") as handle:
                        tar.addfile(info, handle)


def _scheme_partitions(ds: MLDataset, strategy: str, archive_token: str):
    if archive_token == "holdout":
        return [partition(ds, PartitionSpec(strategy, Holdout(60.0), seed=DEFAULT_SEED))]
    if archive_token == "2x5":
        return list(partition_2x5(ds, strategy, PAIR_SEEDS))
    return [partition(ds, PartitionSpec(strategy, KFolds(10), seed=DEFAULT_SEED))]


def build_partitions(ds: MLDataset, out_dir, formats=tuple(Format)) -> list[Path]:
    """Write every strategy x scheme x format archive for one dataset and
    return the archive paths (45 with all five formats)."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    name = valid_basename(ds.name)
    archives: list[Path] = []
    for strategy in ARCHIVE_STRATEGIES:
        for archive_token, file_token in SCHEME_TOKENS:
            psets = _scheme_partitions(ds, strategy, archive_token)
            for fmt in formats:
                archive = out_dir / f"{name}-{strategy}-{archive_token}-{fmt.value}.tar.gz"
                with tempfile.TemporaryDirectory() as tmp:
                    files = write_partition_files(
                        ds,
                        psets,
                        [fmt],
                        out_dir=tmp,
                        basename=name,
                        scheme_token=file_token,
                        overwrite=True,
                    )
                    _deterministic_tar(archive, files)
                archives.append(archive)
    return archives


def dataset_record(ds: MLDataset) -> dict:
    """JSON-ready description of one dataset: the 13 measures, sparsity,
    per-label statistics, the attribute list and the citation."""
    return {
        "name": ds.name,
        "measures": measure_bundle(ds).as_dict(),
        "sparsity": sparsity(ds).ratio,
        "labels": [
            {
                "name": stat.name,
                "count": stat.count,
                "frequency": stat.frequency,
                "irlbl": stat.irlbl,
                "scumble": stat.scumble,
                "scumble_cv": stat.scumble_cv,
            }
            for stat in label_stats(ds)
        ],
        "attributes": [
            {"name": att.name, "kind": att.kind}
            | ({"categories": list(att.categories)} if att.categories else {})
            for att in ds.attributes
        ],
        "citation": ds.citation,
    }


def catalog_row(record: dict) -> dict:
    """The flat row the catalog table shows, drawn from a dataset record."""
    measures = record["measures"]
    return {
        "name": record["name"],
        "instances": measures["num_instances"],
        "inputs": measures["num_inputs"],
        "labels": measures["num_labels"],
        "labelsets": measures["num_labelsets"],
        "cardinality": measures["cardinality"],
        "density": measures["density"],
        "mean_ir": measures["mean_ir"],
        "scumble": measures["scumble"],
        "tcs": measures["tcs"],
        "sparsity": record["sparsity"],
    }


@dataclass
class RepoManifest:
    config: RepoConfig
    generated_at: str | None
    records: list[dict]

    def index_dict(self) -> dict:
        return {
            "title": self.config.title,
            "accent_color": self.config.accent_color,
            "partition": self.config.partition,
            "formats": [f.value for f in self.config.formats],
            "seeds": {"single": DEFAULT_SEED, "pair": list(PAIR_SEEDS)},
            "generated_at": self.generated_at,
            "datasets": [catalog_row(r) for r in self.records],
        }


def _generated_at() -> str | None:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is None:
        return None
    try:
        moment = datetime.fromtimestamp(int(epoch), tz=timezone.utc)
    except (ValueError, OverflowError, OSError) as exc:
        raise RepoError(f"bad SOURCE_DATE_EPOCH {epoch!r}: {exc}") from exc
    return moment.isoformat().replace("+00:00", "Z")


def _dump_json(payload: dict, path: Path) -> None:
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n",
        encoding="utf-8",
    )


def webassets_root() -> Path | None:
    """Directory holding the catalog bundle, or None when not shipped."""
    root = Path(str(resources.files("mltk"))) / "webassets"
    return root if (root / "index.html").is_file() else None


def build_site(out_dir) -> Path:
    out_dir = Path(out_dir)
    bundle = webassets_root()
    if bundle is None:
        raise RepoError(
            "catalog bundle is not installed alongside the package; "
            "rerun with the site step disabled or add the bundle first"
        )
    shutil.copy2(bundle / "index.html", out_dir / "index.html")
    assets = bundle / "assets"
    if assets.is_dir():
        shutil.copytree(assets, out_dir / "assets", dirs_exist_ok=True)
    return out_dir


def _build_one(ds: MLDataset, out_dir: Path, config: RepoConfig) -> dict:
    name = valid_basename(ds.name)
    full_fmt = config.formats[0]
    full_dir = out_dir / "full"
    full_dir.mkdir(parents=True, exist_ok=True)
    full_files = write(ds, [full_fmt], out_dir=full_dir, basename=name, overwrite=True)
    full_files += write_citation_sidecar(ds, full_files, overwrite=True)
    record = dataset_record(ds)
    downloads: dict = {
        "full": {
            "format": full_fmt.value,
            "files": [p.relative_to(out_dir).as_posix() for p in full_files],
        }
    }
    if config.partition:
        matrix = _archive_matrix(name, config.formats)
        archives = build_partitions(ds, out_dir / "partitions" / name, config.formats)
        if [p.name for p in archives] != [entry[3] for entry in matrix]:
            raise RepoError(f"archive set mismatch for {ds.name}")
        downloads["partitions"] = [
            {
                "strategy": strategy,
                "scheme": archive_token,
                "format": fmt.value,
                "path": f"partitions/{name}/{file_name}",
            }
            for (strategy, archive_token, fmt, file_name) in matrix
        ]
    record["downloads"] = downloads
    return record


def _archive_matrix(name: str, formats) -> list[tuple[str, str, Format, str]]:
    out = []
    for strategy in ARCHIVE_STRATEGIES:
        for archive_token, _ in SCHEME_TOKENS:
            for fmt in formats:
                out.append(
                    (
                        strategy,
                        archive_token,
                        fmt,
                        f"{name}-{strategy}-{archive_token}-{fmt.value}.tar.gz",
                    )
                )
    return out


def build_repository(
    input_dir,
    out_dir,
    config: RepoConfig | None = None,
    *,
    site: bool = True,
    jobs: int = 1,
) -> RepoManifest:
    """Scan input_dir and produce the whole static repository under out_dir.
    Scan failures are reported as warnings, not fatal errors, so one corrupt
    file cannot sink the build."""
    config = config or RepoConfig()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    result = scan(input_dir)
    for path, message in result.errors:
        warnings.warn(f"skipping {path.name}: {message}")
    names = [valid_basename(ds.name) for ds in result.datasets]
    if len(set(names)) != len(names):
        dup = sorted({n for n in names if names.count(n) > 1})
        raise RepoError(f"duplicate dataset names after sanitizing: {dup}")
    datasets = sorted(result.datasets, key=lambda d: valid_basename(d.name))

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(lambda d: _build_one(d, out_dir, config), datasets))
    else:
        records = [_build_one(ds, out_dir, config) for ds in datasets]

    json_dir = out_dir / "json"
    json_dir.mkdir(exist_ok=True)
    manifest = RepoManifest(config=config, generated_at=_generated_at(), records=records)
    for record in records:
        _dump_json(record, json_dir / f"{valid_basename(record['name'])}.json")
    _dump_json(manifest.index_dict(), json_dir / "index.json")
    if site:
        build_site(out_dir)
    return manifest


def serve_directory(root, port: int = 8000):
    """Blocking convenience server for a built repository."""
    import functools
    import http.server

    handler = functools.partial(
        http.server.SimpleHTTPRequestHandler, directory=str(root)
    )
    with http.server.ThreadingHTTPServer(("127.0.0.1", port), handler) as httpd:
        print(f"serving {root} at http://127.0.0.1:{httpd.server_address[1]}/")
        httpd.serve_forever()
