"""Reading and writing multi-label datasets in five interchange formats.

read() / detect_format() accept a path and optional ReadOptions; write()
takes an MLDataset or a PartitionSet (with its source dataset) and emits one
or more formats into a directory, returning every file written. Companion
files (MULAN label XML, LibSVM/CSV label-name lists) are handled on both
sides. sparsity() reports the fraction of zero cells, the figure that
decides whether the sparse ARFF body is worth using.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

import numpy as np

from ..dataset import MLDataset
from ..partition import STRATEGY_TOKENS, PartitionSet, Ratios, materialize
from .arff import (
    FormatError,
    format_number,
    meka_label_count,
    read_keel,
    read_labels_xml,
    read_meka,
    read_mulan,
    write_arff,
    write_labels_xml,
)
from .csvio import read_csv_dataset, write_csv_dataset
from .libsvm import read_label_names, read_libsvm, write_label_names, write_libsvm

__all__ = [
    "Format",
    "FormatError",
    "ReadOptions",
    "SparsityReport",
    "detect_format",
    "parse_format",
    "partition_filename",
    "read",
    "sparsity",
    "valid_basename",
    "write",
    "write_citation_sidecar",
    "write_partition_files",
]


class Format(str, Enum):
    MULAN = "mulan"
    MEKA = "meka"
    KEEL = "keel"
    LIBSVM = "libsvm"
    CSV = "csv"


ARFF_DIALECTS = (Format.MULAN, Format.MEKA, Format.KEEL)
EXTENSIONS = {
    Format.MULAN: "arff",
    Format.MEKA: "arff",
    Format.KEEL: "arff",
    Format.LIBSVM: "svm",
    Format.CSV: "csv",
}


def parse_format(text: str | "Format") -> Format:
    if isinstance(text, Format):
        return text
    try:
        return Format(str(text).lower())
    except ValueError:
        known = ", ".join(f.value for f in Format)
        raise FormatError(f"unknown format {text!r}; expected one of: {known}") from None


@dataclass(frozen=True)
class ReadOptions:
    """Knobs for read(): companion-file overrides and LibSVM shape hints."""

    xml_path: Path | None = None
    labels_path: Path | None = None
    num_labels: int | None = None
    num_features: int | None = None
    name: str | None = None


@dataclass(frozen=True)
class SparsityReport:
    zero_cells: int
    total_cells: int
    ratio: float


def sparsity(ds: MLDataset) -> SparsityReport:
    """Fraction of cells (features and labels combined) that are exactly
    zero; missing feature values do not count as zero."""
    zero = int(np.count_nonzero(ds.features == 0.0)) + int(np.count_nonzero(ds.labels == 0))
    total = ds.n * (ds.f + ds.k)
    return SparsityReport(zero_cells=zero, total_cells=total, ratio=zero / total)


def _sniff_arff(path: Path) -> tuple[str, bool]:
    relation = ""
    has_outputs = False
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read file ({exc})", path) from exc
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        lower = line.lower()
        if lower.startswith("@relation"):
            rest = line[len("@relation"):].strip()
            relation = rest[1:-1] if rest[:1] in "'\"" else rest
        elif lower.startswith("@outputs"):
            has_outputs = True
        elif lower.startswith("@data"):
            break
    return relation, has_outputs


def detect_format(path, options: ReadOptions | None = None) -> Format:
    """Decide the format from the suffix plus, for ARFF, the dialect marks:
    @outputs wins over a -C relation count, which wins over an XML sibling."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix in (".svm", ".libsvm"):
        return Format.LIBSVM
    if suffix == ".csv":
        return Format.CSV
    if suffix != ".arff":
        raise FormatError(f"cannot infer a format from suffix {suffix!r}", path)
    relation, has_outputs = _sniff_arff(path)
    if has_outputs:
        return Format.KEEL
    if meka_label_count(relation) is not None:
        return Format.MEKA
    xml = options.xml_path if options and options.xml_path else path.with_suffix(".xml")
    if Path(xml).exists():
        return Format.MULAN
    raise FormatError(
        "cannot tell the ARFF dialect: no @outputs line, no -C label count "
        "in the relation name, and no XML companion file",
        path,
    )


def read(path, fmt: Format | str | None = None, options: ReadOptions | None = None) -> MLDataset:
    path = Path(path)
    opts = options or ReadOptions()
    resolved = parse_format(fmt) if fmt is not None else detect_format(path, opts)
    if resolved is Format.MULAN:
        ds = read_mulan(path, opts.xml_path)
    elif resolved is Format.MEKA:
        ds = read_meka(path)
    elif resolved is Format.KEEL:
        ds = read_keel(path)
    elif resolved is Format.LIBSVM:
        ds = read_libsvm(
            path,
            num_labels=opts.num_labels,
            labels_path=opts.labels_path,
            num_features=opts.num_features,
            name=opts.name,
        )
    else:
        ds = read_csv_dataset(path, labels_path=opts.labels_path, name=opts.name)
    if opts.name and ds.name != opts.name:
        ds = replace(ds, name=opts.name)
    if ds.citation is None:
        sidecar = path.with_suffix(".bib")
        if sidecar.is_file():
            text = sidecar.read_text(encoding="utf-8").strip()
            if text:
                ds = replace(ds, citation=text)
    return ds


_BASENAME = re.compile(r"[A-Za-z0-9][A-Za-z0-9_.\-]*\Z")


def valid_basename(name: str | None) -> str:
    """The given name if it is safe to use in file names, else a stand-in."""
    if name and _BASENAME.match(name):
        return name
    return "unnamed_mldr"


def partition_filename(
    basename: str,
    scheme_token: str,
    strategy: str,
    index: int,
    role: str | None = None,
    *,
    ext: str,
    dialect_suffix: str = "",
) -> str:
    stem = f"{basename}-{scheme_token}-{STRATEGY_TOKENS[strategy]}-{index}"
    if role:
        stem += f"-{role}"
    return f"{stem}{dialect_suffix}.{ext}"


def _normalize_formats(formats) -> list[Format]:
    if isinstance(formats, (str, Format)):
        formats = [formats]
    out: list[Format] = []
    for item in formats:
        fmt = item if isinstance(item, Format) else parse_format(item)
        if fmt not in out:
            out.append(fmt)
    if not out:
        raise FormatError("no output formats given")
    return out


class _Sink:
    """Tracks files produced by one write() call: refuses to clobber
    pre-existing files unless asked, and never lists a path twice."""

    def __init__(self, overwrite: bool):
        self.overwrite = overwrite
        self.paths: list[Path] = []
        self._seen: set[Path] = set()

    def claim(self, path: Path) -> bool:
        if path in self._seen:
            return False
        if path.exists() and not self.overwrite:
            raise FormatError(f"refusing to overwrite existing file {path}")
        self._seen.add(path)
        self.paths.append(path)
        return True


def _dialect_suffix(fmt: Format, formats: list[Format]) -> str:
    arff_count = sum(1 for f in formats if f in ARFF_DIALECTS)
    if fmt in ARFF_DIALECTS and arff_count > 1:
        return f"-{fmt.value}"
    return ""


def _emit_dataset(
    ds: MLDataset,
    fmt: Format,
    out_dir: Path,
    stem: str,
    basename: str,
    sparse: bool,
    sink: _Sink,
) -> None:
    ext = EXTENSIONS[fmt]
    target = out_dir / f"{stem}.{ext}"
    if fmt in ARFF_DIALECTS:
        if sink.claim(target):
            write_arff(ds, target, fmt.value, sparse=sparse)
        if fmt is Format.MULAN:
            xml = out_dir / f"{stem}.xml"  # same stem as the data file
            if sink.claim(xml):
                write_labels_xml(ds.label_names, xml)
        return
    companion = out_dir / f"{basename}_labels.csv"
    fresh_companion = sink.claim(companion)
    if fmt is Format.LIBSVM:
        if sink.claim(target):
            write_libsvm(ds, target)
    elif sink.claim(target):
        write_csv_dataset(ds, target, labels_path=companion, include_companion=False)
    if fresh_companion:
        write_label_names(ds.label_names, companion)


def write(
    data: MLDataset | PartitionSet,
    formats,
    *,
    out_dir,
    sparse: bool = False,
    basename: str | None = None,
    overwrite: bool = False,
    source: MLDataset | None = None,
) -> list[Path]:
    """Write a dataset, or every part of a partition, in each requested
    format. Returns the files written, companions included. When several
    ARFF dialects are requested together their stems get a -<dialect>
    suffix so they do not collide."""
    if isinstance(data, PartitionSet):
        if source is None:
            raise FormatError("writing a PartitionSet needs source= (the dataset it indexes)")
        return write_partition_files(
            source,
            [data],
            formats,
            out_dir=out_dir,
            sparse=sparse,
            basename=basename,
            overwrite=overwrite,
        )
    fmts = _normalize_formats(formats)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    name = valid_basename(basename if basename is not None else data.name)
    if sparse and Format.CSV in fmts:
        warnings.warn("CSV output is always dense; the sparse flag does not apply to it")
    sink = _Sink(overwrite)
    for fmt in fmts:
        _emit_dataset(
            data, fmt, out_dir, name + _dialect_suffix(fmt, fmts), name, sparse, sink
        )
    return sink.paths


def write_citation_sidecar(
    ds: MLDataset, paths, *, overwrite: bool = False
) -> list[Path]:
    """LibSVM and CSV have no comment syntax, so their data files lose the
    citation. Drop a <stem>.bib beside each such file so the citation still
    resolves when the export is read back."""
    if not ds.citation:
        return []
    plain_exts = {f".{EXTENSIONS[Format.LIBSVM]}", f".{EXTENSIONS[Format.CSV]}"}
    targets = []
    for path in map(Path, paths):
        if path.name.endswith("_labels.csv") or path.suffix not in plain_exts:
            continue
        targets.append(path.with_suffix(".bib"))
    written = []
    for target in dict.fromkeys(targets):
        if target.exists() and not overwrite:
            raise FormatError(f"refusing to overwrite existing file {target}")
        target.write_text(ds.citation.rstrip() + "\n", encoding="utf-8")
        written.append(target)
    return written


def write_partition_files(
    source: MLDataset,
    psets,
    formats,
    *,
    out_dir,
    sparse: bool = False,
    basename: str | None = None,
    overwrite: bool = False,
    scheme_token: str | None = None,
) -> list[Path]:
    """Export partition parts as files named
    <basename>-<scheme>-<strategy>-<i>[-tra|-tst].<ext>. Fold indices are
    1-based and keep counting across multiple sets, which is how the two
    5-fold runs of a 2x5 experiment share one directory under the token
    5x2. Ratio parts are standalone, so they carry no -tra/-tst role."""
    if isinstance(psets, PartitionSet):
        psets = [psets]
    psets = list(psets)
    if not psets:
        raise FormatError("no partitions to write")
    strategy = psets[0].spec.strategy
    for ps in psets:
        if ps.spec.strategy != strategy or ps.dataset_name != psets[0].dataset_name:
            raise FormatError("partitions in one export must share strategy and dataset")
    if scheme_token is None:
        tokens = {ps.scheme_token() for ps in psets}
        if len(tokens) != 1:
            raise FormatError("mixed schemes in one export need an explicit scheme_token")
        scheme_token = tokens.pop()
    fmts = _normalize_formats(formats)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    name = valid_basename(basename if basename is not None else psets[0].dataset_name)
    if sparse and Format.CSV in fmts:
        warnings.warn("CSV output is always dense; the sparse flag does not apply to it")
    sink = _Sink(overwrite)

    pieces: list[tuple[int, str | None, MLDataset]] = []
    index = 0
    for ps in psets:
        sliced = materialize(source, ps)
        if isinstance(ps.spec.scheme, Ratios):
            for part in sliced:
                index += 1
                pieces.append((index, None, part))
        else:
            for train, test in sliced:
                index += 1
                pieces.append((index, "tra", train))
                pieces.append((index, "tst", test))

    companion = out_dir / f"{name}_labels.csv"
    for fmt in fmts:
        ext = EXTENSIONS[fmt]
        suffix = _dialect_suffix(fmt, fmts)
        if fmt in (Format.LIBSVM, Format.CSV) and sink.claim(companion):
            write_label_names(source.label_names, companion)
        for index, role, piece in pieces:
            file_name = partition_filename(
                name, scheme_token, strategy, index, role, ext=ext, dialect_suffix=suffix
            )
            target = out_dir / file_name
            if not sink.claim(target):
                continue
            if fmt in ARFF_DIALECTS:
                write_arff(piece, target, fmt.value, sparse=sparse)
            elif fmt is Format.LIBSVM:
                write_libsvm(piece, target)
            else:
                write_csv_dataset(piece, target, labels_path=companion, include_companion=False)
        if fmt is Format.MULAN:
            xml = out_dir / f"{name}.xml"
            if sink.claim(xml):
                write_labels_xml(source.label_names, xml)
    return sink.paths
