"""Command-line interface.

Thin adapters only: every subcommand parses flags, calls the library and
prints. Exit codes: 0 success, 1 usage error, 2 data error (unreadable or
malformed inputs, refusals to overwrite). MLTK_OUT_DIR supplies the default
output directory where --out-dir is accepted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from .dataset import DatasetError, MLDataset, label_stats
from .evaluation import (
    EvaluationError,
    evaluate,
    read_predictions_csv,
)
from .formats import (
    Format,
    FormatError,
    ReadOptions,
    parse_format,
    read,
    sparsity,
    write,
    write_citation_sidecar,
    write_partition_files,
)
from .measures import measure_bundle
from .partition import (
    Holdout,
    KFolds,
    PartitionError,
    PartitionSpec,
    Ratios,
    partition,
    partition_2x5,
)
from .repo import (
    RepoError,
    build_repository,
    dataset_record,
    load_config,
    serve_directory,
)

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad flags; the contract reserves 2 for data
    errors, so usage problems are remapped to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _parse_scheme(text: str):
    """holdout[:p] | kfolds[:k] | ratios:a,b,... | 2x5"""
    head, _, rest = text.strip().lower().partition(":")
    try:
        if head == "2x5" and not rest:
            return "2x5"
        if head == "holdout":
            return Holdout(float(rest)) if rest else Holdout()
        if head == "kfolds":
            return KFolds(int(rest)) if rest else KFolds()
        if head == "ratios" and rest:
            return Ratios(tuple(float(x) for x in rest.split(",")))
    except (ValueError, PartitionError) as exc:
        raise argparse.ArgumentTypeError(f"bad scheme {text!r}: {exc}") from exc
    raise argparse.ArgumentTypeError(
        f"bad scheme {text!r}: expected holdout[:p], kfolds[:k], ratios:a,b,... or 2x5"
    )


def _parse_format_arg(text: str) -> Format:
    try:
        return parse_format(text)
    except FormatError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _parse_format_list(text: str) -> list[Format]:
    return [_parse_format_arg(part) for part in text.split(",") if part.strip()]


def _add_read_flags(parser: argparse.ArgumentParser, format_flag: str = "--format") -> None:
    parser.add_argument("path", type=Path, help="dataset file")
    parser.add_argument(
        format_flag, dest="fmt", type=_parse_format_arg, default=None,
        help="input format (default: detect from the file)",
    )
    parser.add_argument("--xml", type=Path, default=None, help="label XML companion (MULAN)")
    parser.add_argument(
        "--labels", type=Path, default=None, help="label-name companion (LibSVM/CSV)"
    )
    parser.add_argument("--num-labels", type=int, default=None, help="label count (LibSVM)")
    parser.add_argument(
        "--num-features", type=int, default=None, help="feature count (LibSVM)"
    )


def _load(args) -> MLDataset:
    options = ReadOptions(
        xml_path=args.xml,
        labels_path=args.labels,
        num_labels=args.num_labels,
        num_features=args.num_features,
    )
    return read(args.path, fmt=args.fmt, options=options)


def _out_dir(args) -> Path:
    if args.out_dir is not None:
        return args.out_dir
    return Path(os.environ.get("MLTK_OUT_DIR", "."))


def _fmt_value(value: float | None) -> str:
    if value is None:
        return "-"
    return f"{value:.6g}"


def cmd_info(args) -> int:
    ds = _load(args)
    record = dataset_record(ds)
    if args.json:
        print(json.dumps(record, indent=2, sort_keys=True, allow_nan=False))
        return 0
    print(f"dataset: {ds.name}")
    for key, value in record["measures"].items():
        print(f"{key}: {value if isinstance(value, int) else _fmt_value(value)}")
    print(f"sparsity: {record['sparsity']:.7g}")
    print()
    print(f"{'label':<24} {'count':>7} {'frequency':>10} {'irlbl':>9} {'scumble':>9}")
    for stat in label_stats(ds):
        print(
            f"{stat.name:<24} {stat.count:>7} {stat.frequency:>10.6f} "
            f"{_fmt_value(stat.irlbl):>9} {stat.scumble:>9.6f}"
        )
    return 0


def cmd_convert(args) -> int:
    ds = _load(args)
    if args.sparse:
        ratio = sparsity(ds).ratio
        if ratio < 0.5:
            print(
                f"warning: only {ratio:.1%} of cells are zero; "
                "sparse output will be larger than dense",
                file=sys.stderr,
            )
    paths = write(
        ds,
        args.to,
        out_dir=_out_dir(args),
        sparse=args.sparse,
        basename=args.basename,
        overwrite=args.overwrite,
    )
    paths += write_citation_sidecar(ds, paths, overwrite=args.overwrite)
    for path in paths:
        print(path)
    return 0


def cmd_partition(args) -> int:
    ds = _load(args)
    if args.scheme == "2x5":
        psets = list(partition_2x5(ds, args.strategy, (args.seed, args.seed + 1)))
        scheme_token = "5x2"
    else:
        spec = PartitionSpec(strategy=args.strategy, scheme=args.scheme, seed=args.seed)
        psets = [partition(ds, spec)]
        scheme_token = None
    if args.write is None:
        docs = [ps.to_json_dict() for ps in psets]
        payload = docs[0] if len(docs) == 1 else docs
        print(json.dumps(payload, indent=2))
        return 0
    paths = write_partition_files(
        ds,
        psets,
        args.write,
        out_dir=_out_dir(args),
        sparse=args.sparse,
        basename=args.basename,
        overwrite=args.overwrite,
        scheme_token=scheme_token,
    )
    for path in paths:
        print(path)
    return 0


def _print_metric_block(title: str, block: dict) -> None:
    print(f"{title}:")
    for key, value in block.items():
        print(f"  {key}: {value:.6g}")


def cmd_evaluate(args) -> int:
    report = evaluate(read_predictions_csv(args.path))
    if args.json:
        print(json.dumps(report.as_dict(), indent=2, sort_keys=True, allow_nan=False))
        return 0
    _print_metric_block("example_based", report.example_based)
    _print_metric_block("macro", report.macro)
    _print_metric_block("micro", report.micro)
    if report.ranking is not None:
        _print_metric_block("ranking", report.ranking)
    return 0


def cmd_sparsity(args) -> int:
    report = sparsity(_load(args))
    if args.json:
        print(json.dumps(report.__dict__, indent=2, sort_keys=True))
        return 0
    print(f"{report.ratio:.7g}")
    return 0


def cmd_cite(args) -> int:
    ds = _load(args)
    if not ds.citation:
        print("no citation available", file=sys.stderr)
        return DATA_ERROR
    print(ds.citation)
    return 0


def cmd_repo_build(args) -> int:
    config = load_config(args.config)
    if args.title is not None:
        config = replace(config, title=args.title)
    if args.accent_color is not None:
        config = replace(config, accent_color=args.accent_color)
    if args.no_partitions:
        config = replace(config, partition=False)
    if args.formats is not None:
        config = replace(config, formats=tuple(args.formats))
    out_dir = _out_dir(args)
    manifest = build_repository(
        args.input_dir, out_dir, config, site=not args.no_site, jobs=args.jobs
    )
    count = len(manifest.records)
    print(f"built {count} dataset(s) into {out_dir}")
    if config.partition:
        per = 3 * 3 * len(config.formats)
        print(f"partition archives: {per} per dataset")
    else:
        print("partition archives: skipped")
    if args.serve is not None:
        try:
            serve_directory(out_dir, args.serve)
        except KeyboardInterrupt:
            pass
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="mltk", description="multi-label dataset toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[], help="print the 13 measures and the label table")
    _add_read_flags(p)
    p.add_argument("--json", action="store_true", help="emit the repository JSON record")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("convert", help="rewrite a dataset in other formats")
    _add_read_flags(p, format_flag="--from")
    p.add_argument(
        "--to", type=_parse_format_list, required=True,
        help="comma-separated output formats (mulan,meka,keel,libsvm,csv)",
    )
    p.add_argument("--sparse", action="store_true", help="sparse ARFF data rows")
    p.add_argument("--basename", default=None, help="output file stem")
    p.add_argument("--out-dir", type=Path, default=None)
    p.add_argument("--overwrite", action="store_true")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("partition", help="split a dataset into parts or folds")
    _add_read_flags(p)
    p.add_argument(
        "--strategy", choices=("random", "stratified", "iterative"), default="random"
    )
    p.add_argument(
        "--scheme", type=_parse_scheme, default=KFolds(),
        help="holdout[:p] | kfolds[:k] | ratios:a,b,... | 2x5 (default kfolds:5)",
    )
    p.add_argument("--seed", type=int, default=10)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument(
        "--indices", action="store_true",
        help="print the JSON index document (the default)",
    )
    mode.add_argument(
        "--write", type=_parse_format_list, default=None,
        help="materialize the parts in these formats instead",
    )
    p.add_argument("--sparse", action="store_true")
    p.add_argument("--basename", default=None)
    p.add_argument("--out-dir", type=Path, default=None)
    p.add_argument("--overwrite", action="store_true")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("evaluate", help="score a predictions CSV")
    p.add_argument("path", type=Path, help="CSV with truth_*/pred_*/score_* columns")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sparsity", help="fraction of zero cells")
    _add_read_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sparsity)

    p = sub.add_parser("cite", help="print the dataset citation")
    _add_read_flags(p)
    p.set_defaults(func=cmd_cite)

    p = sub.add_parser("repo-build", help="build a static dataset repository")
    p.add_argument("input_dir", type=Path, help="directory of dataset files")
    p.add_argument("--out-dir", type=Path, default=None)
    p.add_argument("--config", type=Path, default=None, help="JSON config file")
    p.add_argument("--title", default=None)
    p.add_argument("--accent-color", default=None)
    p.add_argument("--no-partitions", action="store_true", help="skip the 45-archive matrix")
    p.add_argument(
        "--formats", type=_parse_format_list, default=None,
        help="restrict the export formats",
    )
    p.add_argument("--no-site", action="store_true", help="skip the catalog page step")
    p.add_argument("--jobs", type=int, default=1, help="datasets processed in parallel")
    p.add_argument(
        "--serve", type=int, nargs="?", const=8000, default=None, metavar="PORT",
        help="serve the built repository afterwards",
    )
    p.set_defaults(func=cmd_repo_build)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DatasetError, FormatError, PartitionError, EvaluationError, RepoError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
