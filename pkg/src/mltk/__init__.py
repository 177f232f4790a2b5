"""Multi-label dataset toolkit: five interchange formats, characterization
and evaluation metrics, reproducible partitioning, and a static repository
builder."""

from .dataset import (
    LABEL,
    NOMINAL,
    NUMERIC,
    AttributeMeta,
    DatasetError,
    LabelStats,
    MLDataset,
    irlbl,
    label_counts,
    label_stats,
    labelset_key,
    labelsets,
    scumble_per_instance,
)
from .evaluation import (
    EvaluationError,
    EvaluationReport,
    PredictionSet,
    evaluate,
    example_based,
    hamming_loss,
    label_based,
    ranking_metrics,
    read_predictions_csv,
)
from .formats import (
    Format,
    FormatError,
    ReadOptions,
    SparsityReport,
    detect_format,
    read,
    sparsity,
    write,
    write_citation_sidecar,
    write_partition_files,
)
from .measures import (
    MeasureBundle,
    cardinality,
    density,
    mean_ir,
    measure_bundle,
    scumble,
    tcs,
)
from .partition import (
    DEFAULT_SEED,
    Fold,
    Holdout,
    KFolds,
    PartitionError,
    PartitionSet,
    PartitionSpec,
    Ratios,
    STRATEGIES,
    materialize,
    partition,
    partition_2x5,
    target_sizes,
)
from .repo import (
    RepoConfig,
    RepoError,
    RepoManifest,
    ScanResult,
    build_partitions,
    build_repository,
    build_site,
    dataset_record,
    load_config,
    scan,
    serve_directory,
)
from .rng import SplitMix64

__version__ = "0.1.0"

__all__ = [
    "AttributeMeta",
    "DEFAULT_SEED",
    "DatasetError",
    "EvaluationError",
    "EvaluationReport",
    "Fold",
    "Format",
    "FormatError",
    "Holdout",
    "KFolds",
    "LABEL",
    "LabelStats",
    "MLDataset",
    "MeasureBundle",
    "NOMINAL",
    "NUMERIC",
    "PartitionError",
    "PartitionSet",
    "PartitionSpec",
    "PredictionSet",
    "Ratios",
    "ReadOptions",
    "RepoConfig",
    "RepoError",
    "RepoManifest",
    "STRATEGIES",
    "ScanResult",
    "SparsityReport",
    "SplitMix64",
    "build_partitions",
    "build_repository",
    "build_site",
    "cardinality",
    "dataset_record",
    "density",
    "detect_format",
    "evaluate",
    "example_based",
    "hamming_loss",
    "irlbl",
    "label_based",
    "label_counts",
    "label_stats",
    "labelset_key",
    "labelsets",
    "load_config",
    "materialize",
    "mean_ir",
    "measure_bundle",
    "partition",
    "partition_2x5",
    "ranking_metrics",
    "read",
    "read_predictions_csv",
    "scan",
    "serve_directory",
    "scumble",
    "scumble_per_instance",
    "sparsity",
    "target_sizes",
    "tcs",
    "write",
    "write_citation_sidecar",
    "write_partition_files",
]
