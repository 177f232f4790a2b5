"""Scoring of multi-label predictions against ground truth.

Bipartition metrics come in example-based and label-based (macro/micro)
flavours; ranking metrics are computed from score matrices with ties broken
by ascending label index so results are reproducible everywhere.

Degenerate-denominator conventions (the literature is split, these are the
prevailing ones): precision with no predicted positives is 0, recall with no
true positives is 0, F with P+R=0 is 0, and example accuracy with an empty
union is 1. Thresholding scores into bipartitions is never done implicitly;
callers supply bipartitions themselves.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class PredictionSet:
    """Ground truth plus at least one of: predicted bipartitions, scores."""

    truth: np.ndarray
    bipartition: np.ndarray | None = None
    scores: np.ndarray | None = None

    def __post_init__(self):
        raw_truth = np.asarray(self.truth)
        if raw_truth.ndim != 2:
            raise EvaluationError("truth must be an n x k matrix")
        if ((raw_truth != 0) & (raw_truth != 1)).any():
            raise EvaluationError("truth cells must be 0 or 1")
        truth = raw_truth.astype(np.int8)
        object.__setattr__(self, "truth", truth)
        if self.bipartition is None and self.scores is None:
            raise EvaluationError("need a bipartition or a score matrix")
        if self.bipartition is not None:
            raw_bip = np.asarray(self.bipartition)
            if raw_bip.shape != truth.shape:
                raise EvaluationError(
                    f"bipartition shape {raw_bip.shape} != truth shape {truth.shape}"
                )
            if ((raw_bip != 0) & (raw_bip != 1)).any():
                raise EvaluationError("bipartition cells must be 0 or 1")
            object.__setattr__(self, "bipartition", raw_bip.astype(np.int8))
        if self.scores is not None:
            sc = np.asarray(self.scores, dtype=np.float64)
            if sc.shape != truth.shape:
                raise EvaluationError(f"scores shape {sc.shape} != truth shape {truth.shape}")
            object.__setattr__(self, "scores", sc)

    @property
    def n(self) -> int:
        return self.truth.shape[0]

    @property
    def k(self) -> int:
        return self.truth.shape[1]


@dataclass(frozen=True)
class EvaluationReport:
    example_based: dict[str, float]
    macro: dict[str, float]
    micro: dict[str, float]
    ranking: dict[str, float] | None

    def as_dict(self) -> dict:
        out = {
            "example_based": self.example_based,
            "macro": self.macro,
            "micro": self.micro,
        }
        if self.ranking is not None:
            out["ranking"] = self.ranking
        return out


def _need_bipartition(p: PredictionSet) -> np.ndarray:
    if p.bipartition is None:
        raise EvaluationError("metric needs a bipartition")
    return p.bipartition


def hamming_loss(p: PredictionSet) -> float:
    """Fraction of label assignments that disagree with the truth."""
    bip = _need_bipartition(p)
    return float((bip != p.truth).sum()) / (p.n * p.k)


def example_based(p: PredictionSet) -> dict[str, float]:
    """Per-instance set metrics averaged over instances. Includes
    hamming_loss so the map mirrors the report block."""
    bip = _need_bipartition(p)
    acc = prec = rec = f1 = subset = 0.0
    for y, z in zip(bip, p.truth):
        inter = int(((y == 1) & (z == 1)).sum())
        union = int(((y == 1) | (z == 1)).sum())
        ysize = int(y.sum())
        zsize = int(z.sum())
        acc += inter / union if union else 1.0
        pi = inter / ysize if ysize else 0.0
        ri = inter / zsize if zsize else 0.0
        prec += pi
        rec += ri
        f1 += 2 * pi * ri / (pi + ri) if pi + ri else 0.0
        subset += 1.0 if np.array_equal(y, z) else 0.0
    n = p.n
    return {
        "hamming_loss": hamming_loss(p),
        "accuracy": acc / n,
        "precision": prec / n,
        "recall": rec / n,
        "f_measure": f1 / n,
        "subset_accuracy": subset / n,
    }


def _prf(tp: int, fp: int, fn: int) -> tuple[float, float, float]:
    prec = tp / (tp + fp) if tp + fp else 0.0
    rec = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * prec * rec / (prec + rec) if prec + rec else 0.0
    return prec, rec, f1


def label_based(p: PredictionSet) -> tuple[dict[str, float], dict[str, float]]:
    """(macro, micro) precision/recall/F. Macro averages the per-label
    metric; micro computes it once over the pooled confusion counts."""
    bip = _need_bipartition(p)
    tps = ((bip == 1) & (p.truth == 1)).sum(axis=0)
    fps = ((bip == 1) & (p.truth == 0)).sum(axis=0)
    fns = ((bip == 0) & (p.truth == 1)).sum(axis=0)
    per_label = [_prf(int(tp), int(fp), int(fn)) for tp, fp, fn in zip(tps, fps, fns)]
    k = p.k
    macro = {
        "precision": sum(v[0] for v in per_label) / k,
        "recall": sum(v[1] for v in per_label) / k,
        "f_measure": sum(v[2] for v in per_label) / k,
    }
    mp, mr, mf = _prf(int(tps.sum()), int(fps.sum()), int(fns.sum()))
    micro = {"precision": mp, "recall": mr, "f_measure": mf}
    return macro, micro


def _rank_order(scores_row: np.ndarray) -> np.ndarray:
    # position r holds the label index ranked r-th; ties -> lower label index
    return np.argsort(-scores_row, kind="stable")


def ranking_metrics(p: PredictionSet) -> dict[str, float]:
    """One error, coverage (0-based), ranking loss and average precision
    from the score matrix. Instances whose truth is empty or full carry no
    (true, false) pairs and are excluded from ranking loss; empty-truth
    instances are also excluded from average precision, count 1 toward one
    error and 0 toward coverage."""
    if p.scores is None:
        raise EvaluationError("ranking metrics need scores")
    one_err = cov = 0.0
    rloss_sum = 0.0
    rloss_count = 0
    ap_sum = 0.0
    ap_count = 0
    for truth_row, score_row in zip(p.truth, p.scores):
        order = _rank_order(score_row)
        rank = np.empty(p.k, dtype=np.int64)
        rank[order] = np.arange(1, p.k + 1)  # 1-based rank per label
        true_idx = np.flatnonzero(truth_row == 1)
        false_idx = np.flatnonzero(truth_row == 0)
        one_err += 0.0 if truth_row[order[0]] else 1.0
        if true_idx.size:
            cov += float(rank[true_idx].max() - 1)
        if true_idx.size and false_idx.size:
            wrong = sum(
                1 for t in true_idx for f in false_idx if rank[t] > rank[f]
            )
            rloss_sum += wrong / (true_idx.size * false_idx.size)
            rloss_count += 1
        if true_idx.size:
            prec_at = [
                int((rank[true_idx] <= rank[t]).sum()) / int(rank[t]) for t in true_idx
            ]
            ap_sum += sum(prec_at) / len(prec_at)
            ap_count += 1
    return {
        "one_error": one_err / p.n,
        "ranking_loss": rloss_sum / rloss_count if rloss_count else 0.0,
        "coverage": cov / p.n,
        "average_precision": ap_sum / ap_count if ap_count else 0.0,
    }


def evaluate(p: PredictionSet) -> EvaluationReport:
    """Full report; bipartition blocks and/or the ranking block depending
    on which inputs are present."""
    if p.bipartition is not None:
        example = example_based(p)
        macro, micro = label_based(p)
    else:
        example, macro, micro = {}, {}, {}
    ranking = ranking_metrics(p) if p.scores is not None else None
    return EvaluationReport(example_based=example, macro=macro, micro=micro, ranking=ranking)


def read_predictions_csv(path) -> PredictionSet:
    """Load a prediction file: header row with truth_1..truth_k plus
    optional pred_* and score_* column groups."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise EvaluationError(f"{path}: empty prediction file") from None
        rows = [row for row in reader if row]
    header = [h.strip() for h in header]

    def group(prefix: str) -> list[int]:
        cols = [(h, i) for i, h in enumerate(header) if h.startswith(prefix)]
        want = [f"{prefix}{j + 1}" for j in range(len(cols))]
        got = sorted(cols, key=lambda hi: hi[0])
        if [h for h, _ in got] != sorted(want):
            raise EvaluationError(
                f"{path}: {prefix}* columns must be {prefix}1..{prefix}{len(cols)}"
            )
        by_number = sorted(cols, key=lambda hi: int(hi[0][len(prefix):]))
        return [i for _, i in by_number]

    truth_cols = group("truth_")
    pred_cols = group("pred_")
    score_cols = group("score_")
    if not truth_cols:
        raise EvaluationError(f"{path}: no truth_* columns found")
    k = len(truth_cols)
    for name, cols in (("pred", pred_cols), ("score", score_cols)):
        if cols and len(cols) != k:
            raise EvaluationError(f"{path}: {len(cols)} {name}_* columns for k={k} labels")
    if not pred_cols and not score_cols:
        raise EvaluationError(f"{path}: need pred_* and/or score_* columns")

    def take(cols, line_no, row, binary=False):
        try:
            values = [float(row[c]) for c in cols]
        except (ValueError, IndexError) as exc:
            raise EvaluationError(f"{path}:{line_no}: bad value ({exc})") from None
        if binary and any(v not in (0.0, 1.0) for v in values):
            bad = next(v for v in values if v not in (0.0, 1.0))
            raise EvaluationError(f"{path}:{line_no}: cell {bad!r} must be 0 or 1")
        return values

    truth, pred, score = [], [], []
    for line_no, row in enumerate(rows, start=2):
        truth.append(take(truth_cols, line_no, row, binary=True))
        if pred_cols:
            pred.append(take(pred_cols, line_no, row, binary=True))
        if score_cols:
            score.append(take(score_cols, line_no, row))
    if not truth:
        raise EvaluationError(f"{path}: no data rows")
    return PredictionSet(
        truth=np.array(truth),
        bipartition=np.array(pred) if pred_cols else None,
        scores=np.array(score) if score_cols else None,
    )


def report_to_json(report: EvaluationReport) -> str:
    return json.dumps(report.as_dict(), indent=2) + "\n"
