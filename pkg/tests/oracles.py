"""Independent direct-from-definition re-implementations used as oracles.

Everything here is written against the metric/partition definitions alone,
in plain Python (lists, Counter, Fraction), deliberately sharing no code or
style with the library: brute-force loops, no vectorization, no shortcuts.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction

# -- characterization ------------------------------------------------------


def o_labelsets(rows) -> Counter:
    return Counter("".join(str(int(v)) for v in row) for row in rows)


def o_label_counts(rows) -> list[int]:
    k = len(rows[0])
    return [sum(int(row[j]) for row in rows) for j in range(k)]


def o_cardinality(rows) -> float:
    return sum(sum(int(v) for v in row) for row in rows) / len(rows)


def o_density(rows) -> float:
    return o_cardinality(rows) / len(rows[0])


def o_irlbl(rows) -> list[float | None]:
    counts = o_label_counts(rows)
    top = max(counts)
    return [top / c if c > 0 else None for c in counts]


def o_mean_ir(rows) -> float | None:
    defined = [v for v in o_irlbl(rows) if v is not None]
    if not defined:
        return None
    return sum(defined) / len(defined)


def o_scumble_instance(active_irlbls) -> float:
    values = list(active_irlbls)
    if not values:
        return 0.0
    prod = 1.0
    for v in values:
        prod *= v
    geo = prod ** (1.0 / len(values))
    ari = sum(values) / len(values)
    return 1.0 - geo / ari


def o_scumble_per_instance(rows) -> list[float]:
    ir = o_irlbl(rows)
    out = []
    for row in rows:
        active = [ir[j] for j in range(len(row)) if int(row[j]) == 1]
        out.append(o_scumble_instance(active))
    return out


def o_population_cv(values) -> float:
    values = list(values)
    mean = sum(values) / len(values)
    if mean == 0:
        return 0.0
    var = sum((v - mean) ** 2 for v in values) / len(values)
    return math.sqrt(var) / mean


def o_scumble(rows) -> tuple[float, float]:
    per = o_scumble_per_instance(rows)
    return sum(per) / len(per), o_population_cv(per)


def o_label_scumble(rows) -> list[tuple[float, float]]:
    """Per label: (mean, population CV) of SCUMBLE_i over active instances."""
    per = o_scumble_per_instance(rows)
    out = []
    for j in range(len(rows[0])):
        values = [per[i] for i in range(len(rows)) if int(rows[i][j]) == 1]
        if not values:
            out.append((0.0, 0.0))
        else:
            out.append((sum(values) / len(values), o_population_cv(values)))
    return out


def o_tcs(f: int, k: int, ls: int) -> float:
    return math.log(f * k * ls)


def o_measures(rows, f: int) -> dict:
    table = o_labelsets(rows)
    k = len(rows[0])
    sc_mean, sc_cv = o_scumble(rows)
    return {
        "num_attributes": f + k,
        "num_inputs": f,
        "num_labels": k,
        "num_instances": len(rows),
        "num_labelsets": len(table),
        "num_single_labelsets": sum(1 for c in table.values() if c == 1),
        "max_frequency": max(table.values()),
        "cardinality": o_cardinality(rows),
        "density": o_density(rows),
        "mean_ir": o_mean_ir(rows),
        "scumble": sc_mean,
        "scumble_cv": sc_cv,
        "tcs": o_tcs(f, k, len(table)),
    }


# -- evaluation ------------------------------------------------------------


def o_hamming(truth, pred) -> float:
    n, k = len(truth), len(truth[0])
    wrong = sum(
        1 for i in range(n) for j in range(k) if int(truth[i][j]) != int(pred[i][j])
    )
    return wrong / (n * k)


def o_example_based(truth, pred) -> dict:
    n = len(truth)
    acc = prec = rec = f1 = subset = 0.0
    for t_row, p_row in zip(truth, pred):
        t = {j for j, v in enumerate(t_row) if int(v) == 1}
        p = {j for j, v in enumerate(p_row) if int(v) == 1}
        union = t | p
        inter = t & p
        acc += len(inter) / len(union) if union else 1.0
        pi = len(inter) / len(p) if p else 0.0
        ri = len(inter) / len(t) if t else 0.0
        prec += pi
        rec += ri
        f1 += (2 * pi * ri / (pi + ri)) if (pi + ri) > 0 else 0.0
        subset += 1.0 if t == p else 0.0
    return {
        "accuracy": acc / n,
        "precision": prec / n,
        "recall": rec / n,
        "f_measure": f1 / n,
        "subset_accuracy": subset / n,
    }


def _o_prf(tp: int, fp: int, fn: int) -> tuple[float, float, float]:
    p = tp / (tp + fp) if tp + fp > 0 else 0.0
    r = tp / (tp + fn) if tp + fn > 0 else 0.0
    f = (2 * p * r / (p + r)) if (p + r) > 0 else 0.0
    return p, r, f


def o_label_based(truth, pred) -> tuple[dict, dict]:
    n, k = len(truth), len(truth[0])
    tps = [0] * k
    fps = [0] * k
    fns = [0] * k
    for j in range(k):
        for i in range(n):
            t, p = int(truth[i][j]), int(pred[i][j])
            if p == 1 and t == 1:
                tps[j] += 1
            elif p == 1 and t == 0:
                fps[j] += 1
            elif p == 0 and t == 1:
                fns[j] += 1
    rows = [_o_prf(tps[j], fps[j], fns[j]) for j in range(k)]
    macro = {
        "precision": sum(r[0] for r in rows) / k,
        "recall": sum(r[1] for r in rows) / k,
        "f_measure": sum(r[2] for r in rows) / k,
    }
    mp, mr, mf = _o_prf(sum(tps), sum(fps), sum(fns))
    return macro, {"precision": mp, "recall": mr, "f_measure": mf}


def o_ranks(score_row) -> list[int]:
    """1-based rank per label; ties broken toward the lower label index."""
    order = sorted(range(len(score_row)), key=lambda j: (-score_row[j], j))
    ranks = [0] * len(score_row)
    for pos, j in enumerate(order):
        ranks[j] = pos + 1
    return ranks


def o_ranking(truth, scores) -> dict:
    n = len(truth)
    one_err = cov = 0.0
    rl_sum, rl_n = 0.0, 0
    ap_sum, ap_n = 0.0, 0
    for t_row, s_row in zip(truth, scores):
        ranks = o_ranks(s_row)
        true = [j for j, v in enumerate(t_row) if int(v) == 1]
        false = [j for j, v in enumerate(t_row) if int(v) == 0]
        top = min(range(len(s_row)), key=lambda j: ranks[j])
        if int(t_row[top]) != 1:
            one_err += 1.0
        if true:
            cov += max(ranks[j] for j in true) - 1
        if true and false:
            bad = sum(1 for a in true for b in false if ranks[a] > ranks[b])
            rl_sum += bad / (len(true) * len(false))
            rl_n += 1
        if true:
            precs = []
            for a in true:
                ahead = sum(1 for b in true if ranks[b] <= ranks[a])
                precs.append(ahead / ranks[a])
            ap_sum += sum(precs) / len(precs)
            ap_n += 1
    return {
        "one_error": one_err / n,
        "ranking_loss": rl_sum / rl_n if rl_n else 0.0,
        "coverage": cov / n,
        "average_precision": ap_sum / ap_n if ap_n else 0.0,
    }


# -- partitioning ----------------------------------------------------------

MASK64 = (1 << 64) - 1


def o_splitmix_stream(seed: int, count: int) -> list[int]:
    out = []
    state = seed % (1 << 64)
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) % (1 << 64)
        value = state
        value = ((value ^ (value >> 30)) * 0xBF58476D1CE4E5B9) % (1 << 64)
        value = ((value ^ (value >> 27)) * 0x94D049BB133111EB) % (1 << 64)
        out.append(value ^ (value >> 31))
    return out


class OracleGen:
    def __init__(self, seed: int):
        self.state = seed % (1 << 64)

    def word(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) % (1 << 64)
        v = self.state
        v = ((v ^ (v >> 30)) * 0xBF58476D1CE4E5B9) % (1 << 64)
        v = ((v ^ (v >> 27)) * 0x94D049BB133111EB) % (1 << 64)
        return v ^ (v >> 31)

    def below(self, bound: int) -> int:
        width = (bound - 1).bit_length()
        if width == 0:
            return 0
        while True:
            candidate = self.word() >> (64 - width)
            if candidate < bound:
                return candidate


def o_shuffle(n: int, seed: int) -> list[int]:
    gen = OracleGen(seed)
    items = list(range(n))
    for i in range(n - 1, 0, -1):
        j = gen.below(i + 1)
        items[i], items[j] = items[j], items[i]
    return items


def o_target_sizes(n: int, percents) -> list[int]:
    """Largest remainder over exact rational quotas; ties -> lower index."""
    total = sum(Fraction(p) for p in percents)
    quotas = [Fraction(p) / total * n for p in percents]
    floors = [q.numerator // q.denominator for q in quotas]
    leftover = n - sum(floors)
    remainders = sorted(
        range(len(quotas)), key=lambda i: (-(quotas[i] - floors[i]), i)
    )
    sizes = list(floors)
    for i in remainders[:leftover]:
        sizes[i] += 1
    return sizes


def o_random_parts(n: int, sizes, seed: int) -> list[list[int]]:
    order = o_shuffle(n, seed)
    parts, at = [], 0
    for s in sizes:
        parts.append(order[at : at + s])
        at += s
    return parts


def o_label_proportion_deviation(rows, parts) -> float:
    """Mean over (part, label) of |part label proportion - global|."""
    k = len(rows[0])
    n = len(rows)
    global_prop = [sum(int(r[j]) for r in rows) / n for j in range(k)]
    devs = []
    for part in parts:
        size = len(part)
        for j in range(k):
            local = sum(int(rows[i][j]) for i in part) / size
            devs.append(abs(local - global_prop[j]))
    return sum(devs) / len(devs)
