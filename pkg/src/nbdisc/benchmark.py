"""Replicated studies comparing samplers under NBD and CD2.

Replicate ``r`` of a study with base seed ``s`` draws its design from seed
``s + r``, so any single record can be regenerated in isolation.
Quantiles use linear interpolation between order statistics (numpy's
default ``method="linear"``).
"""
from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .benford import (
    DEFAULT_JOINT_MODE,
    as_design,
    digit_histogram_column,
    marginal_reference,
    nbd_flat,
    nbd_joint,
)
from .discrepancy import centered_l2_squared
from .samplers import SamplerSpec, sample

__all__ = [
    "METRICS",
    "RECORD_FIELDS",
    "SUMMARY_FIELDS",
    "DIGIT_FIELDS",
    "BenchmarkRecord",
    "SummaryRow",
    "DigitErrorTable",
    "evaluate_metric",
    "per_dimension_digit_errors",
    "run_replicates",
    "convergence_study",
    "digits_study",
    "summarize",
    "records_csv",
    "summaries_csv",
    "digit_errors_csv",
]

METRICS = ("nbd_flat", "nbd_joint", "cd2")
RECORD_FIELDS = ("sampler", "n_points", "n_dims", "replicate", "metric", "value")
SUMMARY_FIELDS = ("metric", "sampler", "n_points", "mean", "median", "q25", "q75", "min", "max")
DIGIT_FIELDS = ("sampler", "replicate", "dimension", "digit", "deviation")


@dataclass(frozen=True)
class BenchmarkRecord:
    sampler: str
    n_points: int
    n_dims: int
    replicate: int
    metric: str
    value: float

    def sort_key(self):
        return (self.metric, self.sampler, self.n_points, self.replicate)


@dataclass(frozen=True)
class SummaryRow:
    metric: str
    sampler: str
    n_points: int
    mean: float
    median: float
    q25: float
    q75: float
    min: float
    max: float


@dataclass(frozen=True)
class DigitErrorTable:
    """Signed deviations, empirical minus reference, shape ``(n_dims, 9)``."""

    deviations: np.ndarray

    def rows(self):
        for dim, row in enumerate(self.deviations):
            for digit, dev in enumerate(row, start=1):
                yield dim, digit, float(dev)


def evaluate_metric(design, metric: str, joint_mode: str = DEFAULT_JOINT_MODE) -> float:
    if metric == "nbd_flat":
        return nbd_flat(design).value
    if metric == "nbd_joint":
        return nbd_joint(design, joint_mode).value
    if metric == "cd2":
        return centered_l2_squared(design).value
    raise ValueError(f"unknown metric {metric!r}, expected one of {METRICS}")


def per_dimension_digit_errors(design) -> DigitErrorTable:
    x = as_design(design)
    ref = marginal_reference().probs
    dev = np.array([
        digit_histogram_column(x, j).probabilities - ref for j in range(x.shape[1])
    ])
    return DigitErrorTable(dev)


def _replicate_spec(spec: SamplerSpec, r: int) -> SamplerSpec:
    return replace(spec, seed=(spec.seed + r) % 2**64)


def _map(fn, items, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def run_replicates(
    spec: SamplerSpec,
    metric: str,
    replicates: int,
    joint_mode: str = DEFAULT_JOINT_MODE,
    workers: int | None = None,
) -> list[BenchmarkRecord]:
    return _run(spec, (metric,), replicates, joint_mode, workers)


def _run(spec, metrics, replicates, joint_mode, workers):
    if replicates < 1:
        raise ValueError("replicates must be ≥ 1")

    def one(r):
        design = sample(_replicate_spec(spec, r))
        return [
            BenchmarkRecord(spec.kind, spec.n_points, spec.n_dims, r, m,
                            evaluate_metric(design, m, joint_mode))
            for m in metrics
        ]

    records = [rec for batch in _map(one, range(replicates), workers) for rec in batch]
    return sorted(records, key=BenchmarkRecord.sort_key)


def _study_spec(kind: str, n: int, d: int, seed: int) -> SamplerSpec:
    # sobol replicates differ only through the digital shift
    return SamplerSpec(kind, n, d, seed=seed, scramble=(kind == "sobol"))


def convergence_study(
    kinds,
    ns_list,
    n_dims: int,
    replicates: int,
    base_seed: int = 0,
    metrics=("nbd_flat", "nbd_joint"),
    joint_mode: str = DEFAULT_JOINT_MODE,
    workers: int | None = None,
) -> list[BenchmarkRecord]:
    """Records for every (sampler, n_points, replicate, metric) combination."""
    ns_list = list(ns_list)
    if not ns_list or ns_list != sorted(ns_list):
        raise ValueError("ns_list must be nonempty and ascending")
    records = []
    for kind in kinds:
        for n in ns_list:
            records += _run(_study_spec(kind, n, n_dims, base_seed),
                            tuple(metrics), replicates, joint_mode, workers)
    return sorted(records, key=BenchmarkRecord.sort_key)


def digits_study(
    kinds, n_points: int, n_dims: int, replicates: int, base_seed: int = 0,
) -> tuple[list[BenchmarkRecord], list[tuple]]:
    """Flattened NBD records plus per-dimension digit deviations per replicate.

    The deviation rows are ``(sampler, replicate, dimension, digit, deviation)``;
    grouping them by design reproduces the within-design boxplot, grouping by
    (dimension, digit) across replicates gives the across-replicate one.
    """
    records, rows = [], []
    for kind in sorted(kinds):
        spec = _study_spec(kind, n_points, n_dims, base_seed)
        for r in range(replicates):
            design = sample(_replicate_spec(spec, r))
            records.append(BenchmarkRecord(kind, n_points, n_dims, r, "nbd_flat",
                                           nbd_flat(design).value))
            rows += [(kind, r, *row) for row in per_dimension_digit_errors(design).rows()]
    return sorted(records, key=BenchmarkRecord.sort_key), rows


def summarize(records) -> list[SummaryRow]:
    records = list(records)
    if not records:
        raise ValueError("cannot summarize an empty record list")
    groups: dict[tuple, list[float]] = {}
    for rec in records:
        groups.setdefault((rec.metric, rec.sampler, rec.n_points), []).append(rec.value)
    rows = []
    for key in sorted(groups):
        v = np.sort(np.asarray(groups[key]))
        q25, median, q75 = np.quantile(v, [0.25, 0.5, 0.75])
        rows.append(SummaryRow(*key, float(np.mean(v)), float(median), float(q25),
                               float(q75), float(v[0]), float(v[-1])))
    return rows


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(c) if isinstance(c, float) else c for c in row])
    return buf.getvalue()


def records_csv(records) -> str:
    return _csv(RECORD_FIELDS, (
        (r.sampler, r.n_points, r.n_dims, r.replicate, r.metric, float(r.value))
        for r in records
    ))


def summaries_csv(rows) -> str:
    return _csv(SUMMARY_FIELDS, (
        (s.metric, s.sampler, s.n_points, s.mean, s.median, s.q25, s.q75, s.min, s.max)
        for s in rows
    ))


def digit_errors_csv(rows) -> str:
    return _csv(DIGIT_FIELDS, rows)
