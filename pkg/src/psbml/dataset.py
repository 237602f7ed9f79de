"""Core data representation: labeled feature vectors with stable instance ids."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Instance:
    """A single labeled point. ``id`` is stable: resampled copies share it."""

    id: int
    features: np.ndarray
    label: int


@dataclass
class Dataset:
    """An ordered collection of instances backed by numpy arrays.

    ``ids`` are unique in a source corpus; derived sets produced by
    resampling may contain repeated ids (copies of the same instance).
    """

    ids: np.ndarray
    features: np.ndarray
    labels: np.ndarray
    num_classes: int
    label_names: tuple = field(default=())

    def __post_init__(self):
        self.ids = np.asarray(self.ids, dtype=np.int64)
        self.features = np.asarray(self.features, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.features.ndim != 2:
            raise ValueError("features must be a 2-D array")
        n = len(self.ids)
        if self.features.shape[0] != n or self.labels.shape[0] != n:
            raise ValueError("ids, features and labels must have equal length")
        if self.num_classes < 1:
            raise ValueError("num_classes must be positive")
        if n and (self.labels.min() < 0 or self.labels.max() >= self.num_classes):
            raise ValueError("labels must lie in [0, num_classes)")
        if not self.label_names:
            self.label_names = tuple(str(c) for c in range(self.num_classes))

    def __len__(self):
        return len(self.ids)

    @property
    def dimensionality(self):
        return self.features.shape[1]

    def instance(self, i):
        """The i-th instance (by position, not id)."""
        return Instance(int(self.ids[i]), self.features[i], int(self.labels[i]))

    def __iter__(self):
        for i in range(len(self)):
            yield self.instance(i)

    def subset(self, indices):
        """New Dataset holding the rows at ``indices`` (copies allowed)."""
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(
            self.ids[indices],
            self.features[indices],
            self.labels[indices],
            self.num_classes,
            self.label_names,
        )

    def class_counts(self):
        return np.bincount(self.labels, minlength=self.num_classes)


def _parse_float(cell):
    try:
        return float(cell)
    except ValueError:
        return None


def load_csv(path, label_column=-1):
    """Load a CSV file into a Dataset.

    ``label_column`` is a column index (int) or, when the file has a header
    row, a column name. Feature cells must parse as decimal reals; labels are
    mapped to 0-based class indices in first-appearance order. Instance ids
    are assigned 0..n-1 in row order.
    """
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row]
    if not rows:
        raise ValueError(f"{path}: no rows")

    arity = len(rows[0])
    for lineno, row in enumerate(rows, start=1):
        if len(row) != arity:
            raise ValueError(
                f"{path}: row {lineno} has {len(row)} cells, expected {arity}"
            )

    if isinstance(label_column, str):
        if label_column not in rows[0]:
            raise ValueError(f"{path}: no header column named {label_column!r}")
        label_idx = rows[0].index(label_column)
        data_rows, first_line = rows[1:], 2
    else:
        label_idx = label_column % arity
        feature_cells = [c for j, c in enumerate(rows[0]) if j != label_idx]
        has_header = any(_parse_float(c) is None for c in feature_cells)
        data_rows = rows[1:] if has_header else rows
        first_line = 2 if has_header else 1

    if not data_rows:
        raise ValueError(f"{path}: no rows")

    n = len(data_rows)
    features = np.empty((n, arity - 1), dtype=np.float64)
    label_map = {}
    labels = np.empty(n, dtype=np.int64)
    for i, row in enumerate(data_rows):
        col = 0
        for j, cell in enumerate(row):
            if j == label_idx:
                continue
            value = _parse_float(cell)
            if value is None:
                raise ValueError(
                    f"{path}: row {first_line + i}: non-numeric feature cell {cell!r}"
                )
            features[i, col] = value
            col += 1
        raw = row[label_idx]
        if raw not in label_map:
            label_map[raw] = len(label_map)
        labels[i] = label_map[raw]

    return Dataset(
        np.arange(n, dtype=np.int64),
        features,
        labels,
        num_classes=len(label_map),
        label_names=tuple(label_map),
    )


def save_csv(d, path):
    """Write a Dataset back out with an added leading ``id`` column."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["id"] + [f"x{j}" for j in range(d.dimensionality)] + ["label"]
        )
        for i in range(len(d)):
            writer.writerow(
                [int(d.ids[i])]
                + [repr(float(v)) for v in d.features[i]]
                + [d.label_names[d.labels[i]]]
            )


def normalize_unit_range(d):
    """Min-max scale every feature into [0,1]; constant columns map to 0."""
    if len(d) == 0:
        raise ValueError("cannot normalize an empty dataset")
    mins = d.features.min(axis=0)
    spans = d.features.max(axis=0) - mins
    scaled = np.where(spans > 0, (d.features - mins) / np.where(spans > 0, spans, 1), 0.0)
    return Dataset(d.ids.copy(), scaled, d.labels.copy(), d.num_classes, d.label_names)


def _round_half_up(x):
    return int(np.floor(x + 0.5))


def stratified_partition(d, parts, seed):
    """Split ``d`` into ``parts`` disjoint datasets with balanced class counts.

    Per-class counts across parts differ by at most one; the union of the
    parts is exactly ``d``. Deterministic for a fixed seed.
    """
    if parts < 1:
        raise ValueError("parts must be positive")
    if parts > len(d):
        raise ValueError(f"parts={parts} exceeds dataset size {len(d)}")
    rng = np.random.default_rng(seed)
    buckets = [[] for _ in range(parts)]
    cursor = 0
    for c in range(d.num_classes):
        idx = np.flatnonzero(d.labels == c)
        idx = idx[rng.permutation(len(idx))]
        for i in idx:
            buckets[cursor % parts].append(i)
            cursor += 1
    return [d.subset(np.array(b, dtype=np.int64)) for b in buckets]


def holdout_split(d, validation_fraction, seed):
    """Stratified split into (train, validation); exact validation size
    round(fraction * n), allocated per class by largest remainder."""
    if not 0 < validation_fraction < 1:
        raise ValueError("validation_fraction must lie in (0,1)")
    n = len(d)
    total = _round_half_up(validation_fraction * n)
    if total == 0:
        raise ValueError("validation fraction yields an empty validation set")
    if total == n:
        raise ValueError("validation fraction yields an empty training set")

    quotas = validation_fraction * d.class_counts()
    base = np.floor(quotas).astype(int)
    short = total - base.sum()
    order = np.argsort(-(quotas - base), kind="stable")
    for c in order[:short]:
        base[c] += 1

    rng = np.random.default_rng(seed)
    val_idx, train_idx = [], []
    for c in range(d.num_classes):
        idx = np.flatnonzero(d.labels == c)
        idx = idx[rng.permutation(len(idx))]
        val_idx.extend(idx[: base[c]])
        train_idx.extend(idx[base[c] :])
    return (
        d.subset(np.array(sorted(train_idx), dtype=np.int64)),
        d.subset(np.array(sorted(val_idx), dtype=np.int64)),
    )


def inject_label_noise(d, fraction, seed):
    """Reassign the labels of exactly round(fraction*n) distinct instances,
    each to a class drawn uniformly among the other classes."""
    if d.num_classes < 2:
        raise ValueError("label noise requires at least two classes")
    if not 0 <= fraction <= 1:
        raise ValueError("fraction must lie in [0,1]")
    k = _round_half_up(fraction * len(d))
    labels = d.labels.copy()
    if k:
        rng = np.random.default_rng(seed)
        chosen = rng.permutation(len(d))[:k]
        offsets = rng.integers(1, d.num_classes, size=k)
        labels[chosen] = (labels[chosen] + offsets) % d.num_classes
    return Dataset(d.ids.copy(), d.features.copy(), labels, d.num_classes, d.label_names)
