"""Benchmark data generator, noise injection, and sweep experiments.

Six variables named X, Y, Z, W, U, V, all 4-valued. Every variable except
W is drawn iid uniform; W is an exact lookup of one, two, or three of the
others (or iid uniform in the fully independent kind). The two- and
three-input lookups are deliberately non-monotone and many-to-one, so
pair correlations stay near zero even though the dependence of W on its
inputs is complete.

Noise flips a chosen count of distinct rows of one variable. Two
replacement modes exist: "distinct" draws uniformly among the other
category values (a flipped cell always changes), "redraw" draws uniformly
over all values (a flip may keep the value; at flip_count = n_samples the
column becomes iid uniform, fully independent of everything). The sweep
experiment uses redraw so that 100% noise destroys the dependence exactly,
giving a clean monotone decay to the detection floor.

RNG is numpy's default PCG64 throughout; replicates draw from seed-derived
child streams, so results are independent of evaluation order.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import IO

import numpy as np
from scipy.stats import rankdata

from .dataset import Dataset, Variable
from .entropy import populate
from .measures import symmetric_delta

RNG_NAME = "numpy-pcg64"

VARIABLE_NAMES = ("X", "Y", "Z", "W", "U", "V")
CARD = 4
KINDS = ("independent", "w_of_x", "w_of_xy", "w_of_xyz")

W_OF_X = np.array([1, 3, 0, 2])

W_OF_XY = np.array([
    [1, 3, 2, 1],
    [3, 0, 0, 3],
    [2, 0, 1, 2],
    [1, 0, 3, 2],
])

W_OF_XYZ = np.array([
    [[3, 0, 0, 3], [0, 3, 0, 1], [0, 0, 0, 1], [3, 1, 1, 3]],
    [[0, 3, 0, 1], [3, 2, 0, 2], [0, 0, 1, 1], [1, 2, 1, 2]],
    [[0, 0, 0, 1], [0, 0, 1, 1], [0, 1, 1, 1], [1, 1, 1, 1]],
    [[3, 1, 1, 3], [1, 2, 1, 2], [1, 1, 1, 1], [3, 2, 1, 2]],
])


@dataclass(frozen=True)
class DependencySpec:
    """What to generate: dependency kind, sample count, seed."""

    kind: str
    n_samples: int
    seed: int


@dataclass(frozen=True)
class NoiseSpec:
    """Which variable to corrupt, how many rows, and the replacement mode."""

    target: str | int
    flip_count: int
    seed: object  # int or numpy SeedSequence
    mode: str = "distinct"


def generate(spec: DependencySpec) -> Dataset:
    """A 6-variable dataset with the requested dependency, reproducibly.

    The five free columns are drawn identically for every kind at a given
    seed; only the W column differs.
    """
    if spec.kind not in KINDS:
        raise ValueError(f"unknown kind {spec.kind!r}; choose from {KINDS}")
    if spec.n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(spec.seed)
    codes = rng.integers(0, CARD, size=(spec.n_samples, len(VARIABLE_NAMES)))
    x, y, z = codes[:, 0], codes[:, 1], codes[:, 2]
    if spec.kind == "w_of_x":
        codes[:, 3] = W_OF_X[x]
    elif spec.kind == "w_of_xy":
        codes[:, 3] = W_OF_XY[x, y]
    elif spec.kind == "w_of_xyz":
        codes[:, 3] = W_OF_XYZ[x, y, z]
    variables = [Variable(name, CARD) for name in VARIABLE_NAMES]
    return Dataset(codes, variables)


def add_noise(ds: Dataset, spec: NoiseSpec) -> Dataset:
    """Corrupt exactly flip_count distinct rows of the target variable.

    distinct mode: the new value is uniform over the other categories
    (never equal to the old one). redraw mode: uniform over all
    categories. All other cells are untouched.
    """
    j = ds.index_of(spec.target) if isinstance(spec.target, str) else spec.target
    if not 0 <= j < ds.n_vars:
        raise ValueError(f"target index {j} out of range")
    if not 0 <= spec.flip_count <= ds.n_samples:
        raise ValueError(
            f"flip_count must be in 0..{ds.n_samples}, got {spec.flip_count}")
    if spec.mode not in ("distinct", "redraw"):
        raise ValueError(f"unknown noise mode {spec.mode!r}")
    if spec.flip_count == 0:
        return ds
    card = ds.variables[j].cardinality
    if card < 2 and spec.mode == "distinct":
        raise ValueError("cannot flip a cardinality-1 variable to a "
                         "different value")
    rng = np.random.default_rng(spec.seed)
    rows = rng.choice(ds.n_samples, size=spec.flip_count, replace=False)
    column = ds.codes[:, j].copy()
    if spec.mode == "distinct":
        offsets = rng.integers(1, card, size=spec.flip_count)
        column[rows] = (column[rows] + offsets) % card
    else:
        column[rows] = rng.integers(0, card, size=spec.flip_count)
    return ds.replace_column(j, column)


def triplet_scores(ds: Dataset, log_base: float = 2.0
                   ) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """Symmetric dependence score of every 3-subset, one cache pass."""
    cache = populate(ds, 3, log_base=log_base)
    triplets = list(combinations(range(ds.n_vars), 3))
    values = np.array([
        symmetric_delta(cache, sum(1 << i for i in t)) for t in triplets])
    return triplets, values


def _focus_index(ds: Dataset, triplets: list[tuple[int, ...]],
                 focus: tuple[str, ...]) -> int:
    want = tuple(sorted(ds.index_of(name) for name in focus))
    return triplets.index(want)


@dataclass
class PartitionReport:
    """Per-partition triplet scores: the focus triplet vs all others pooled."""

    subset_size: int
    n_subsets: int
    focus: tuple[str, ...]
    focus_mean: float
    focus_std: float
    others_mean: float
    others_std: float
    focus_values: np.ndarray          # one score per partition subset
    other_values: np.ndarray          # (n_other_triplets, n_subsets)

    def to_json_dict(self) -> dict:
        return {
            "kind": "partition",
            "subset_size": self.subset_size,
            "n_subsets": self.n_subsets,
            "focus": list(self.focus),
            "focus_mean": self.focus_mean,
            "focus_std": self.focus_std,
            "others_mean": self.others_mean,
            "others_std": self.others_std,
            "focus_values": self.focus_values.tolist(),
        }


@dataclass
class IncrementalReport:
    """Triplet scores at growing prefix sizes of the base dataset."""

    sizes: list[int]
    focus: tuple[str, ...]
    focus_values: np.ndarray          # one score per size
    others_mean: np.ndarray           # mean over other triplets per size
    others_std: np.ndarray

    def to_json_dict(self) -> dict:
        return {
            "kind": "incremental",
            "sizes": self.sizes,
            "focus": list(self.focus),
            "focus_values": self.focus_values.tolist(),
            "others_mean": self.others_mean.tolist(),
            "others_std": self.others_std.tolist(),
        }


def sample_size_experiment(base: Dataset, kind: str = "partition",
                           n_subsets: int = 10, step: int = 100,
                           n_steps: int | None = None,
                           focus: tuple[str, ...] = ("X", "Y", "W"),
                           log_base: float = 2.0):
    """Stability of the triplet score under resampling and growing samples.

    partition: split the base into n_subsets equal consecutive chunks and
    score every triplet per chunk; report mean/std for the focus triplet
    and for all remaining triplets pooled.

    incremental: score every triplet on prefixes of size step, 2*step, ...
    up to the full base.
    """
    if kind == "partition":
        if base.n_samples % n_subsets != 0:
            raise ValueError(
                f"base of {base.n_samples} samples does not split into "
                f"{n_subsets} equal subsets")
        size = base.n_samples // n_subsets
        if size < 1:
            raise ValueError("base too small for requested partition")
        focus_vals, other_rows = [], []
        for s in range(n_subsets):
            chunk = base.take(slice(s * size, (s + 1) * size))
            triplets, values = triplet_scores(chunk, log_base)
            k = _focus_index(base, triplets, focus)
            focus_vals.append(values[k])
            other_rows.append(np.delete(values, k))
        focus_vals = np.array(focus_vals)
        others = np.array(other_rows).T    # (n_others, n_subsets)
        return PartitionReport(
            subset_size=size, n_subsets=n_subsets, focus=focus,
            focus_mean=float(focus_vals.mean()),
            focus_std=float(focus_vals.std(ddof=1)),
            others_mean=float(others.mean()),
            others_std=float(others.std(ddof=1)),
            focus_values=focus_vals, other_values=others)

    if kind == "incremental":
        if n_steps is None:
            n_steps = base.n_samples // step
        if step * n_steps > base.n_samples:
            raise ValueError("base too small for requested increments")
        sizes, focus_vals, om, os_ = [], [], [], []
        for i in range(n_steps):
            size = step * (i + 1)
            chunk = base.take(slice(0, size))
            triplets, values = triplet_scores(chunk, log_base)
            k = _focus_index(base, triplets, focus)
            sizes.append(size)
            focus_vals.append(values[k])
            rest = np.delete(values, k)
            om.append(rest.mean())
            os_.append(rest.std(ddof=1))
        return IncrementalReport(
            sizes=sizes, focus=focus,
            focus_values=np.array(focus_vals),
            others_mean=np.array(om), others_std=np.array(os_))

    raise ValueError(f"unknown experiment kind {kind!r}")


@dataclass
class NoiseReport:
    """Separation of the focus triplet from the rest as noise increases."""

    flip_counts: list[int]
    replicates: int
    target: str
    mode: str
    seed: int
    focus: tuple[str, ...]
    pair_count: int           # focus/other score pairings per level
    diff_mean: np.ndarray     # mean of (focus - other) score pairs per level
    diff_std: np.ndarray
    ratio: np.ndarray         # mean focus score / mean other score per level

    def to_json_dict(self) -> dict:
        return {
            "kind": "noise",
            "flip_counts": self.flip_counts,
            "replicates": self.replicates,
            "target": self.target,
            "mode": self.mode,
            "seed": self.seed,
            "focus": list(self.focus),
            "pair_count": self.pair_count,
            "diff_mean": self.diff_mean.tolist(),
            "diff_std": self.diff_std.tolist(),
            "ratio": self.ratio.tolist(),
        }


def noise_experiment(base: Dataset, n_levels: int = 20, replicates: int = 10,
                     flips_per_level: int = 25, seed: int = 0,
                     target: str = "W", mode: str = "redraw",
                     focus: tuple[str, ...] = ("X", "Y", "W"),
                     log_base: float = 2.0) -> NoiseReport:
    """Noise sweep: level i corrupts flips_per_level * (i + 1) rows.

    Per level, `replicates` independently corrupted copies of the base are
    scored. The difference panel pairs every focus score with every other
    triplet's score across replicates (replicates^2 * n_other pairs per
    level); the ratio panel divides the pooled focus mean by the pooled
    others mean.
    """
    root = np.random.SeedSequence(seed)
    streams = iter(root.spawn(n_levels * replicates))
    flip_counts, diff_mean, diff_std, ratio = [], [], [], []
    pair_count = 0
    for level in range(n_levels):
        flips = flips_per_level * (level + 1)
        focus_vals, other_rows = [], []
        for _ in range(replicates):
            noisy = add_noise(base, NoiseSpec(target=target, flip_count=flips,
                                              seed=next(streams), mode=mode))
            triplets, values = triplet_scores(noisy, log_base)
            k = _focus_index(base, triplets, focus)
            focus_vals.append(values[k])
            other_rows.append(np.delete(values, k))
        focus_vals = np.array(focus_vals)                  # (R,)
        others = np.array(other_rows)                      # (R, n_other)
        diffs = focus_vals[:, None, None] - others.T[None, :, :]
        pair_count = diffs.size
        flip_counts.append(flips)
        diff_mean.append(float(diffs.mean()))
        diff_std.append(float(diffs.std(ddof=1)))
        ratio.append(float(focus_vals.mean() / others.mean()))
    return NoiseReport(
        flip_counts=flip_counts, replicates=replicates, target=target,
        mode=mode, seed=seed, focus=focus, pair_count=pair_count,
        diff_mean=np.array(diff_mean), diff_std=np.array(diff_std),
        ratio=np.array(ratio))


def pearson(ds: Dataset, i: int, j: int) -> float:
    """Product-moment correlation of two columns' codes as integers.

    A zero-variance column makes the correlation undefined; reported as
    0.0 (see correlation_matrix for the degenerate flag).
    """
    if ds.n_samples < 2:
        raise ValueError("correlation needs >= 2 samples")
    x = ds.codes[:, i].astype(float)
    y = ds.codes[:, j].astype(float)
    sx, sy = x.std(), y.std()
    if sx == 0.0 or sy == 0.0:
        return 0.0
    return float(((x - x.mean()) * (y - y.mean())).mean() / (sx * sy))


def spearman(ds: Dataset, i: int, j: int) -> float:
    """Rank correlation with average ranks on ties; degenerate -> 0.0."""
    if ds.n_samples < 2:
        raise ValueError("correlation needs >= 2 samples")
    rx = rankdata(ds.codes[:, i])
    ry = rankdata(ds.codes[:, j])
    sx, sy = rx.std(), ry.std()
    if sx == 0.0 or sy == 0.0:
        return 0.0
    return float(((rx - rx.mean()) * (ry - ry.mean())).mean() / (sx * sy))


def correlation_matrix(ds: Dataset) -> list[dict]:
    """Pearson and Spearman for every unordered pair, with degeneracy flag."""
    out = []
    for i, j in combinations(range(ds.n_vars), 2):
        degenerate = (ds.codes[:, i].std() == 0.0
                      or ds.codes[:, j].std() == 0.0)
        out.append({
            "i": i, "j": j,
            "pair": f"{ds.names[i]},{ds.names[j]}",
            "pearson": pearson(ds, i, j),
            "spearman": spearman(ds, i, j),
            "degenerate": bool(degenerate),
        })
    return out


def write_noise_tsv(report: NoiseReport, fh: IO[str]) -> None:
    fh.write("flips\tdiff_mean\tdiff_std\tratio\n")
    for k, flips in enumerate(report.flip_counts):
        fh.write(f"{flips}\t{report.diff_mean[k]:.6g}\t"
                 f"{report.diff_std[k]:.6g}\t{report.ratio[k]:.6g}\n")


def write_incremental_tsv(report: IncrementalReport, fh: IO[str]) -> None:
    fh.write("size\tfocus\tothers_mean\tothers_std\n")
    for k, size in enumerate(report.sizes):
        fh.write(f"{size}\t{report.focus_values[k]:.6g}\t"
                 f"{report.others_mean[k]:.6g}\t{report.others_std[k]:.6g}\n")


def write_partition_tsv(report: PartitionReport, fh: IO[str]) -> None:
    fh.write("subset_size\tfocus_mean\tfocus_std\tothers_mean\tothers_std\n")
    fh.write(f"{report.subset_size}\t{report.focus_mean:.6g}\t"
             f"{report.focus_std:.6g}\t{report.others_mean:.6g}\t"
             f"{report.others_std:.6g}\n")
