"""Weighted dependency hypergraphs inferred from data.

Pipeline: enumerate candidate subsets up to a size cap, compute the
symmetric dependence score of each from one entropy-cache pass, derive a
per-size statistical threshold from column-permuted surrogates (which keep
every marginal but destroy all joint structure), zero out sub-threshold
scores, and keep the survivors as weighted hyperedges.

Exports are canonical: JSON with sorted keys and edges ordered by
(size, members), and Graphviz DOT using star expansion (one auxiliary
point node per hyperedge). Identical inputs and seeds give byte-identical
output at any thread count.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dataset import Dataset, Variable, VariableSubset, mask_indices
from .entropy import populate, subset_masks
from .complexity import phi_subset
from .measures import symmetric_delta

SCHEMA_VERSION = 1

WEIGHT_MEASURES = ("symmetric_delta", "phi")


def enumerate_subsets(n: int, sigma: int,
                      containing: int | None = None) -> list[VariableSubset]:
    """All variable subsets of sizes 2..sigma, in (size, mask) order.

    `containing` restricts to subsets that include one designated variable
    (the asymmetric, fixed-target mode).
    """
    if not 2 <= sigma <= n:
        raise ValueError(f"sigma must be in 2..{n}, got {sigma}")
    masks = subset_masks(n, 2, sigma)
    if containing is not None:
        bit = 1 << containing
        masks = [m for m in masks if m & bit]
    masks.sort(key=lambda m: (m.bit_count(), m))
    return [VariableSubset(mask=m) for m in masks]


@dataclass
class NullDistribution:
    """Per-size empirical |score| distribution under column permutation."""

    samples_by_size: dict[int, np.ndarray]
    n_perm: int
    quantile: float
    seed: int

    def threshold(self, size: int) -> float:
        values = self.samples_by_size.get(size)
        if values is None or len(values) == 0:
            raise ValueError(f"no null samples for subset size {size}")
        return float(np.quantile(values, self.quantile))

    def thresholds(self) -> dict[int, float]:
        return {k: self.threshold(k) for k in sorted(self.samples_by_size)}


def _permuted(ds: Dataset, rng: np.random.Generator) -> Dataset:
    """Each column independently row-shuffled: marginals kept, joints broken."""
    codes = np.empty_like(ds.codes)
    for j in range(ds.n_vars):
        codes[:, j] = ds.codes[rng.permutation(ds.n_samples), j]
    return Dataset(codes, ds.variables)


def _scores(ds: Dataset, masks: list[int], sigma: int, log_base: float,
            weight_measure: str, signed: bool, threads: int = 1) -> dict[int, float]:
    cache = populate(ds, sigma, log_base=log_base, threads=threads)
    if weight_measure == "phi":
        return {m: phi_subset(cache, m, signed=signed) for m in masks}
    return {m: symmetric_delta(cache, m, signed=signed) for m in masks}


def build_null(ds: Dataset, sigma: int, n_perm: int, seed: int,
               quantile: float = 0.99, log_base: float = 2.0,
               weight_measure: str = "symmetric_delta", signed: bool = False,
               threads: int = 1) -> NullDistribution:
    """Null |score| distributions from independently permuted columns.

    Each permutation replicate draws from its own seed-derived stream, so
    results do not depend on evaluation order or scheduling.
    """
    if n_perm < 1:
        raise ValueError("n_perm must be >= 1")
    if not 0.0 < quantile < 1.0:
        raise ValueError("quantile must be in (0, 1)")
    if weight_measure not in WEIGHT_MEASURES:
        raise ValueError(f"unknown weight measure {weight_measure!r}")
    masks = [s.mask for s in enumerate_subsets(ds.n_vars, sigma)]
    streams = np.random.SeedSequence(seed).spawn(n_perm)

    def one(stream) -> dict[int, float]:
        rng = np.random.default_rng(stream)
        return _scores(_permuted(ds, rng), masks, sigma, log_base,
                       weight_measure, signed)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            replicates = list(pool.map(one, streams))
    else:
        replicates = [one(s) for s in streams]

    by_size: dict[int, list[float]] = {}
    for rep in replicates:
        for m, v in rep.items():
            by_size.setdefault(m.bit_count(), []).append(abs(v))
    samples = {k: np.asarray(vals) for k, vals in sorted(by_size.items())}
    return NullDistribution(samples_by_size=samples, n_perm=n_perm,
                            quantile=quantile, seed=seed)


@dataclass(frozen=True)
class Hyperedge:
    members: tuple[int, ...]
    weight: float
    measure: str


@dataclass
class Hypergraph:
    vertices: list[Variable]
    edges: list[Hyperedge]
    meta: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "version": SCHEMA_VERSION,
            "vertices": [{"name": v.name, "cardinality": v.cardinality}
                         for v in self.vertices],
            "edges": [{"members": list(e.members), "weight": e.weight,
                       "measure": e.measure} for e in self.edges],
            "meta": self.meta,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Hypergraph":
        payload = json.loads(text)
        vertices = [Variable(v["name"], int(v["cardinality"]))
                    for v in payload["vertices"]]
        edges = [Hyperedge(tuple(e["members"]), float(e["weight"]),
                           e["measure"]) for e in payload["edges"]]
        return cls(vertices=vertices, edges=edges, meta=payload.get("meta", {}))


def infer(ds: Dataset, sigma: int,
          threshold: NullDistribution | float,
          weight_measure: str = "symmetric_delta", signed: bool = False,
          log_base: float = 2.0, minimal: bool = False,
          containing: int | None = None, threads: int = 1) -> Hypergraph:
    """Weighted hypergraph of subsets whose |score| exceeds the threshold.

    `threshold` is either a NullDistribution (per-size quantile thresholds)
    or one absolute cutoff applied to every size. Surviving supersets of
    surviving edges are kept unless minimal=True prunes them.
    """
    if weight_measure not in WEIGHT_MEASURES:
        raise ValueError(f"unknown weight measure {weight_measure!r}")
    subsets = enumerate_subsets(ds.n_vars, sigma, containing=containing)
    masks = [s.mask for s in subsets]
    scores = _scores(ds, masks, sigma, log_base, weight_measure, signed,
                     threads=threads)

    sizes = sorted({m.bit_count() for m in masks})
    if isinstance(threshold, NullDistribution):
        cut = {k: threshold.threshold(k) for k in sizes}
        n_perm, quantile, seed = (threshold.n_perm, threshold.quantile,
                                  threshold.seed)
        rng_name = "numpy-pcg64"  # generator behind the permutation null
    else:
        cut = {k: float(threshold) for k in sizes}
        n_perm = quantile = seed = rng_name = None

    surviving = [m for m in masks
                 if abs(scores[m]) > cut[m.bit_count()] and scores[m] != 0.0]
    if minimal:
        keep = []
        for m in surviving:
            if not any(o != m and o & m == o for o in surviving):
                keep.append(m)
        surviving = keep

    surviving.sort(key=lambda m: (m.bit_count(), m))
    edges = [Hyperedge(tuple(mask_indices(m)), scores[m], weight_measure)
             for m in surviving]
    meta = {
        "sigma": sigma,
        "n_perm": n_perm,
        "quantile": quantile,
        "seed": seed,
        "rng": rng_name,
        "threshold_by_size": {str(k): v for k, v in cut.items()},
        "weight_measure": weight_measure,
        "log_base": log_base,
        "n_samples": ds.n_samples,
        "minimal": minimal,
        "containing": containing,
    }
    return Hypergraph(vertices=list(ds.variables), edges=edges, meta=meta)


def to_dot(hg: Hypergraph) -> str:
    """Graphviz DOT via star expansion.

    Every hyperedge (pairs included) becomes an auxiliary point-shaped
    node labeled with the weight, connected to each member; output is
    canonical given the hypergraph's edge order.
    """
    lines = ["graph hyperdep {", "  node [shape=ellipse];"]
    for v in hg.vertices:
        lines.append(f'  "{v.name}";')
    for k, e in enumerate(hg.edges):
        aux = f"e{k}"
        lines.append(f'  "{aux}" [shape=point, xlabel="{e.weight:.6g}"];')
        for i in e.members:
            lines.append(f'  "{hg.vertices[i].name}" -- "{aux}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(hg: Hypergraph, path, fmt: str = "json") -> None:
    """Write a hypergraph as canonical JSON or DOT."""
    if fmt == "json":
        text = hg.to_json() + "\n"
    elif fmt == "dot":
        text = to_dot(hg)
    else:
        raise ValueError(f"unsupported export format {fmt!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
