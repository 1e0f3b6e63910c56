"""Pairwise and generalized set complexity.

The pairwise score of a variable pair is max(Hi, Hj) * d * (1 - d), where
d is the normalized information distance; it vanishes when the pair is
mutually deterministic (d = 0) and when it is independent (d = 1). The
set-level score averages this over all pairs.

The generalization replaces the pair term with the symmetric dependence
score of a subset, normalized by the largest joint entropy among its
leave-one-out subsets raised to |subset|-1; for pairs this reduces exactly
to the pairwise score. Because a single number hides structure, the full
per-subset component map is always retained.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .dataset import as_mask, mask_indices
from .entropy import EntropyCache, subset_masks
from .measures import mutual_information, symmetric_delta


def information_distance(cache: EntropyCache, i: int, j: int) -> float:
    """Normalized max conditional entropy between two variables, in [0, 1].

    0 means each determines the other; 1 means independent. Two constant
    columns define distance 0 (fully dependent by convention).
    """
    h1, h2 = cache.entropy(1 << i), cache.entropy(1 << j)
    h12 = cache.entropy((1 << i) | (1 << j))
    denom = max(h1, h2)
    if denom == 0.0:
        return 0.0
    return max(h12 - h1, h12 - h2) / denom


def phi_pair(cache: EntropyCache, i: int, j: int) -> float:
    """Pair complexity component: max(Hi, Hj) * d * (1 - d).

    Equals symmetric_delta of the pair divided by max(Hi, Hj); zero when
    both columns are constant.
    """
    h1, h2 = cache.entropy(1 << i), cache.entropy(1 << j)
    denom = max(h1, h2)
    if denom == 0.0:
        return 0.0
    d = information_distance(cache, i, j)
    return denom * d * (1.0 - d)


def phi_pair_conditional_form(cache: EntropyCache, i: int, j: int) -> float:
    """The same pair component via max conditional entropy times mutual info.

    max(H(i|j), H(j|i)) * I(i, j) / max(Hi, Hj); used as an internal
    cross-check of phi_pair.
    """
    h1, h2 = cache.entropy(1 << i), cache.entropy(1 << j)
    h12 = cache.entropy((1 << i) | (1 << j))
    denom = max(h1, h2)
    if denom == 0.0:
        return 0.0
    return max(h12 - h2, h12 - h1) * mutual_information(cache, i, j) / denom


def psi(cache: EntropyCache) -> float:
    """Mean pair complexity over all unordered variable pairs."""
    n_vars = cache.n_vars
    if n_vars < 2:
        raise ValueError("set complexity needs >= 2 variables")
    total = 0.0
    count = 0
    for i, j in combinations(range(n_vars), 2):
        total += phi_pair(cache, i, j)
        count += 1
    return total / count


def _normalizer(cache: EntropyCache, mask: int) -> float:
    """Largest joint entropy among leave-one-out subsets of mask."""
    best = 0.0
    for t in mask_indices(mask):
        best = max(best, cache.entropy(mask & ~(1 << t)))
    return best


def phi_subset(cache: EntropyCache, subset, signed: bool = False) -> float:
    """Normalized dependence component of one subset (size >= 2).

    symmetric_delta divided by the max leave-one-out joint entropy raised
    to |subset|-1. A zero normalizer forces a zero numerator (all members
    constant), so the component is 0 by convention; pairs reduce exactly
    to phi_pair.
    """
    mask = as_mask(subset)
    m = mask.bit_count()
    if m < 2:
        raise ValueError("subset component needs >= 2 variables")
    value = symmetric_delta(cache, mask, signed=signed)
    denom = _normalizer(cache, mask) ** (m - 1)
    if denom == 0.0:
        return 0.0
    return value / denom


@dataclass
class ComplexityReport:
    """Set complexity plus the full per-subset component map."""

    psi: float
    phi_total: float
    phi_by_subset: dict[int, float]
    max_subset_size: int
    normalization_log: dict[int, float]
    log_base: float
    n_samples: int

    def top_components(self, k: int = 10) -> list[tuple[tuple[int, ...], float]]:
        ranked = sorted(self.phi_by_subset.items(),
                        key=lambda kv: (-abs(kv[1]), kv[0]))
        return [(tuple(mask_indices(m)), v) for m, v in ranked[:k]]

    def to_json_dict(self) -> dict:
        return {
            "psi": self.psi,
            "phi_total": self.phi_total,
            "max_subset_size": self.max_subset_size,
            "log_base": self.log_base,
            "n_samples": self.n_samples,
            "components": [
                {"members": mask_indices(m), "phi": v,
                 "normalizer": self.normalization_log[m]}
                for m, v in self.phi_by_subset.items()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def phi_total(cache: EntropyCache, max_subset_size: int,
              signed: bool = False) -> ComplexityReport:
    """Mean component over all subsets of size 2..max_subset_size.

    Summation runs in ascending mask order so the reduction is
    deterministic at any parallelism level upstream.
    """
    n_vars = cache.n_vars
    if max_subset_size < 2:
        raise ValueError("max_subset_size must be >= 2")
    if max_subset_size > n_vars:
        raise ValueError("max_subset_size exceeds variable count")
    masks = subset_masks(n_vars, 2, max_subset_size)
    components: dict[int, float] = {}
    normalizers: dict[int, float] = {}
    total = 0.0
    for m in masks:
        comp = phi_subset(cache, m, signed=signed)
        components[m] = comp
        normalizers[m] = _normalizer(cache, m)
        total += comp
    return ComplexityReport(
        psi=psi(cache),
        phi_total=total / len(masks),
        phi_by_subset=components,
        max_subset_size=max_subset_size,
        normalization_log=normalizers,
        log_base=cache.log_base,
        n_samples=cache.n_samples,
    )
