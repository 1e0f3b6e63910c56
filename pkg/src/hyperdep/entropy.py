"""Plug-in joint entropies over the subset lattice, with a cache.

Every downstream measure is a signed combination of joint entropies of
variable subsets, so a single populate pass over the lattice (up to a size
cap) serves all of them. Estimation is maximum-likelihood plug-in:
H = -sum p_hat log p_hat with p_hat = count / N, in bits by default.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator

import numpy as np

from .dataset import Dataset, as_mask, mask_indices

# Keys above this radix are re-densified before further mixing to avoid
# int64 overflow when encoding joint values.
_RADIX_LIMIT = 1 << 62

Estimator = Callable[[np.ndarray, int, float], float]


class CacheMiss(KeyError):
    """An entropy was requested for a subset that was never populated."""


def plugin_entropy(counts: np.ndarray, n_samples: int, log_base: float = 2.0) -> float:
    """Maximum-likelihood entropy of a count vector (zero counts ignored)."""
    c = np.asarray(counts, dtype=np.float64)
    c = c[c > 0]
    p = c / n_samples
    h = float(-(p * np.log2(p)).sum())
    if log_base != 2.0:
        h /= math.log2(log_base)
    # guard against -0.0 from rounding
    return h if h > 0.0 else 0.0


def joint_codes(ds: Dataset, subset) -> np.ndarray:
    """Mixed-radix encoding of each row's value tuple on a subset.

    Equal codes <=> equal value tuples. Re-densifies intermediates so the
    encoding never overflows regardless of subset size.
    """
    idx = mask_indices(as_mask(subset))
    if not idx:
        raise ValueError("empty subset")
    if idx[-1] >= ds.n_vars:
        raise ValueError(f"variable index {idx[-1]} out of range")
    cards = ds.cardinalities
    key = ds.codes[:, idx[0]].astype(np.int64)
    radix = cards[idx[0]]
    for j in idx[1:]:
        if radix * cards[j] > _RADIX_LIMIT:
            _, key = np.unique(key, return_inverse=True)
            radix = int(key.max()) + 1
        key = key * cards[j] + ds.codes[:, j]
        radix *= cards[j]
    return key


def joint_entropy(ds: Dataset, subset, log_base: float = 2.0,
                  estimator: Estimator | None = None) -> float:
    """Plug-in joint entropy of a variable subset, in base-`log_base` units."""
    key = joint_codes(ds, subset)
    _, counts = np.unique(key, return_counts=True)
    est = estimator or plugin_entropy
    return est(counts, ds.n_samples, log_base)


def subset_masks(n: int, min_size: int, max_size: int) -> list[int]:
    """All subset bitmasks with min_size..max_size members, ascending."""
    masks = []
    for k in range(min_size, max_size + 1):
        for combo in combinations(range(n), k):
            m = 0
            for i in combo:
                m |= 1 << i
            masks.append(m)
    masks.sort()
    return masks


@dataclass
class EntropyCache:
    """Joint entropies keyed by subset bitmask, ascending-mask iteration.

    Satisfies (up to fp tolerance, by construction of the estimator):
    monotone in subset inclusion, subadditive, and bounded by the log of
    the subset's cardinality product.
    """

    table: dict[int, float]
    log_base: float = 2.0
    fingerprint: str = ""
    n_samples: int = 0

    def entropy(self, subset) -> float:
        mask = as_mask(subset)
        try:
            return self.table[mask]
        except KeyError:
            raise CacheMiss(f"subset {mask_indices(mask)} not in cache") from None

    @property
    def n_vars(self) -> int:
        """Number of variables, inferred from the singleton entries."""
        return sum(1 for m in self.table if m.bit_count() == 1)

    def __contains__(self, subset) -> bool:
        return as_mask(subset) in self.table

    def __len__(self) -> int:
        return len(self.table)

    def items(self) -> Iterator[tuple[int, float]]:
        return iter(self.table.items())

    def to_json(self) -> str:
        payload = {
            "log_base": self.log_base,
            "fingerprint": self.fingerprint,
            "n_samples": self.n_samples,
            "entries": {str(m): h for m, h in self.table.items()},
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "EntropyCache":
        payload = json.loads(text)
        table = {int(m): float(h) for m, h in payload["entries"].items()}
        table = dict(sorted(table.items()))
        return cls(table=table, log_base=float(payload["log_base"]),
                   fingerprint=payload.get("fingerprint", ""),
                   n_samples=int(payload.get("n_samples", 0)))


def populate(ds: Dataset, max_size: int, log_base: float = 2.0,
             estimator: Estimator | None = None, threads: int = 1) -> EntropyCache:
    """Entropies of every subset with 1..max_size members.

    Evaluation order never affects results (each subset is independent);
    with threads > 1 subsets are computed concurrently and inserted in
    ascending mask order afterwards.
    """
    n = ds.n_vars
    if not 1 <= max_size <= n:
        raise ValueError(f"max_size must be in 1..{n}, got {max_size}")
    masks = subset_masks(n, 1, max_size)

    def h(mask: int) -> float:
        return joint_entropy(ds, mask, log_base, estimator)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(h, masks))
    else:
        values = [h(m) for m in masks]
    table = dict(zip(masks, values))
    return EntropyCache(table=table, log_base=log_base,
                        fingerprint=ds.fingerprint(), n_samples=ds.n_samples)
