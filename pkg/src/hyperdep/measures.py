"""Interaction information and its differential / symmetrized forms.

All measures here are alternating-sign sums of cached joint entropies, so
they are pure functions of an EntropyCache and never touch raw data.

Sign conventions:

* interaction_information uses the inclusion-exclusion expansion with
  positive sign on odd-size subsets, so the pair case equals mutual
  information and three identical variables score +H of one of them.
* delta(subset, target) restricts the same expansion to subsets containing
  the target; for a 3-set it equals minus the conditional mutual
  information of the other two given the target.
* symmetric_delta multiplies delta over every choice of target (plain
  product by default; collective dependence of m variables then scores
  (-H)^m, i.e. negative for odd m). An optional alternating prefactor
  (-1)^m can be applied via signed=True for the strict alternating form.
  The pair case is the dedicated two-variable formula
  -(H1 + H2 - H12) * (min(H1, H2) - H12),
  which vanishes at both full dependence and full independence.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, Iterable, Mapping

from .dataset import as_mask, mask_indices
from .entropy import EntropyCache


def _iter_submasks(mask: int):
    """Non-empty submasks of mask, descending; classic (sub-1)&mask walk."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def mutual_information(cache: EntropyCache, i: int, j: int) -> float:
    """H(i) + H(j) - H(i,j); non-negative up to fp tolerance."""
    if i == j:
        raise ValueError("mutual information needs two distinct variables")
    pair = (1 << i) | (1 << j)
    return cache.entropy(1 << i) + cache.entropy(1 << j) - cache.entropy(pair)


def interaction_information(cache: EntropyCache, subset) -> float:
    """Inclusion-exclusion interaction information of a subset (size >= 2).

    Symmetric under any permutation of the subset by construction (the sum
    runs over unordered sub-subsets). Can be negative for >= 3 variables.
    """
    mask = as_mask(subset)
    m = mask.bit_count()
    if m < 2:
        raise ValueError("interaction information needs >= 2 variables")
    total = 0.0
    for sub in _iter_submasks(mask):
        h = cache.entropy(sub)
        total += h if (sub.bit_count() & 1) else -h
    return total


def delta(cache: EntropyCache, subset, target: int) -> float:
    """Change in interaction information from adding `target` to the rest.

    Equals the alternating entropy sum restricted to subsets containing the
    target. Requires |subset| >= 3; asymmetric in the target.
    """
    mask = as_mask(subset)
    m = mask.bit_count()
    if m < 3:
        raise ValueError("delta needs >= 3 variables")
    bit = 1 << target
    if not mask & bit:
        raise ValueError(f"target {target} not in subset {mask_indices(mask)}")
    rest = mask & ~bit
    total = 0.0
    sub = rest
    while True:
        tau = sub | bit
        h = cache.entropy(tau)
        total += h if (tau.bit_count() & 1) else -h
        if sub == 0:
            break
        sub = (sub - 1) & rest
    return total


def symmetric_delta(cache: EntropyCache, subset, signed: bool = False) -> float:
    """Target-symmetric dependence score of a subset (size >= 2).

    Product of delta over all target choices for size >= 3; the dedicated
    two-variable form for pairs. Nonzero only under collective dependency
    of all members; zero at full independence and at full dependence.
    signed=True applies the alternating (-1)^m prefactor.
    """
    mask = as_mask(subset)
    m = mask.bit_count()
    if m < 2:
        raise ValueError("symmetric delta needs >= 2 variables")
    if m == 2:
        i, j = mask_indices(mask)
        h1, h2 = cache.entropy(1 << i), cache.entropy(1 << j)
        h12 = cache.entropy(mask)
        value = -(h1 + h2 - h12) * (min(h1, h2) - h12)
    else:
        value = 1.0
        for t in mask_indices(mask):
            value *= delta(cache, mask, t)
    if signed and m % 2:
        value = -value
    return value + 0.0  # normalizes -0.0


def entropy_from_interactions(interactions: Mapping[int, float], subset) -> float:
    """Rebuild a joint entropy from interaction values of all sub-subsets.

    Inverse of the inclusion-exclusion expansion; singletons contribute
    their own entropy as their "interaction". Exists as a verification
    oracle: the result must match the cached joint entropy.
    """
    mask = as_mask(subset)
    total = 0.0
    for sub in _iter_submasks(mask):
        try:
            i_val = interactions[sub]
        except KeyError:
            raise KeyError(
                f"missing interaction value for {mask_indices(sub)}") from None
        total += i_val if (sub.bit_count() & 1) else -i_val
    return total


def interaction_map(cache: EntropyCache, subset) -> dict[int, float]:
    """Interaction values of every non-empty sub-subset, keyed by mask.

    Singletons map to their entropy; handy input for
    entropy_from_interactions.
    """
    mask = as_mask(subset)
    out: dict[int, float] = {}
    for sub in sorted(_iter_submasks(mask)):
        if sub.bit_count() == 1:
            out[sub] = cache.entropy(sub)
        else:
            out[sub] = interaction_information(cache, sub)
    return out


@dataclass
class MeasureReport:
    """Per-subset measure values with provenance."""

    members: tuple[int, ...]
    interaction_info: float
    delta_by_target: dict[int, float]
    symmetric_delta: float
    n_samples: int
    log_base: float

    def to_json_dict(self) -> dict:
        return {
            "members": list(self.members),
            "interaction_info": self.interaction_info,
            "delta_by_target": {str(t): v for t, v in
                                sorted(self.delta_by_target.items())},
            "symmetric_delta": self.symmetric_delta,
            "n_samples": self.n_samples,
            "log_base": self.log_base,
        }


def measure_report(cache: EntropyCache, subset, signed: bool = False) -> MeasureReport:
    """All measures for one subset: I, per-target delta, symmetric delta."""
    mask = as_mask(subset)
    members = tuple(mask_indices(mask))
    deltas = ({t: delta(cache, mask, t) for t in members}
              if len(members) >= 3 else {})
    return MeasureReport(
        members=members,
        interaction_info=interaction_information(cache, mask),
        delta_by_target=deltas,
        symmetric_delta=symmetric_delta(cache, mask, signed=signed),
        n_samples=cache.n_samples,
        log_base=cache.log_base,
    )


def write_reports_jsonl(reports: Iterable[MeasureReport], fh: IO[str]) -> None:
    """One JSON object per line, one subset per line."""
    for rep in reports:
        fh.write(json.dumps(rep.to_json_dict(), sort_keys=True))
        fh.write("\n")


def write_reports_tsv(reports: Iterable[MeasureReport], fh: IO[str],
                      names: tuple[str, ...] | None = None) -> None:
    """Tab-separated summary: members, I, symmetric delta, per-target deltas."""
    fh.write("members\tinteraction_info\tsymmetric_delta\tdelta_by_target\n")
    for rep in reports:
        label = (",".join(names[i] for i in rep.members) if names
                 else ",".join(map(str, rep.members)))
        deltas = ";".join(f"{t}:{v:.6g}" for t, v in
                          sorted(rep.delta_by_target.items()))
        fh.write(f"{label}\t{rep.interaction_info:.6g}\t"
                 f"{rep.symmetric_delta:.6g}\t{deltas}\n")
