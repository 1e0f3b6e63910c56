"""Shared builders and an independent entropy oracle for the test suite.

The oracle computes plug-in entropies by direct enumeration with
collections.Counter and math.log2, deliberately sharing no code with the
library's numpy path, so derived expected values are cross-checked through
a second route.
"""
from __future__ import annotations

import math
from collections import Counter
from itertools import product

import numpy as np
import pytest

from hyperdep import Dataset, Variable


def oracle_entropy(rows, idx, log_base: float = 2.0) -> float:
    """Plug-in joint entropy of selected columns by direct enumeration."""
    counts = Counter(tuple(row[i] for i in idx) for row in rows)
    n = len(rows)
    h = -sum((c / n) * math.log2(c / n) for c in counts.values())
    if log_base != 2.0:
        h /= math.log2(log_base)
    return h


def oracle_cmi(rows, a, b, t) -> float:
    """Conditional mutual information I(a;b|t) from conditional entropies.

    H(a|t) + H(b|t) - H(a,b|t), each conditional entropy expanded as a
    probability-weighted average over the conditioning values.
    """
    n = len(rows)
    by_t = {}
    for row in rows:
        by_t.setdefault(row[t], []).append(row)
    cmi = 0.0
    for group in by_t.values():
        w = len(group) / n
        h_a = oracle_entropy(group, (a,))
        h_b = oracle_entropy(group, (b,))
        h_ab = oracle_entropy(group, (a, b))
        cmi += w * (h_a + h_b - h_ab)
    return cmi


def make_dataset(rows, cards=None, names=None) -> Dataset:
    rows = [tuple(r) for r in rows]
    n_cols = len(rows[0])
    if names is None:
        names = [f"v{j}" for j in range(n_cols)]
    if cards is None:
        cards = [max(r[j] for r in rows) + 1 for j in range(n_cols)]
    return Dataset(rows, [Variable(n, c) for n, c in zip(names, cards)])


def exhaustive_product(cards) -> Dataset:
    """Every combination once: exact full independence with uniform margins."""
    rows = list(product(*[range(c) for c in cards]))
    return make_dataset(rows, cards=list(cards))


def identical_columns(n_cols: int, card: int = 4) -> Dataset:
    """Full dependence: every column repeats one uniform base variable."""
    rows = [(v,) * n_cols for v in range(card)]
    return make_dataset(rows, cards=[card] * n_cols)


def cd_triple(card: int = 4) -> Dataset:
    """Collective dependence: uniform pair plus their sum mod card."""
    rows = [(x, y, (x + y) % card) for x, y in
            product(range(card), range(card))]
    return make_dataset(rows, cards=[card] * 3)


def random_dataset(rng: np.random.Generator, n_vars=None, n_rows=None,
                   max_card: int = 4) -> Dataset:
    """A random sampled dataset, sometimes with a functional column mixed in."""
    n_vars = n_vars or int(rng.integers(3, 6))
    n_rows = n_rows or int(rng.integers(40, 160))
    cards = rng.integers(2, max_card + 1, size=n_vars)
    codes = np.stack([rng.integers(0, c, size=n_rows) for c in cards], axis=1)
    if rng.random() < 0.5 and n_vars >= 3:
        # make one column a noisy function of two others
        j = int(rng.integers(0, n_vars))
        a, b = [int(k) for k in rng.choice(
            [k for k in range(n_vars) if k != j], size=2, replace=False)]
        codes[:, j] = (codes[:, a] + codes[:, b]) % cards[j]
    return make_dataset(codes.tolist(), cards=[int(c) for c in cards])


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
