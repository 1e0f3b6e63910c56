import math

import numpy as np
import pytest

from hyperdep import CacheMiss, EntropyCache, joint_entropy, populate
from hyperdep.entropy import plugin_entropy, subset_masks
from hyperdep.simulator import W_OF_XY

from conftest import (exhaustive_product, identical_columns, make_dataset,
                      oracle_entropy, random_dataset)
from itertools import product


def test_constant_column_zero():
    ds = make_dataset([(0,), (0,), (0,)], cards=[1])
    assert joint_entropy(ds, [0]) == 0.0


def test_uniform_pair_exhaustive():
    ds = exhaustive_product([4, 4])
    assert joint_entropy(ds, [0, 1]) == pytest.approx(4.0, abs=1e-12)


def test_lookup_table_joint_entropy():
    # 16-row exhaustive expansion of the two-input lookup; H(X,W) enumerates
    # to 3.5 bits (the W column averages 1.5 bits of spread within each X)
    rows = [(x, y, int(W_OF_XY[x, y])) for x, y in product(range(4), range(4))]
    ds = make_dataset(rows, cards=[4, 4, 4])
    assert joint_entropy(ds, [0, 2]) == pytest.approx(3.5, abs=1e-12)
    assert joint_entropy(ds, [0, 2]) == pytest.approx(
        oracle_entropy(rows, (0, 2)), abs=1e-12)


def test_empty_subset_rejected():
    ds = make_dataset([(0, 1)])
    with pytest.raises(ValueError):
        joint_entropy(ds, [])


def test_populate_counts():
    ds6 = exhaustive_product([2] * 6)
    assert len(populate(ds6, 4)) == 6 + 15 + 20 + 15
    ds3 = exhaustive_product([2] * 3)
    assert len(populate(ds3, 3)) == 7
    with pytest.raises(ValueError):
        populate(ds3, 0)
    with pytest.raises(ValueError):
        populate(ds3, 4)


def test_populate_order_ascending_masks():
    ds = exhaustive_product([2, 2, 2])
    cache = populate(ds, 3)
    masks = [m for m, _ in cache.items()]
    assert masks == sorted(masks)


def test_exhaustive_independence_additive():
    ds = exhaustive_product([2, 3, 4])
    cache = populate(ds, 3)
    singles = [cache.entropy(1 << i) for i in range(3)]
    assert cache.entropy([0, 1, 2]) == pytest.approx(sum(singles), abs=1e-12)


def test_row_permutation_bit_identical(rng):
    ds = random_dataset(rng)
    cache = populate(ds, min(3, ds.n_vars))
    perm = rng.permutation(ds.n_samples)
    shuffled = make_dataset(ds.codes[perm].tolist(),
                            cards=list(ds.cardinalities))
    cache2 = populate(shuffled, min(3, ds.n_vars))
    assert dict(cache.items()) == dict(cache2.items())


def test_row_duplication_invariant(rng):
    ds = random_dataset(rng)
    doubled = make_dataset(np.vstack([ds.codes, ds.codes]).tolist(),
                           cards=list(ds.cardinalities))
    c1 = populate(ds, 2)
    c2 = populate(doubled, 2)
    for mask, h in c1.items():
        assert c2.entropy(mask) == pytest.approx(h, abs=1e-12)


def test_chain_bounds(rng):
    for _ in range(20):
        ds = random_dataset(rng, n_vars=4)
        cache = populate(ds, 4)
        full = (1 << 4) - 1
        for mask, h in list(cache.items()):
            for x in range(4):
                if mask >> x & 1 or mask | (1 << x) > full:
                    continue
                bigger = cache.entropy(mask | (1 << x))
                assert bigger >= h - 1e-12
                assert bigger <= h + cache.entropy(1 << x) + 1e-12


def test_subadditivity_and_cardinality_bound(rng):
    for _ in range(10):
        ds = random_dataset(rng)
        cache = populate(ds, min(3, ds.n_vars))
        for mask, h in cache.items():
            idx = [i for i in range(ds.n_vars) if mask >> i & 1]
            assert h <= sum(cache.entropy(1 << i) for i in idx) + 1e-12
            assert h <= math.log2(math.prod(ds.cardinalities[i] for i in idx)) + 1e-12
            assert h >= 0.0


def test_matches_oracle(rng):
    for _ in range(10):
        ds = random_dataset(rng)
        rows = [tuple(r) for r in ds.codes.tolist()]
        cache = populate(ds, min(3, ds.n_vars))
        for mask, h in cache.items():
            idx = tuple(i for i in range(ds.n_vars) if mask >> i & 1)
            assert h == pytest.approx(oracle_entropy(rows, idx), abs=1e-12)


def test_log_base_conversion():
    ds = exhaustive_product([4, 4])
    bits = joint_entropy(ds, [0, 1], log_base=2.0)
    nats = joint_entropy(ds, [0, 1], log_base=math.e)
    assert nats == pytest.approx(bits * math.log(2), abs=1e-12)


def test_cache_miss():
    ds = exhaustive_product([2, 2, 2])
    cache = populate(ds, 2)
    with pytest.raises(CacheMiss):
        cache.entropy([0, 1, 2])


def test_cache_json_round_trip():
    ds = exhaustive_product([2, 3])
    cache = populate(ds, 2)
    again = EntropyCache.from_json(cache.to_json())
    assert dict(again.items()) == dict(cache.items())
    assert again.log_base == cache.log_base
    assert again.fingerprint == cache.fingerprint
    assert again.n_samples == cache.n_samples


def test_populate_threads_identical():
    ds = exhaustive_product([3, 3, 3])
    c1 = populate(ds, 3, threads=1)
    c2 = populate(ds, 3, threads=4)
    assert dict(c1.items()) == dict(c2.items())
    assert list(c1.table) == list(c2.table)


def test_estimator_hook():
    calls = []

    def biased(counts, n, log_base):
        calls.append(len(counts))
        return plugin_entropy(counts, n, log_base) + 0.1

    ds = exhaustive_product([2, 2])
    cache = populate(ds, 2, estimator=biased)
    assert calls
    assert cache.entropy([0]) == pytest.approx(1.1, abs=1e-12)


def test_subset_masks_shapes():
    assert len(subset_masks(6, 1, 4)) == 56
    assert subset_masks(3, 1, 1) == [1, 2, 4]


def test_fingerprint_tracks_data():
    a = exhaustive_product([2, 2])
    b = identical_columns(2, card=2)
    assert populate(a, 1).fingerprint != populate(b, 1).fingerprint


def test_wide_table_past_word_size(rng):
    # bitmask subsets keep working beyond 64 variables (arbitrary-precision
    # masks are the documented fallback)
    codes = rng.integers(0, 2, size=(16, 70))
    ds = make_dataset(codes.tolist(), cards=[2] * 70)
    idx = (0, 65, 69)
    rows = [tuple(r) for r in codes.tolist()]
    assert joint_entropy(ds, idx) == pytest.approx(
        oracle_entropy(rows, idx), abs=1e-12)


def test_radix_overflow_guard(rng):
    # a subset whose cardinality product overflows int64 goes through the
    # re-densify path and still matches the oracle
    n_vars = 40
    codes = rng.integers(0, 4, size=(50, n_vars))
    ds = make_dataset(codes.tolist(), cards=[4] * n_vars)
    idx = tuple(range(n_vars))  # 4**40 >> 2**62
    rows = [tuple(r) for r in codes.tolist()]
    assert joint_entropy(ds, idx) == pytest.approx(
        oracle_entropy(rows, idx), abs=1e-12)
