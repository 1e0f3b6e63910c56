"""Canonical dependency patterns and how the measures tell them apart.

Four archetypes on exhaustive uniform 4-valued data:

  independent   all three variables drawn independently
  identical     three copies of one variable (full dependence)
  pair+free     two identical variables plus an independent one
  collective    Z = (X + Y) mod 4: Z is determined only by X AND Y together

Interaction information alone cannot isolate the collective case; the
target-symmetric product score is zero for the first three and large for
the last one.
"""
from itertools import product

from hyperdep import (Dataset, Variable, delta, interaction_information,
                      populate, symmetric_delta)


def dataset(rows):
    return Dataset(rows, [Variable(n, 4) for n in ("A", "B", "C")])


patterns = {
    "independent": dataset([(a, b, c) for a, b, c in
                            product(range(4), range(4), range(4))]),
    "identical": dataset([(v, v, v) for v in range(4)]),
    "pair+free": dataset([(v, v, c) for v, c in product(range(4), range(4))]),
    "collective": dataset([(a, b, (a + b) % 4) for a, b in
                           product(range(4), range(4))]),
}

print(f"{'pattern':<12} {'I(A,B,C)':>9} {'d(tgt C)':>9} {'sym score':>10}")
for name, ds in patterns.items():
    cache = populate(ds, 3)
    i3 = interaction_information(cache, [0, 1, 2])
    d3 = delta(cache, [0, 1, 2], 2)
    sd = symmetric_delta(cache, [0, 1, 2])
    print(f"{name:<12} {i3:>9.3f} {d3:>9.3f} {sd:>10.3f}")

# Only the collective pattern scores nonzero on the symmetric measure:
# the interaction information is nonzero for "identical" too (+2) and the
# single-target differential is nonzero for "pair+free" (-2), so neither
# is specific to a genuine three-way pattern.
print()
print("pair-level scores (two variables):")
pairs = {
    "identical pair": dataset([(v, v, 0) for v in range(4)]),
    "half shared": dataset([(v % 2, v, 0) for v in range(4)]),
    "independent": dataset([(a, b, 0) for a, b in product(range(4), range(4))]),
}
for name, ds in pairs.items():
    cache = populate(ds, 2)
    print(f"  {name:<16} pair score {symmetric_delta(cache, [0, 1]):.3f}")
# Zero at both extremes (fully shared, fully unrelated); maximal in between.
