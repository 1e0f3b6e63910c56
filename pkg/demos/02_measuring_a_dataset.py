"""Scoring every variable subset of a sampled dataset.

Generates 1000 samples where W is a lookup of (X, Y) and the other four
variables are independent noise, then prints the measure report for every
triplet. The X,Y,W triplet is the only one whose symmetric score stands
clear of the sampling floor.
"""
import sys

from hyperdep import DependencySpec, generate, measure_report, populate
from hyperdep.hypergraph import enumerate_subsets
from hyperdep.measures import write_reports_tsv

ds = generate(DependencySpec(kind="w_of_xy", n_samples=1000, seed=42))
cache = populate(ds, 3)

triplets = [s for s in enumerate_subsets(ds.n_vars, 3) if len(s) == 3]
reports = sorted((measure_report(cache, s) for s in triplets),
                 key=lambda r: abs(r.symmetric_delta), reverse=True)

print("top five triplets by |symmetric score|:")
write_reports_tsv(reports[:5], sys.stdout, names=ds.names)

# The per-target differentials of the winning triplet: each one is minus
# the conditional mutual information of the other two given the target.
best = reports[0]
print("\nwinning triplet per-target differentials:")
for target, value in sorted(best.delta_by_target.items()):
    print(f"  target {ds.names[target]}: {value:+.4f}")

# Fixed-target view: every triplet containing W, scored with W as target.
print("\ntriplets containing W, differential with target W:")
w = ds.index_of("W")
for s in enumerate_subsets(ds.n_vars, 3, containing=w):
    if len(s) != 3:
        continue
    rep = measure_report(cache, s)
    label = ",".join(ds.names[i] for i in rep.members)
    print(f"  {label:<8} {rep.delta_by_target[w]:+.4f}")
