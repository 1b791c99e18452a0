"""
Covering partitions and the all-singleton cap family
====================================================

A labeling of AG(k,2) by AG(r,2) whose type-w secants cover every nonzero
vector, for every w, encodes a complete cap of size 2^(n-r)+2^r-1 in
PG(k+r+1,2). Passing four-label partitions can be doubled in k, so one seed
yields an infinite chain of complete caps of size 2^(n-2)+3.
"""

from pg2caps import (
    best_disjoint_frame,
    cap_to_partition,
    completeness,
    decompose,
    family_size_by_k,
    partition_condition,
    partition_double,
    partition_to_cap,
)
from pg2caps.catalog import SEED_ANCHORS, seed_partition

# the seed: 16 vectors, labels 1/2/3 (label 0 stays empty)
p = seed_partition()
print("seed partition: k =", p.k, "r =", p.r)
print("part sizes:", {w: len(xs) for w, xs in sorted(p.parts.items())})
print("passes the coverage condition:", bool(partition_condition(p)), "\n")

# chain: double twice, realizing a complete cap at every level
a0, a1, a01 = SEED_ANCHORS
for step in range(3):
    cap = partition_to_cap(p)
    rep = completeness(cap)
    predicted = family_size_by_k(cap.n, p.r, 1)
    print(f"k={p.k}: cap of {len(cap)} points in PG({cap.n},2)",
          f"(formula {predicted}), complete = {rep.is_complete}")
    if step < 2:
        p = partition_double(p, a0, a1, a01)

# the construction is reversible: slicing the cap recovers the partition
d = decompose(cap, best_disjoint_frame(cap))
back = cap_to_partition(d)
print("\nround trip recovers k =", back.k, "r =", back.r,
      "with equal parts:", back == p)
