"""
Four points in the C-slice
==========================

When C holds four points spanning a solid, each A/B coset pair solves the
coset equations in exactly 42 ways, falling into trivial, singleton, and
doubleton families. Mixing m doubleton and s singleton pairs dials the cap
size 2^(n-1) - 3(s+m) - m + 4, though not every (m, s) recipe completes.
A planar (or two-point) C instead forces a doubled cap.
"""

from pg2caps import (
    ConstructionError,
    PointSet,
    SearchConstraints,
    c4_construct,
    c4_planar_case,
    c4_size,
    completeness,
    enumerate_pair_solutions,
    spectrum,
    undouble,
)
from pg2caps.catalog import pg4_four_point_slice

# all solutions of one coset pair against a solid-spanning C in PG(4,2)
entry = pg4_four_point_slice()
ha = PointSet.of(4, (16 ^ v for v in [0, 3, 5, 6, 9, 10, 12, 15]))
sols = enumerate_pair_solutions(ha, entry.c)
families = {"trivial": 0, "singleton": 0, "doubleton": 0}
for a, b in sols:
    if len(a) in (0, 8):
        families["trivial"] += 1
    elif len(a) == 2:
        families["doubleton"] += 1
    else:
        families["singleton"] += 1
print("solutions of one coset pair:", len(sols), families)

# doubleton pairs share one direction, never the C-sum z0
a, b = next((a, b) for a, b in sols if len(a) == 2)
a1, a2 = a.sorted_points()
b1, b2 = b.sorted_points()
print("doubleton direction:", a1 ^ a2, "==", b1 ^ b2, "| z0 =", entry.z0, "\n")

# sweep the recipe space in PG(6,2); two parameter pairs have no complete cap
print("PG(6,2) recipes (m doubleton, s singleton pairs):")
npairs = 1 << (6 - 4)
for m in range(npairs):
    for s in range(npairs - m):
        if not 1 <= m + s <= npairs - 1 or (m, s) == (1, 0):
            continue
        try:
            cap, cert = c4_construct(6, m, s)
            print(f"  m={m} s={s}: size {len(cap)}",
                  f"(formula {c4_size(6, m, s)}), verified = {cert.verified}")
        except ConstructionError as exc:
            print(f"  m={m} s={s}: no complete cap ({exc})")

# a two-point C signals the planar branch: the cap is a double
witness = spectrum(SearchConstraints(n=4, c_size=2, frame_disjoint=True)).witnesses[10]
verdict = c4_planar_case(witness)
print("\ntwo-point C slice: planar branch =", verdict.planar,
      "| size matches 2^(n-1)+|C|:", verdict.size_ok)
v = verdict.vertices.min_point()
half = undouble(witness, v)
print("undoubles across", v, "to", len(half), "points;",
      "regenerated cap is complete =", completeness(witness).is_complete)
