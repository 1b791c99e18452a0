"""
Tangent caps from half-size slices
==================================

Fix a codimension-2 flat and the three hyperplanes through it. Choosing a
set A inside one affine slice, a single point c0 in another, and the
complement-shaped B in the third yields a cap of size 2^(n-1)+1 whose
completeness is governed entirely by whether A is periodic.
"""

from pg2caps import completeness, format_point, is_periodic, saturate, tangent_cap, vertex_set
from pg2caps.catalog import (
    pg4_near_halfslice,
    pg5_aperiodic_halfslice,
    pg5_periodic_halfslice,
)

# a non-periodic half slice gives a complete cap straight away
entry = pg5_aperiodic_halfslice()
cap, cert = tangent_cap(entry.a, entry.c0, entry.frame)
print("aperiodic slice:", "|A| =", len(entry.a), "periodic =", is_periodic(entry.a))
print("cap size:", len(cap), "complete:", completeness(cap).is_complete)
print("certificate:", cert.theorem, cert.details["branch"], "\n")

# a periodic half slice cannot complete; saturation shows what was missing
entry = pg5_periodic_halfslice()
cap, cert = tangent_cap(entry.a, entry.c0, entry.frame)
rep = completeness(cap)
print("periodic slice: complete =", rep.is_complete)
print("bare points:", [format_point(p, cap.n) for p in rep.uncovered.sorted_points()])
grown, grown_cert = saturate(cap)
print("saturated to", len(grown), "points; complete =", completeness(grown).is_complete, "\n")

# at exactly half size and aperiodic, at most one infinity point is missed;
# adjoining it gives a complete periodic cap with a single vertex
entry = pg4_near_halfslice()
cap, cert = tangent_cap(entry.a, entry.c0, entry.frame)
e = cert.details["e"]
print("near-half slice misses one point:", format_point(e, cap.n))
t = cap.add(e)
print("T = S + e:", len(t), "points, complete =", completeness(t).is_complete)
print("vertex of T:", format_point(vertex_set(t).points.min_point(), t.n),
      "= e + c0 =", format_point(e ^ entry.c0, t.n))
