"""
Complete-cap spectra in small dimensions
========================================

Exhaustive search settles PG(3,2) in well under a second. One dimension up,
filtering on the trace in a fixed C-slice turns the search structured: only
A-slice subsets compatible with the coset equations are ever assembled, which
is what keeps PG(5,2) within reach.
"""

from pg2caps import SearchConstraints, completeness, enumerate_caps, spectrum

# every complete cap of PG(3,2), by brute force
spec = spectrum(SearchConstraints(n=3))
print("PG(3,2) complete-cap sizes:", list(spec.sizes))
print("caps examined:", spec.meta["caps_seen"], "| mode:", spec.meta["mode"])
for size, cap in sorted(spec.witnesses.items()):
    print(f"  witness of size {size}:", cap.sorted_points(),
          "complete =", completeness(cap).is_complete)

# the 8-point witness is an affine plane complement; check one directly
eights = [s for s in enumerate_caps(3) if len(s) == 8]
print("number of 8-point complete caps:", len(eights), "\n")

# structured mode: PG(4,2) caps whose C-slice holds exactly 3 points
c = SearchConstraints(n=4, c_size=3, frame_disjoint=True)
spec = spectrum(c, mode="structured")
print("PG(4,2), |C| = 3, frame-disjoint:", list(spec.sizes),
      "from", spec.meta["caps_seen"], "caps")

# the same filter two dimensions up; exhaustive search would be hopeless here
c = SearchConstraints(n=5, c_size=3, frame_disjoint=True)
spec = spectrum(c)
print("PG(5,2), |C| = 3, frame-disjoint:", list(spec.sizes),
      "from", spec.meta["caps_seen"], "caps | mode:", spec.meta["mode"])

# caps at or beyond the half-space mark 2^(n-1)+1, up to the affine bound
spec = spectrum(SearchConstraints(n=4, large=True))
print("PG(4,2) large caps:", list(spec.sizes))
