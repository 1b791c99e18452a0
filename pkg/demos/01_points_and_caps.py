"""
Points, lines, and caps in PG(n,2)
==================================

A point of PG(n,2) is a nonzero bitmask over n+1 coordinates; three points
form a line exactly when they XOR to zero. A cap is a point set with no
three collinear members.
"""

from pg2caps import (
    PointSet,
    completeness,
    format_point,
    is_cap,
    is_collinear,
    num_points,
    parse_point,
    secants,
)

n = 3
print(f"PG({n},2) has {num_points(n)} points")

# points can be written as comma-separated coordinate indices
p = parse_point("0,2", n)
q = parse_point("1", n)
print("p =", format_point(p, n), "=", bin(p))
print("p + q =", format_point(p ^ q, n))
print("collinear:", is_collinear(p, q, p ^ q))

# the five coordinate-ish points form the largest cap that no point extends
s = PointSet.of(n, [0b0001, 0b0010, 0b0100, 0b1000, 0b1111])
print("\ncap:", [format_point(x, n) for x in s])
print("is a cap:", is_cap(s))

rep = completeness(s)
print("secants cover", len(secants(s)), "points")
print("complete:", rep.is_complete, "| uncovered:", rep.uncovered.sorted_points())

# adding any outside point creates a line
for extra in [0b0011, 0b0111]:
    print(f"adding {format_point(extra, n)} keeps it a cap:", is_cap(s.add(extra)))
