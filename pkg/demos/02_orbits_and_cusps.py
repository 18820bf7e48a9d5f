"""
Orbits, cusps and what pinching does
====================================

The L-shaped 3-square surface has a small SL(2,Z)-orbit.  Each cusp is a
class of periodic directions; pinching the cylinder cores in a direction
gives a noded surface whose parts we can inspect.
"""

from rank1lab import cusps, l_origami, orbit, pinch, rank1_filter
from rank1lab.cylinders import configuration_check, direction_decomposition

L = l_origami()
orb = orbit(L)
print("orbit size:", len(orb))
for m in orb.members:
    print("  ", m)

for c in cusps(orb):
    d = direction_decomposition(L, *c.direction)
    cr = configuration_check(d)
    dc = pinch(L, d)
    print(f"cusp width {c.width}, direction {c.direction}")
    print("   cylinders:", d.profile(), "->", cr.reason())
    for k, part in enumerate(dc.graph.vertices):
        print(f"   part {k}: zeros {list(part.zero_orders)}, poles {part.poles}, genus {part.genus}")
    print("   verdict:", dc.verdict.value, "|", dc.detail)

# the filter runs one direction per cusp and stops at the first failure
print(rank1_filter(L).to_dict())
