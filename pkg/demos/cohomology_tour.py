"""Tour of the exact cohomology calculator on a ruled surface.

Run with: python3 demos/cohomology_tour.py
"""

from hirzebruch import DivisorClass, Surface, chi, h0, h1, h2, oracle_h0

surface = Surface(2)
print(f"Surface invariant e = {surface.e}")
print(f"Canonical class K = {surface.canonical_class()},  K.K = "
      f"{surface.intersect(surface.canonical_class(), surface.canonical_class())}")
print()

# The closed form for h^0 is a sum of line counts on the base; the oracle
# recounts lattice points independently.  They must agree everywhere.
print("class        h0  h1  h2  chi   oracle")
for cls in [DivisorClass(0, 0), DivisorClass(1, 0), DivisorClass(2, 2),
            DivisorClass(3, 4), DivisorClass(-2, 2), DivisorClass(5, -7)]:
    v0, v1, v2 = h0(surface, cls), h1(surface, cls), h2(surface, cls)
    print(f"{str(cls):10s} {v0:4d} {v1:3d} {v2:3d} {chi(surface, cls):4d}"
          f" {oracle_h0(surface, cls):8d}")
print()

# h1 vanishing splits into three regimes: high slope, the a = -1 wall
# (where everything vanishes), and the dual low regime by duality.
print("h1 along the line a = 3, e = 2 (vanishes once b >= ea - 1 = 5):")
for b in range(0, 9):
    cls = DivisorClass(3, b)
    print(f"  b = {b}: h1 = {h1(surface, cls)}")
print()

# Mixed-sign classes pick up large middle cohomology.
steep = DivisorClass(5, -7)
print(f"Mixed quadrant on e = 1: h1{steep} = {h1(Surface(1), steep)}")
