"""Chart where rank-2 bundles from the point construction can live.

For each first Chern class (u, v) the classifier decides whether the
construction is obstructed (no bundle with a section after margin
adjustment) or realizable, and for realizable cells which second Chern
numbers are hit as the margin sweeps 0..m_max.

Run with: python3 demos/chart_the_region.py
"""

from hirzebruch import RegionLabel, Surface, classify_region

surface = Surface(2)
rank = 2

cells = classify_region(surface, rank, (-3, 6), (-6, 10))
by_key = {(c.u, c.v): c for c in cells}

print(f"e = {surface.e}, rank {rank}: '#' = realizable, '.' = obstructed")
print("(boundary is the line v = e(u-1) - 1)\n")
header = "      " + "".join(f"{u:3d}" for u in range(-3, 7))
print(header)
for v in range(10, -7, -1):
    row = f"v={v:3d} "
    for u in range(-3, 7):
        cell = by_key[(u, v)]
        row += "  #" if cell.label is RegionLabel.EXISTENT else "  ."
    print(row)
print()

# c2 witness intervals: which second Chern numbers occur for fixed c1 as
# the margin grows.  Successive margins usually weld into one interval.
for m_max in range(0, 4):
    cell = classify_region(Surface(1), rank, (2, 2), (1, 1), m_max=m_max)[0]
    spans = ", ".join(f"[{lo},{hi}]" for lo, hi in cell.witness)
    print(f"c1 = (2,1) on e = 1, margins 0..{m_max}: c2 covers {spans}")
print()

# Far in the negative quadrant the margin steps outrun the windows and
# genuine gaps open up.
gap = classify_region(Surface(1), rank, (-3, -3), (-5, -5), m_max=2)[0]
spans = ", ".join(f"[{lo},{hi}]" for lo, hi in gap.witness)
print(f"c1 = (-3,-5) on e = 1, margins 0..2: c2 covers {spans} (gapped)")
