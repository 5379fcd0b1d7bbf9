"""Distance-sum loci: which points sit at total distance 2 from the corners
of a unit equilateral triangle?"""

import math
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt

import ifs_chisel as ic

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

triangle = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3.0) / 2.0]])
centroid = triangle.mean(axis=0)

# The corners themselves have distance sum exactly 0 + 1 + 1 = 2, so the
# sum-2 contour passes through all three. The minimum possible sum is
# sqrt(3), attained at the centroid (the Fermat point), so smaller targets
# give an empty locus.
print("sum at a corner:   ", ic.distance_sum(triangle, tuple(triangle[0])))
print("sum at the centroid:", ic.distance_sum(triangle, tuple(centroid)))

box = ic.Box(-0.45, -0.42, 1.47, 1.13)
locus = ic.render_locus(triangle, 2.0, box, 512)
ic.write_pbm(locus.region, out / "triangle_locus.pbm")
ic.write_pbm(locus.boundary, out / "triangle_locus_boundary.pbm")
print("region cells:", locus.region.marked_count,
      " contour cells:", locus.boundary.marked_count)

empty = ic.render_locus(triangle, math.sqrt(3.0) - 1e-9, box, 256)
print("cells below the Fermat minimum:", empty.region.marked_count)

# Shrinking the target sweeps a family of nested ovals down to the centroid.
fig, ax = plt.subplots(figsize=(6, 5))
for target, color in [(2.4, "0.85"), (2.0, "0.6"), (1.8, "0.35"), (1.74, "0.1")]:
    contour = ic.render_locus(triangle, target, box, 512).boundary
    pts = ic.raster_points(contour)
    ax.scatter(pts[:, 0], pts[:, 1], s=1, color=color, label=f"sum = {target}")
ax.scatter(triangle[:, 0], triangle[:, 1], marker="^", color="red", zorder=3)
ax.set_aspect("equal")
ax.legend(markerscale=8, loc="upper right")
fig.savefig(out / "triangle_locus_family.png", dpi=120, bbox_inches="tight")
print(f"wrote triangle_locus*.pbm and triangle_locus_family.png under {out}")

# Two foci recover the classical ellipse: sum 4 around (0,0) and (1,0) has
# semi-axes 2 and sqrt(15)/2, so the rasterized area should match pi*a*b.
pair = ic.render_locus([(0.0, 0.0), (1.0, 0.0)], 4.0, ic.Box(-2, -2.2, 3, 2.2), 512)
area = pair.region.marked_count * pair.region.cell_size**2
print(f"two-focus area {area:.4f} vs analytic {math.pi * math.sqrt(15.0):.4f}")
