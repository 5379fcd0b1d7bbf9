"""Invariant-region constants for the gallery systems, a sampled invariance
check, and the unit-disk region that fails it."""

import math

import ifs_chisel as ic

# Every system of contractions admits a distance-sum region B (foci at the
# fixed points, threshold M) with f_i(B) inside B for every map. Print the
# constants for the three builtins.
for name in ic.BUILTIN_NAMES:
    system = ic.builtin(name)
    region = ic.ellipse_params(system)
    foci = " ".join(f"({x:.4g}, {y:.4g})" for x, y in region.foci)
    print(f"{name}: N={system.n}  lambda={region.lambda_max:.4g}  "
          f"D={region.d_max:.4g}  M={region.m_threshold:.4g}  foci {foci}")

# Sample the two-rotation example's region and push every sample through
# both maps: no image may exceed the threshold.
system = ic.builtin("paper-example")
region = ic.ellipse_params(system)
report = ic.verify_invariance(system, region, 20_000, seed=1)
print()
print(report.to_text())

# A unit disk centered at the origin looks like a reasonable starting set,
# but the second rotation pushes part of it out: (0, 1) lands at norm ~1.13.
disk = ic.custom_region([(0.0, 0.0)], 1.0)
bad = ic.verify_invariance(system, disk, 5_000, seed=7)
escape = ic.apply_affine(system.maps[1], (0.0, 1.0))
print()
print(f"unit disk instead: passed={bad.passed}, worst slack {bad.worst_slack:.4f}")
print(f"second map sends (0, 1) to ({escape[0]:.4f}, {escape[1]:.4f}), "
      f"norm {math.hypot(*escape):.4f} > 1")
