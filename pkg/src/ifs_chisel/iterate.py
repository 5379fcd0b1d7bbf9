"""The two attractor pipelines: forward Hausdorff iteration on point sets
and monotone deletion iteration on rasters, plus convergence diagnostics.

Forward iteration applies F repeatedly to a finite seed set; the stages
converge to the attractor in the Hausdorff metric at rate lambda_max.
Deletion iteration starts from a raster of an invariant region and keeps,
at each step, the cells that some map pulls back into the previous stage;
the stages form a (numerically) nested chain shrinking onto the attractor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.ndimage import binary_dilation

from .errors import DegenerateTrace, EmptyRaster, EmptyStage, ResourceLimit
from .geometry import apply_affine, as_point_set
from .ifs import IfsSystem, hutchinson
from .discrete import Raster, hausdorff_distance, raster_points, raster_subset
from .render import format_float

DEFAULT_POINT_CAP = 1 << 24

_ZERO_DISTANCE = 1e-12
_SINGULAR_DET = 1e-12


@dataclass
class IterationTrace:
    """Stages of an iteration run with per-step diagnostics.

    ``stages[0]`` is the seed; ``consecutive_hausdorff[k]`` is the distance
    between stages k and k+1 (cell centers for rasters). ``nesting_ok`` is
    populated in deletion mode only: stage k+1 against stage k at 1-cell
    tolerance.
    """

    mode: str
    stages: list
    consecutive_hausdorff: list = field(default_factory=list)
    nesting_ok: list | None = None

    def sizes(self) -> list:
        if self.mode == "forward":
            return [len(s) for s in self.stages]
        return [s.marked_count for s in self.stages]


def forward_iterate(
    system: IfsSystem, seed, n: int, dedup=None, max_points: int = DEFAULT_POINT_CAP
) -> IterationTrace:
    """Stages seed, F(seed), ..., F^n(seed) with consecutive distances.

    Without dedup stage k has exactly N**k * len(seed) points; the run is
    refused up front with ResourceLimit if the final stage would exceed
    ``max_points``. With a dedup quantum the budget is checked stage by
    stage instead.
    """
    pts = as_point_set(seed)
    if n < 0:
        raise ValueError(f"need n >= 0 iterations, got {n}")
    if dedup is None and system.n**n * len(pts) > max_points:
        raise ResourceLimit(
            f"{system.n}**{n} * {len(pts)} points exceeds the cap {max_points}; "
            "enable dedup or reduce n"
        )
    stages = [pts]
    distances = []
    for _ in range(n):
        if system.n * len(stages[-1]) > max_points:
            raise ResourceLimit(
                f"next stage would exceed the cap {max_points} points"
            )
        nxt = hutchinson(system, stages[-1], dedup=dedup)
        distances.append(hausdorff_distance(stages[-1], nxt))
        stages.append(nxt)
    return IterationTrace("forward", stages, distances)


def _pullback_marks(m, det, centers_flat, prev: Raster) -> np.ndarray:
    """Cells whose center maps back under f^-1 into a marked cell of prev."""
    ox, oy = prev.origin
    cell = prev.cell_size
    px = centers_flat[:, 0] - m.e
    py = centers_flat[:, 1] - m.f
    qx = (m.d * px - m.b * py) / det
    qy = (-m.c * px + m.a * py) / det
    ii = np.floor((qx - ox) / cell).astype(np.int64)
    jj = np.floor((qy - oy) / cell).astype(np.int64)
    ok = (ii >= 0) & (ii < prev.width) & (jj >= 0) & (jj < prev.height)
    hit = np.zeros(len(centers_flat), dtype=bool)
    hit[ok] = prev.occupancy[jj[ok], ii[ok]]
    return hit


def _pushforward_marks(m, prev: Raster) -> np.ndarray:
    """Fallback for rank-deficient maps: forward-map marked centers and
    dilate by one cell to cover the squeezed image."""
    img = apply_affine(m, raster_points(prev))
    ox, oy = prev.origin
    cell = prev.cell_size
    ii = np.floor((img[:, 0] - ox) / cell).astype(np.int64)
    jj = np.floor((img[:, 1] - oy) / cell).astype(np.int64)
    ok = (ii >= 0) & (ii < prev.width) & (jj >= 0) & (jj < prev.height)
    grid = np.zeros(prev.occupancy.shape, dtype=bool)
    grid[jj[ok], ii[ok]] = True
    grid = binary_dilation(grid, structure=np.ones((3, 3), dtype=bool))
    return grid.ravel()


def deletion_iterate(system: IfsSystem, b0: Raster, n: int) -> IterationTrace:
    """Chisel n stages out of b0: stage k+1 keeps the cells some map pulls
    back into stage k.

    Each map with an invertible linear part is stepped by inverse mapping
    (cell kept iff f^-1 of its center lands in a marked cell); rank-deficient
    maps fall back to forward mapping with a 1-cell dilation. All stages
    share b0's grid; nesting against the predecessor is checked at 1-cell
    tolerance and recorded, and EmptyStage is raised if every cell is lost
    (resolution too coarse for the contraction ratios).
    """
    if n < 0:
        raise ValueError(f"need n >= 0 iterations, got {n}")
    if b0.marked_count == 0:
        raise EmptyRaster("starting raster has no marked cells")
    dets = [m.det for m in system.maps]
    centers_flat = b0.cell_centers().reshape(-1, 2)
    stages = [b0]
    distances = []
    nesting = []
    prev_points = raster_points(b0)
    for k in range(n):
        prev = stages[-1]
        hit = np.zeros(len(centers_flat), dtype=bool)
        for m, det in zip(system.maps, dets):
            if abs(det) > _SINGULAR_DET:
                hit |= _pullback_marks(m, det, centers_flat, prev)
            else:
                hit |= _pushforward_marks(m, prev)
        occ = hit.reshape(prev.occupancy.shape)
        if not occ.any():
            raise EmptyStage(f"stage {k + 1} lost every cell; raise the resolution")
        stage = prev.with_occupancy(occ)
        nesting.append(raster_subset(stage, prev, 1))
        points = raster_points(stage)
        distances.append(hausdorff_distance(points, prev_points))
        prev_points = points
        stages.append(stage)
    return IterationTrace("deletion", stages, distances, nesting)


@dataclass(frozen=True)
class ConvergenceReport:
    """Consecutive-distance ratios of a trace against the expected rate."""

    ratios: tuple
    passed: bool
    converged: bool
    lambda_max: float
    slack: float
    mode: str

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        if self.converged:
            status += " (converged)"
        ratios = " ".join(f"{r:.4f}" for r in self.ratios) or "-"
        return (
            f"convergence: {status}\n"
            f"  bound: lambda_max + slack = {self.lambda_max:.6g} + {self.slack:.6g}\n"
            f"  ratios: {ratios}"
        )


def convergence_report(trace: IterationTrace, lambda_max: float) -> ConvergenceReport:
    """Check that consecutive Hausdorff distances shrink at rate lambda_max.

    Ratios r_k = d(k+1)/d(k) must stay within lambda_max plus a slack of
    0.05 (plus one cell size in deletion mode, where distances live on cell
    centers). Once a distance falls below 1e-12 the tail must stay there;
    the trace is then reported converged with ratios computed only up to
    that point. A rebound after a collapsed distance raises DegenerateTrace.
    """
    if len(trace.stages) < 3:
        raise ValueError(f"need at least 3 stages, got {len(trace.stages)}")
    d = [float(v) for v in trace.consecutive_hausdorff]
    slack = 0.05
    if trace.mode == "deletion":
        slack += trace.stages[0].cell_size
    ratios = []
    converged = False
    for k in range(1, len(d)):
        if d[k - 1] < _ZERO_DISTANCE:
            tail = d[k - 1 :]
            if any(v >= _ZERO_DISTANCE for v in tail):
                raise DegenerateTrace(
                    f"distance collapsed below {_ZERO_DISTANCE} at step {k - 1} "
                    "but grew again"
                )
            converged = True
            break
        ratios.append(d[k] / d[k - 1])
    passed = all(r <= lambda_max + slack for r in ratios)
    return ConvergenceReport(
        ratios=tuple(ratios),
        passed=passed,
        converged=converged,
        lambda_max=float(lambda_max),
        slack=slack,
        mode=trace.mode,
    )


def attractor_estimate(
    system: IfsSystem, eps: float, seed, max_points: int = DEFAULT_POINT_CAP
) -> np.ndarray:
    """A point set within Hausdorff distance eps of the attractor.

    Runs F^n from the singleton seed with n chosen by the a-priori bound
    lambda**n / (1 - lambda) * d({seed}, F({seed})) <= eps, deduplicating
    every stage on an eps/4 grid to bound the population. Dedup keeps
    original coordinates (first point per grid cell), so retained points
    are exact stage points.
    """
    if not (eps > 0.0 and math.isfinite(eps)):
        raise ValueError(f"eps must be positive and finite, got {eps!r}")
    p0 = np.asarray(seed, dtype=np.float64).reshape(2)
    images = hutchinson(system, p0[None, :])
    d0 = float(np.hypot(images[:, 0] - p0[0], images[:, 1] - p0[1]).max())
    if d0 == 0.0:
        # Every map fixes the seed, so {seed} already is the attractor.
        return p0[None, :].copy()
    lam = system.lambda_max
    target = eps * (1.0 - lam) / d0
    if target >= 1.0:
        steps = 0
    else:
        steps = max(0, math.ceil(math.log(target) / math.log(lam)))
        while lam**steps * d0 / (1.0 - lam) > eps:
            steps += 1
        while steps > 0 and lam ** (steps - 1) * d0 / (1.0 - lam) <= eps:
            steps -= 1
    current = p0[None, :]
    for _ in range(steps):
        if system.n * len(current) > max_points:
            raise ResourceLimit(
                f"next stage would exceed the cap {max_points} points"
            )
        current = hutchinson(system, current, dedup=eps / 4.0)
    return current


def trace_csv(trace: IterationTrace) -> str:
    """One CSV row per stage: index, size, distance to predecessor, nesting."""
    lines = ["stage,size,hausdorff_to_prev,nested"]
    sizes = trace.sizes()
    for k, size in enumerate(sizes):
        dist = "" if k == 0 else format_float(trace.consecutive_hausdorff[k - 1])
        if trace.nesting_ok is None or k == 0:
            nested = ""
        else:
            nested = "1" if trace.nesting_ok[k - 1] else "0"
        lines.append(f"{k},{size},{dist},{nested}")
    return "\n".join(lines) + "\n"
