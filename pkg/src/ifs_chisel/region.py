"""The invariant multi-foci ellipse: construction, membership, sampling,
and verification that every map sends the region into itself.

For a system with ratios lambda_i and fixed points a_i, the region is the
distance-sum sub-level set { x : sum_j d(x, a_j) <= M } with
M = (1 + lambda) / (1 - lambda) * D, where lambda = max_i lambda_i,
D_i = sum_j d(a_i, a_j) and D = max_i D_i. Every f_i maps this set into
itself, which is what verify_invariance checks numerically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRegion
from .geometry import Box, apply_affine, as_point_set
from .ifs import IfsSystem
from .rng import uniform01

_REJECTION_LIMIT = 1_000_000
_CHUNK = 1 << 14


@dataclass(frozen=True, eq=False)
class InvariantEllipse:
    """Distance-sum region with foci (n, 2), threshold M, and the lambda/D
    values it was derived from (NaN lambda for hand-built regions)."""

    foci: np.ndarray
    m_threshold: float
    lambda_max: float
    d_max: float

    def __post_init__(self):
        foci = as_point_set(self.foci).copy()
        object.__setattr__(self, "foci", foci)
        foci.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.foci)


def _pairwise_distance_sums(foci: np.ndarray) -> np.ndarray:
    diff = foci[:, None, :] - foci[None, :, :]
    return np.hypot(diff[..., 0], diff[..., 1]).sum(axis=1)


def ellipse_params(system: IfsSystem) -> InvariantEllipse:
    """Invariant region constants for a system: foci, lambda, D, and M."""
    foci = system.fixed_points
    d_max = float(_pairwise_distance_sums(foci).max())
    lam = system.lambda_max
    m = (1.0 + lam) / (1.0 - lam) * d_max
    return InvariantEllipse(foci=foci, m_threshold=m, lambda_max=lam, d_max=d_max)


def custom_region(foci, threshold: float) -> InvariantEllipse:
    """A hand-built distance-sum region, e.g. a disk from a single focus.

    lambda_max is NaN because no system produced the threshold; d_max is
    still the max row sum of pairwise focus distances.
    """
    f = as_point_set(foci)
    if not (math.isfinite(threshold) and threshold >= 0.0):
        raise ValueError(f"threshold must be finite and >= 0, got {threshold!r}")
    d_max = float(_pairwise_distance_sums(f).max())
    return InvariantEllipse(
        foci=f, m_threshold=float(threshold), lambda_max=math.nan, d_max=d_max
    )


def distance_sum(foci, points):
    """Sum of Euclidean distances from each point to the foci, in focus order.

    A single (x, y) point gives a float; an (n, 2) array gives an (n,) array.
    """
    f = as_point_set(foci)
    pts = np.asarray(points, dtype=np.float64)
    scalar = pts.ndim == 1
    pts = as_point_set(pts, allow_empty=True)
    total = np.zeros(len(pts))
    for fx, fy in f:
        total += np.hypot(pts[:, 0] - fx, pts[:, 1] - fy)
    return float(total[0]) if scalar else total


def contains(region: InvariantEllipse, points):
    """Membership test distance_sum <= M, exact comparison with no slack."""
    return distance_sum(region.foci, points) <= region.m_threshold


def bounding_box(region: InvariantEllipse) -> Box:
    """Intersection of the per-focus squares [a_i +- M]; contains the region
    because the distance sum dominates each single distance."""
    m = region.m_threshold
    fx = region.foci[:, 0]
    fy = region.foci[:, 1]
    return Box(
        float(fx.max() - m),
        float(fy.max() - m),
        float(fx.min() + m),
        float(fy.min() + m),
    )


def sample_points(region: InvariantEllipse, n: int, seed: int) -> np.ndarray:
    """n points uniform over the region by rejection inside its bounding box.

    Attempt k consumes splitmix64 stream outputs 2k and 2k+1 (x then y), so
    the result depends only on (n, seed). Raises DegenerateRegion after
    1e6 consecutive rejections, which signals a region of (numerically)
    zero area.
    """
    if n < 1:
        raise ValueError(f"need n >= 1 samples, got {n}")
    if region.m_threshold <= 0.0:
        return np.repeat(region.foci[:1], n, axis=0)
    box = bounding_box(region)
    if box.width <= 0.0 or box.height <= 0.0:
        raise DegenerateRegion(
            f"bounding box {box} has no area; threshold too small for the foci"
        )
    out = np.empty((n, 2))
    got = 0
    cursor = 0  # attempts consumed so far
    consecutive = 0
    while got < n:
        u = uniform01(seed, 2 * cursor, 2 * _CHUNK).reshape(_CHUNK, 2)
        pts = np.empty_like(u)
        pts[:, 0] = box.x0 + u[:, 0] * box.width
        pts[:, 1] = box.y0 + u[:, 1] * box.height
        accept = np.flatnonzero(distance_sum(region.foci, pts) <= region.m_threshold)
        if accept.size == 0:
            consecutive += _CHUNK
        else:
            if consecutive + accept[0] >= _REJECTION_LIMIT:
                consecutive += int(accept[0])
                break
            take = accept[: n - got]
            out[got : got + len(take)] = pts[take]
            got += len(take)
            consecutive = _CHUNK - 1 - int(accept[-1])
        cursor += _CHUNK
        if consecutive >= _REJECTION_LIMIT:
            break
    if got < n:
        raise DegenerateRegion(
            f"{consecutive} consecutive rejections; region has numerically no area"
        )
    return out


@dataclass(frozen=True)
class InvarianceReport:
    """Outcome of verify_invariance."""

    passed: bool
    worst_slack: float
    n: int
    seed: int
    per_map_worst: tuple
    tolerance: float
    m_threshold: float
    worst_map: int
    worst_point: tuple
    chain_bound: float

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "worst_slack": self.worst_slack,
            "n": self.n,
            "seed": self.seed,
            "per_map_worst": list(self.per_map_worst),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        lines = [
            f"invariance check: {'PASS' if self.passed else 'FAIL'}",
            f"  threshold M = {self.m_threshold:.12g}",
            f"  samples: {self.n} (seed {self.seed})",
            f"  worst slack: {self.worst_slack:.6g} (tolerance {self.tolerance:.6g})",
            f"  worst map: {self.worst_map} at point "
            f"({self.worst_point[0]:.12g}, {self.worst_point[1]:.12g})",
            f"  chain bound at worst sample: {self.chain_bound:.12g}",
            "  per-map worst slack: "
            + " ".join(f"{v:.6g}" for v in self.per_map_worst),
        ]
        return "\n".join(lines)


def verify_invariance(
    system: IfsSystem, region: InvariantEllipse, n: int, seed: int
) -> InvarianceReport:
    """Sample the region, apply every map, and measure threshold violations.

    The reported slack is max over samples and maps of
    distance_sum(f_i(x)) - M; the check passes iff it stays within
    1e-9 * (1 + M). The report also carries the chain bound
    lambda * sum_j d(x, a_j) + (lambda + 1) * D_i evaluated at the worst
    (sample, map) pair, the quantity that proves invariance when the region
    comes from ellipse_params.
    """
    samples = sample_points(region, n, seed)
    sums_at_samples = distance_sum(region.foci, samples)
    m = region.m_threshold
    per_map = []
    worst = -math.inf
    worst_map = 0
    worst_idx = 0
    for i, f in enumerate(system.maps):
        images = apply_affine(f, samples)
        slack = distance_sum(region.foci, images) - m
        j = int(np.argmax(slack))
        per_map.append(float(slack[j]))
        if slack[j] > worst:
            worst = float(slack[j])
            worst_map = i
            worst_idx = j
    tolerance = 1e-9 * (1.0 + m)
    lam = system.lambda_max
    d_i = distance_sum(region.foci, system.fixed_points[worst_map])
    chain = lam * float(sums_at_samples[worst_idx]) + (lam + 1.0) * d_i
    return InvarianceReport(
        passed=worst <= tolerance,
        worst_slack=worst,
        n=n,
        seed=seed,
        per_map_worst=tuple(per_map),
        tolerance=tolerance,
        m_threshold=m,
        worst_map=worst_map,
        worst_point=(float(samples[worst_idx, 0]), float(samples[worst_idx, 1])),
        chain_bound=chain,
    )
