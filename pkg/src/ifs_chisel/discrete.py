"""Finite stand-ins for compact sets: point clouds, occupancy rasters, and
the Hausdorff metric between them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import binary_dilation
from scipy.spatial import cKDTree
from scipy.spatial.distance import cdist

from .errors import EmptyRaster, GridMismatch
from .geometry import Box, as_point_set

# Below this many point pairs the plain O(n*m) evaluation wins.
_BRUTE_PAIRS = 250_000
# Row chunk so the reference path never materializes a huge distance matrix.
_CHUNK_PAIRS = 4_000_000


@dataclass(frozen=True, eq=False)
class Raster:
    """Axis-aligned occupancy grid.

    ``origin`` is the min corner of cell (0, 0); cell (i, j) covers
    [origin_x + i*cell, origin_x + (i+1)*cell) x [origin_y + j*cell, ...).
    ``occupancy`` is a bool array of shape (height, width) with row 0 at
    minimal y. Instances are immutable; derive new grids instead.
    """

    origin: tuple
    cell_size: float
    occupancy: np.ndarray

    def __post_init__(self):
        occ = np.asarray(self.occupancy, dtype=bool)
        if occ.ndim != 2 or occ.size == 0:
            raise ValueError(f"occupancy must be a non-empty 2-d array, got {occ.shape}")
        if not (np.isfinite(self.cell_size) and self.cell_size > 0):
            raise ValueError(f"cell_size must be positive, got {self.cell_size!r}")
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))
        object.__setattr__(self, "occupancy", occ)
        occ.setflags(write=False)

    @property
    def width(self) -> int:
        return self.occupancy.shape[1]

    @property
    def height(self) -> int:
        return self.occupancy.shape[0]

    @property
    def marked_count(self) -> int:
        return int(self.occupancy.sum())

    def same_grid(self, other: "Raster") -> bool:
        return (
            self.origin == other.origin
            and self.cell_size == other.cell_size
            and self.occupancy.shape == other.occupancy.shape
        )

    def with_occupancy(self, occupancy) -> "Raster":
        return Raster(self.origin, self.cell_size, occupancy)

    def cell_centers(self) -> np.ndarray:
        """Centers of all cells, shape (height, width, 2)."""
        xs = self.origin[0] + (np.arange(self.width) + 0.5) * self.cell_size
        ys = self.origin[1] + (np.arange(self.height) + 0.5) * self.cell_size
        gx, gy = np.meshgrid(xs, ys)
        return np.stack([gx, gy], axis=-1)

    def __eq__(self, other):
        if not isinstance(other, Raster):
            return NotImplemented
        return self.same_grid(other) and bool(
            np.array_equal(self.occupancy, other.occupancy)
        )


def _directed_max_min(a: np.ndarray, b: np.ndarray) -> float:
    """max over a of min over b of d(p, q), row-chunked."""
    step = max(1, _CHUNK_PAIRS // len(b))
    worst = 0.0
    for lo in range(0, len(a), step):
        mins = cdist(a[lo : lo + step], b).min(axis=1)
        worst = max(worst, float(mins.max()))
    return worst


def hausdorff_distance_bruteforce(a, b) -> float:
    """Exact O(n*m) Hausdorff distance; the reference evaluation."""
    pa = as_point_set(a)
    pb = as_point_set(b)
    return max(_directed_max_min(pa, pb), _directed_max_min(pb, pa))


def hausdorff_distance(a, b, method: str = "auto") -> float:
    """Hausdorff distance max(sup_a inf_b, sup_b inf_a) between point sets.

    ``method`` is "auto", "bruteforce", or "kdtree". The kd-tree path is an
    accelerator only: it returns the identical value (nearest-neighbor
    queries are exact and 2-d squared distances are evaluated in the same
    order as the reference).
    """
    pa = as_point_set(a)
    pb = as_point_set(b)
    if method == "auto":
        method = "bruteforce" if len(pa) * len(pb) <= _BRUTE_PAIRS else "kdtree"
    if method == "bruteforce":
        return max(_directed_max_min(pa, pb), _directed_max_min(pb, pa))
    if method == "kdtree":
        d_ab = cKDTree(pb).query(pa, k=1)[0].max()
        d_ba = cKDTree(pa).query(pb, k=1)[0].max()
        return float(max(d_ab, d_ba))
    raise ValueError(f"unknown method {method!r}")


def rasterize_region(membership, box, resolution: int) -> Raster:
    """Cover ``box`` with square cells and mark those whose center satisfies
    the membership predicate.

    Cell size is max(width, height) / resolution. ``membership`` should
    accept an (n, 2) array and return n booleans; a scalar predicate
    (point -> bool) also works and is applied per center.
    """
    box = Box(*box)
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    if box.width <= 0 or box.height <= 0:
        raise ValueError(f"box must be non-degenerate, got {box}")
    cell = max(box.width, box.height) / resolution
    nx = int(np.ceil(box.width / cell - 1e-9))
    ny = int(np.ceil(box.height / cell - 1e-9))
    xs = box.x0 + (np.arange(nx) + 0.5) * cell
    ys = box.y0 + (np.arange(ny) + 0.5) * cell
    gx, gy = np.meshgrid(xs, ys)
    centers = np.column_stack([gx.ravel(), gy.ravel()])
    try:
        marks = np.asarray(membership(centers), dtype=bool)
        if marks.shape != (len(centers),):
            raise TypeError
    except (TypeError, ValueError):
        marks = np.fromiter(
            (bool(membership(p)) for p in centers), dtype=bool, count=len(centers)
        )
    return Raster((box.x0, box.y0), cell, marks.reshape(ny, nx))


def raster_points(raster: Raster) -> np.ndarray:
    """Centers of marked cells in row-major order (row 0 = minimal y)."""
    jj, ii = np.nonzero(raster.occupancy)
    if len(jj) == 0:
        raise EmptyRaster("raster has no marked cells")
    xs = raster.origin[0] + (ii + 0.5) * raster.cell_size
    ys = raster.origin[1] + (jj + 0.5) * raster.cell_size
    return np.column_stack([xs, ys])


def raster_subset(a: Raster, b: Raster, tol_cells: int) -> bool:
    """True iff every marked cell of a is within Chebyshev distance
    tol_cells of a marked cell of b. Grids must match exactly."""
    if not a.same_grid(b):
        raise GridMismatch(
            "rasters must share origin, cell size, and dimensions: "
            f"{a.origin}/{a.cell_size}/{a.occupancy.shape} vs "
            f"{b.origin}/{b.cell_size}/{b.occupancy.shape}"
        )
    if tol_cells < 0:
        raise ValueError(f"tol_cells must be >= 0, got {tol_cells}")
    covered = b.occupancy
    if tol_cells > 0:
        covered = binary_dilation(
            covered, structure=np.ones((3, 3), dtype=bool), iterations=tol_cells
        )
    return not bool(np.any(a.occupancy & ~covered))
