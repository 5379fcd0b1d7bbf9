"""Plane points, affine maps, contraction ratios, and fixed points.

Points are (x, y) pairs; point sets are float64 arrays of shape (n, 2).
Everything here is pure and side-effect free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import EmptyInput, InvalidRatio, SingularSystem

# Ratios above this are rejected as non-contractions so 1/(1 - ratio)
# stays well-conditioned.
MAX_CONTRACTION_RATIO = 1.0 - 1e-9

_SINGULAR_DET = 1e-12


class Box(NamedTuple):
    """Axis-aligned rectangle [x0, x1] x [y0, y1]."""

    x0: float
    y0: float
    x1: float
    y1: float

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0


@dataclass(frozen=True)
class AffineMap:
    """Planar affine map (x, y) -> (a*x + b*y + e, c*x + d*y + f)."""

    a: float
    b: float
    c: float
    d: float
    e: float = 0.0
    f: float = 0.0

    def __post_init__(self):
        coeffs = (self.a, self.b, self.c, self.d, self.e, self.f)
        if not all(math.isfinite(v) for v in coeffs):
            raise ValueError(f"affine coefficients must be finite, got {coeffs}")

    @property
    def linear(self) -> np.ndarray:
        """The 2x2 linear part [[a, b], [c, d]]."""
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def translation(self) -> np.ndarray:
        return np.array([self.e, self.f])

    @property
    def det(self) -> float:
        """Determinant of the linear part."""
        return self.a * self.d - self.b * self.c

    def __call__(self, points):
        return apply_affine(self, points)


def as_point_set(points, allow_empty=False) -> np.ndarray:
    """Coerce to a float64 (n, 2) array, rejecting empties unless allowed."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1 and pts.size == 2:
        pts = pts[None, :]
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) point array, got shape {pts.shape}")
    if len(pts) == 0 and not allow_empty:
        raise EmptyInput("point set is empty")
    return pts


def apply_affine(m: AffineMap, points):
    """Apply the map; a (2,) point maps to a (2,) point, (n, 2) to (n, 2)."""
    pts = np.asarray(points, dtype=np.float64)
    x = pts[..., 0]
    y = pts[..., 1]
    # Arithmetic exactly as written in the map definition.
    return np.stack([m.a * x + m.b * y + m.e, m.c * x + m.d * y + m.f], axis=-1)


def contraction_ratio(m: AffineMap) -> float:
    """Largest singular value of the linear part (tight Lipschitz constant).

    Closed form, no iterative decomposition: with q = |(a+d, c-b)| / 2 and
    r = |(a-d, c+b)| / 2 the singular values are q + r and |q - r|. This is
    algebraically the square root of the top Gram-matrix eigenvalue but
    avoids its cancellation, so similitudes come out exact to a few ulp.
    """
    q = math.hypot((m.a + m.d) / 2.0, (m.c - m.b) / 2.0)
    r = math.hypot((m.a - m.d) / 2.0, (m.c + m.b) / 2.0)
    return q + r


def fixed_point(m: AffineMap) -> np.ndarray:
    """Unique solution of (I - A) p = (e, f) by closed-form 2x2 solve."""
    m00 = 1.0 - m.a
    m01 = -m.b
    m10 = -m.c
    m11 = 1.0 - m.d
    det = m00 * m11 - m01 * m10
    if abs(det) < _SINGULAR_DET:
        raise SingularSystem(
            f"|det(I - A)| = {abs(det):.3e} < {_SINGULAR_DET}; map is not a "
            "contraction or is numerically degenerate"
        )
    x = (m11 * m.e - m01 * m.f) / det
    y = (m00 * m.f - m10 * m.e) / det
    return np.array([x, y])


def rotation_similitude(center, angle_rad: float, ratio: float) -> AffineMap:
    """Contraction x -> ratio * R(angle) * (x - center) + center.

    Positive angles rotate counterclockwise. The fixed point is the center
    and the contraction ratio is exactly ``ratio``.
    """
    if not (0.0 < ratio < 1.0):
        raise InvalidRatio(f"ratio must lie in (0, 1), got {ratio!r}")
    if not math.isfinite(angle_rad):
        raise ValueError(f"angle must be finite, got {angle_rad!r}")
    cx, cy = float(center[0]), float(center[1])
    cos = math.cos(angle_rad)
    sin = math.sin(angle_rad)
    a = ratio * cos
    b = -ratio * sin
    c = ratio * sin
    d = ratio * cos
    e = cx - (a * cx + b * cy)
    f = cy - (c * cx + d * cy)
    return AffineMap(a, b, c, d, e, f)


def compose(outer: AffineMap, inner: AffineMap) -> AffineMap:
    """The map outer(inner(x))."""
    return AffineMap(
        outer.a * inner.a + outer.b * inner.c,
        outer.a * inner.b + outer.b * inner.d,
        outer.c * inner.a + outer.d * inner.c,
        outer.c * inner.b + outer.d * inner.d,
        outer.a * inner.e + outer.b * inner.f + outer.e,
        outer.c * inner.e + outer.d * inner.f + outer.f,
    )
