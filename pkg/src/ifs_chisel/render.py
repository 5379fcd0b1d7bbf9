"""Bit-exact file emission (plain PBM, points CSV) and the Maxwell
distance-sum locus renderer."""

from __future__ import annotations

import math
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .errors import IoFailure, ParseError
from .discrete import Raster, rasterize_region
from .geometry import as_point_set
from .region import distance_sum

PBM_COMMENT = "# ifs-chisel"

# 35 one-character cell tokens joined by spaces is 69 characters, the widest
# line that stays within the 70-character PBM limit.
_CELLS_PER_LINE = 35


def format_float(value) -> str:
    """Shortest decimal that parses back to the identical float.

    Integral values drop the trailing ".0" (1.0 -> "1"); everything else is
    repr, which Python guarantees to round-trip.
    """
    v = float(value)
    if v == 0.0:
        return "-0" if math.copysign(1.0, v) < 0 else "0"
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _write_bytes(data: bytes, out) -> None:
    try:
        if hasattr(out, "write"):
            out.write(data)
        else:
            Path(out).write_bytes(data)
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def pbm_bytes(raster: Raster) -> bytes:
    """Plain PBM ("P1") encoding of a raster.

    Layout is fixed so files are byte-exact: magic line, the comment line
    "# ifs-chisel", "W H", then rows top-to-bottom (maximal y first) with
    cells left-to-right, "1" for marked, space-separated, wrapped at 35
    cells (69 characters) per line, trailing newline.
    """
    occ = raster.occupancy
    lines = ["P1", PBM_COMMENT, f"{raster.width} {raster.height}"]
    for j in range(raster.height - 1, -1, -1):
        tokens = ["1" if v else "0" for v in occ[j]]
        for lo in range(0, len(tokens), _CELLS_PER_LINE):
            lines.append(" ".join(tokens[lo : lo + _CELLS_PER_LINE]))
    return ("\n".join(lines) + "\n").encode("ascii")


def write_pbm(raster: Raster, out) -> None:
    """Write pbm_bytes to a binary sink or path."""
    _write_bytes(pbm_bytes(raster), out)


def parse_pbm(data, origin=(0.0, 0.0), cell_size: float = 1.0) -> Raster:
    """Parse plain PBM text back into a raster.

    PBM itself carries no geometry, so the grid placement is supplied by the
    caller (defaults: origin (0, 0), unit cells).
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("ascii")
        except UnicodeDecodeError as exc:
            raise ParseError(f"PBM is not ASCII: {exc}") from exc
    tokens = []
    for line in data.splitlines():
        stripped = line.strip()
        if stripped.startswith("#"):
            continue
        tokens.extend(stripped.split())
    if not tokens or tokens[0] != "P1":
        raise ParseError('expected plain PBM starting with "P1"')
    try:
        width, height = int(tokens[1]), int(tokens[2])
        bits = [int(t) for t in tokens[3:]]
    except (IndexError, ValueError) as exc:
        raise ParseError(f"malformed PBM header or payload: {exc}") from exc
    if width <= 0 or height <= 0:
        raise ParseError(f"bad dimensions {width} x {height}")
    if len(bits) != width * height or any(b not in (0, 1) for b in bits):
        raise ParseError(
            f"expected {width * height} 0/1 cells, got {len(bits)} tokens"
        )
    rows = np.array(bits, dtype=bool).reshape(height, width)
    # File rows run top-to-bottom; occupancy row 0 sits at minimal y.
    return Raster(origin, cell_size, rows[::-1])


def points_csv_bytes(points) -> bytes:
    """CSV with header "x,y" and one row per point in set order."""
    pts = as_point_set(points, allow_empty=True)
    lines = ["x,y"]
    for x, y in pts:
        lines.append(f"{format_float(x)},{format_float(y)}")
    return ("\n".join(lines) + "\n").encode("ascii")


def write_points_csv(points, out) -> None:
    """Write points_csv_bytes to a binary sink or path."""
    _write_bytes(points_csv_bytes(points), out)


def read_points_csv(source) -> np.ndarray:
    """Parse a points CSV (bytes, str, or path) back into an (n, 2) array."""
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str) and "\n" in source:
        text = source
    elif hasattr(source, "read"):
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise IoFailure(str(exc)) from exc
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "x,y":
        raise ParseError('points CSV must start with the header "x,y"')
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 2:
            raise ParseError(f"expected two comma-separated values, got {ln!r}")
        try:
            rows.append((float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise ParseError(f"bad number in row {ln!r}: {exc}") from exc
    return np.array(rows, dtype=np.float64).reshape(len(rows), 2)


class LocusRasters(NamedTuple):
    """Region raster plus the cells where membership flips against a
    4-neighbor (both sides of the contour)."""

    region: Raster
    boundary: Raster


def render_locus(foci, total: float, box, resolution: int) -> LocusRasters:
    """Rasterize the locus of points with distance-sum to ``foci`` at most
    ``total``, plus its 4-neighbor boundary cells."""
    f = as_point_set(foci)
    if not (math.isfinite(total) and total >= 0.0):
        raise ValueError(f"distance sum must be finite and >= 0, got {total!r}")
    region = rasterize_region(
        lambda pts: distance_sum(f, pts) <= total, box, resolution
    )
    occ = region.occupancy
    edge = np.zeros_like(occ)
    horizontal = occ[:, 1:] != occ[:, :-1]
    vertical = occ[1:, :] != occ[:-1, :]
    edge[:, 1:] |= horizontal
    edge[:, :-1] |= horizontal
    edge[1:, :] |= vertical
    edge[:-1, :] |= vertical
    return LocusRasters(region, region.with_occupancy(edge))
