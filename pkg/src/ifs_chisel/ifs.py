"""IFS container, JSON (de)serialization, the Hutchinson operator, and a
gallery of classic systems."""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import EmptySystem, NotAContraction, ParseError, UnknownName
from .geometry import (
    MAX_CONTRACTION_RATIO,
    AffineMap,
    apply_affine,
    as_point_set,
    contraction_ratio,
    fixed_point,
    rotation_similitude,
)

_AFFINE_KEYS = {"kind", "a", "b", "c", "d", "e", "f"}
_SIMILITUDE_KEYS = {"kind", "center", "angle_rad", "ratio"}


class IfsSystem:
    """Ordered list of validated affine contractions.

    Construction computes and caches each map's contraction ratio and fixed
    point; instances are immutable by convention and freely shareable.
    """

    def __init__(self, maps):
        maps = tuple(maps)
        if not maps:
            raise EmptySystem("an IFS needs at least one map")
        ratios = []
        for i, m in enumerate(maps):
            r = contraction_ratio(m)
            if r > MAX_CONTRACTION_RATIO:
                raise NotAContraction(i, r)
            ratios.append(r)
        self.maps = maps
        self.ratios = np.array(ratios)
        self.fixed_points = np.array([fixed_point(m) for m in maps])
        self.fixed_points.setflags(write=False)
        self.ratios.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.maps)

    @property
    def lambda_max(self) -> float:
        return float(self.ratios.max())

    def __len__(self):
        return len(self.maps)

    def __repr__(self):
        return f"IfsSystem(n={self.n}, lambda_max={self.lambda_max:.6g})"


def _require_number(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ParseError(f"{where}: value must be finite, got {value!r}")
    return float(value)


def _map_from_entry(entry, index):
    where = f"maps[{index}]"
    if not isinstance(entry, dict):
        raise ParseError(f"{where}: expected an object, got {type(entry).__name__}")
    kind = entry.get("kind")
    if kind == "affine":
        if set(entry) != _AFFINE_KEYS:
            raise ParseError(
                f"{where}: affine entry must have exactly keys "
                f"{sorted(_AFFINE_KEYS)}, got {sorted(entry)}"
            )
        coeffs = [_require_number(entry[k], f"{where}.{k}") for k in "abcdef"]
        return AffineMap(*coeffs)
    if kind == "similitude":
        if set(entry) != _SIMILITUDE_KEYS:
            raise ParseError(
                f"{where}: similitude entry must have exactly keys "
                f"{sorted(_SIMILITUDE_KEYS)}, got {sorted(entry)}"
            )
        center = entry["center"]
        if not isinstance(center, list) or len(center) != 2:
            raise ParseError(f"{where}.center: expected [x, y], got {center!r}")
        cx = _require_number(center[0], f"{where}.center[0]")
        cy = _require_number(center[1], f"{where}.center[1]")
        angle = _require_number(entry["angle_rad"], f"{where}.angle_rad")
        ratio = _require_number(entry["ratio"], f"{where}.ratio")
        if ratio <= 0.0:
            raise ParseError(f"{where}.ratio: must be positive, got {ratio!r}")
        if ratio >= 1.0:
            raise NotAContraction(index, ratio)
        return rotation_similitude((cx, cy), angle, ratio)
    raise ParseError(f"{where}: unknown kind {kind!r}")


def parse_ifs(text) -> IfsSystem:
    """Parse the IFS JSON schema (UTF-8 bytes or str) into a system.

    Schema: {"maps": [affine-or-similitude, ...]} where an affine entry is
    {"kind": "affine", "a": .., "b": .., "c": .., "d": .., "e": .., "f": ..}
    and a similitude entry is {"kind": "similitude", "center": [x, y],
    "angle_rad": .., "ratio": ..} (radians, counterclockwise positive).
    Unknown keys are rejected; map order is preserved.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"document is not UTF-8: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or set(doc) != {"maps"}:
        raise ParseError('top level must be an object with exactly the key "maps"')
    entries = doc["maps"]
    if not isinstance(entries, list):
        raise ParseError('"maps" must be a list')
    if not entries:
        raise EmptySystem("maps list is empty")
    return IfsSystem(_map_from_entry(entry, i) for i, entry in enumerate(entries))


def serialize_ifs(system: IfsSystem) -> bytes:
    """Emit the affine-form schema; parse_ifs round-trips coefficients exactly."""
    doc = {
        "maps": [
            {"kind": "affine", "a": m.a, "b": m.b, "c": m.c, "d": m.d, "e": m.e, "f": m.f}
            for m in system.maps
        ]
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def hutchinson(system: IfsSystem, points, dedup=None) -> np.ndarray:
    """One application of F(B) = f1(B) | f2(B) | ... | fN(B).

    Images are concatenated in map order with no deduplication, so the
    result has exactly N * len(points) rows. Passing ``dedup`` (a grid
    quantum) collapses points that share a dedup cell, keeping the first.
    """
    pts = as_point_set(points)
    out = np.concatenate([apply_affine(m, pts) for m in system.maps], axis=0)
    if dedup is not None:
        out = quantize_dedup(out, dedup)
    return out


def quantize_dedup(points, quantum) -> np.ndarray:
    """Keep the first point of every occupied quantum x quantum grid cell.

    Retained coordinates are the original ones, not snapped values, so the
    output is a subset of the input; any dropped point lies within
    quantum * sqrt(2) of a kept one.
    """
    if quantum <= 0:
        raise ValueError(f"dedup quantum must be positive, got {quantum!r}")
    pts = as_point_set(points, allow_empty=True)
    if len(pts) == 0:
        return pts
    keys = np.floor(pts / quantum).astype(np.int64)
    _, first = np.unique(keys, axis=0, return_index=True)
    return pts[np.sort(first)]


def _cantor() -> IfsSystem:
    third = 1.0 / 3.0
    return IfsSystem(
        [
            AffineMap(third, 0.0, 0.0, third, 0.0, 0.0),
            AffineMap(third, 0.0, 0.0, third, 2.0 / 3.0, 0.0),
        ]
    )


def _sierpinski() -> IfsSystem:
    vertices = [(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3.0) / 2.0)]
    return IfsSystem(
        AffineMap(0.5, 0.0, 0.0, 0.5, vx / 2.0, vy / 2.0) for vx, vy in vertices
    )


def _paper_example() -> IfsSystem:
    return IfsSystem(
        [
            rotation_similitude((0.0, 0.0), math.pi / 6.0, 0.5),
            rotation_similitude((1.0, 0.0), -math.pi / 6.0, 0.6),
        ]
    )


_BUILTINS = {
    "cantor": _cantor,
    "sierpinski": _sierpinski,
    "paper-example": _paper_example,
}

BUILTIN_NAMES = tuple(sorted(_BUILTINS))


def builtin(name: str) -> IfsSystem:
    """Gallery systems: cantor, sierpinski, paper-example.

    cantor: the two middle-third maps x/3 and x/3 + 2/3 on the x-axis.
    sierpinski: three ratio-1/2 homotheties toward the vertices of the unit
    equilateral triangle with base (0,0)-(1,0).
    paper-example: ratio-1/2 rotation by pi/6 ccw about the origin paired
    with a ratio-3/5 rotation by pi/6 cw about (1, 0).
    """
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise UnknownName(
            f"unknown builtin {name!r}; choose from {', '.join(BUILTIN_NAMES)}"
        ) from None
    return factory()
