"""Exception types shared across the package."""


class ChiselError(Exception):
    """Base class for every error raised by ifs_chisel."""


class SingularSystem(ChiselError):
    """A 2x2 linear solve was requested on a (near-)singular matrix."""


class InvalidRatio(ChiselError):
    """A similitude ratio fell outside the open interval (0, 1)."""


class ParseError(ChiselError):
    """A serialized document (IFS JSON, CSV, PBM) could not be decoded."""


class NotAContraction(ChiselError):
    """A map inside an IFS has contraction ratio too close to or above 1."""

    def __init__(self, index, ratio):
        super().__init__(
            f"map {index} has contraction ratio {ratio!r}; must be <= 1 - 1e-9"
        )
        self.index = index
        self.ratio = ratio


class EmptySystem(ChiselError):
    """An IFS needs at least one map."""


class EmptyInput(ChiselError):
    """A non-empty point set was required."""


class UnknownName(ChiselError):
    """No builtin system is registered under the requested name."""


class DegenerateRegion(ChiselError):
    """Rejection sampling starved: the region has (numerically) no area."""


class EmptyRaster(ChiselError):
    """A raster with at least one marked cell was required."""


class GridMismatch(ChiselError):
    """Two rasters do not share origin, cell size, and dimensions."""


class ResourceLimit(ChiselError):
    """An iteration would exceed the configured point budget.

    Enable quantized dedup or reduce the stage count.
    """


class NonInvertibleMap(ChiselError):
    """A deletion step needed the inverse of a rank-deficient map."""


class EmptyStage(ChiselError):
    """Deletion iteration lost every cell; the grid is too coarse."""


class DegenerateTrace(ChiselError):
    """Consecutive distances collapsed to zero and then grew again."""


class IoFailure(ChiselError):
    """Writing or reading an artifact file failed."""
