from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Tuple, Union

from models.action_spec import GroupKind
from models.surd import ParameterError

Size = Union[int, Fraction, str]


class RegionShape(Enum):
    INTERVAL = "interval"
    BOX = "box"
    RANGE = "range"
    SYMMETRIC_INTERVAL = "symmetric_interval"
    SYMMETRIC_BOX = "symmetric_box"
    SYMMETRIC_RANGE = "symmetric_range"

    @property
    def dimension(self) -> int:
        return 2 if self in (RegionShape.BOX, RegionShape.SYMMETRIC_BOX) else 1

    @property
    def discrete(self) -> bool:
        return self in (RegionShape.RANGE, RegionShape.SYMMETRIC_RANGE)

    @property
    def symmetric(self) -> bool:
        return self.value.startswith("symmetric")

    @property
    def group(self) -> GroupKind:
        if self.discrete:
            return GroupKind.Z
        return GroupKind.R2 if self.dimension == 2 else GroupKind.R


@dataclass(frozen=True)
class FolnerRegion:
    """Interval, square box or integer range with an exact size parameter.

    Shapes and their sets:
      interval            [a, a+T]
      box                 [a, a+T]^2
      range               {a+1, ..., a+N}
      symmetric_interval  [-T, T]
      symmetric_box       [-T, T]^2
      symmetric_range     {-N, ..., N}
    """

    shape: RegionShape
    size: Fraction
    start: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "shape", RegionShape(self.shape))
        object.__setattr__(self, "size", Fraction(self.size))
        object.__setattr__(self, "start", Fraction(self.start))
        if self.size <= 0:
            raise ParameterError(f"Region size must be positive, got {self.size}")
        if self.shape.discrete and (self.size.denominator != 1 or self.start.denominator != 1):
            raise ParameterError("Integer ranges need integer size and start")
        if self.shape.symmetric and self.start != 0:
            raise ParameterError("Symmetric regions are centred at the origin")

    @classmethod
    def interval(cls, size: Size, start: Size = 0) -> "FolnerRegion":
        return cls(RegionShape.INTERVAL, Fraction(size), Fraction(start))

    @classmethod
    def box(cls, size: Size, start: Size = 0) -> "FolnerRegion":
        return cls(RegionShape.BOX, Fraction(size), Fraction(start))

    @classmethod
    def integer_range(cls, size: int, start: int = 0) -> "FolnerRegion":
        return cls(RegionShape.RANGE, Fraction(size), Fraction(start))

    @classmethod
    def symmetric(cls, shape: RegionShape, size: Size) -> "FolnerRegion":
        return cls(shape, Fraction(size))

    @property
    def dimension(self) -> int:
        return self.shape.dimension

    def axis_bounds(self) -> Tuple[Fraction, Fraction]:
        """Per-axis bounds: closed interval for continuous shapes, inclusive
        first/last integer for ranges."""
        if self.shape.symmetric:
            return -self.size, self.size
        if self.shape.discrete:
            return self.start + 1, self.start + self.size
        return self.start, self.start + self.size

    def side(self) -> Fraction:
        """Length (or cardinality) of one axis."""
        lo, hi = self.axis_bounds()
        return hi - lo + 1 if self.shape.discrete else hi - lo

    def measure(self) -> Fraction:
        return self.side() ** self.dimension

    def __str__(self) -> str:
        lo, hi = self.axis_bounds()
        if self.shape.discrete:
            return f"{{{lo}..{hi}}}"
        axis = f"[{lo}, {hi}]"
        return axis if self.dimension == 1 else f"{axis}^2"
