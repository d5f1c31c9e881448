from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple, Union

from models.action_spec import ActionSpec, GroupKind
from models.dual_system import DualSystemConfig
from models.folner_region import FolnerRegion, RegionShape
from models.group_observable import GroupObservable
from models.state_functional import FunctionalKind, StateFunctional
from models.surd import ParameterError, SurdScalar
from models.tensor_element import TensorElement
from models.torus_element import TorusElement

Element = Union[TorusElement, TensorElement]

RESULT_COLUMNS = ("size", "re_value", "im_value", "re_limit", "im_limit", "abs_error")


class SystemKind(Enum):
    QTORUS = "qtorus"
    QTORUS_PAIR = "qtorus_pair"
    QTORUS_MIRROR = "qtorus_mirror"
    GROUP_DUAL = "group_dual"

    @property
    def default_group(self) -> GroupKind:
        if self is SystemKind.QTORUS_MIRROR:
            return GroupKind.R
        if self is SystemKind.GROUP_DUAL:
            return GroupKind.Z
        return GroupKind.R2

    @property
    def tensor(self) -> bool:
        return self in (SystemKind.QTORUS_PAIR, SystemKind.QTORUS_MIRROR)


@dataclass(frozen=True)
class SystemSection:
    kind: SystemKind
    group: GroupKind
    theta1: SurdScalar = SurdScalar()
    theta2: SurdScalar = SurdScalar()
    p: SurdScalar = SurdScalar(Fraction(1))
    q: SurdScalar = SurdScalar(Fraction(1))
    c: Optional[SurdScalar] = None
    d: Optional[SurdScalar] = None
    dual: Optional[DualSystemConfig] = None

    def __post_init__(self):
        if self.kind is SystemKind.QTORUS_MIRROR and self.theta2 != -self.theta1:
            raise ParameterError(
                f"qtorus_mirror needs theta2 = -theta1, got {self.theta1} and {self.theta2}"
            )
        if self.kind.tensor and self.c is None:
            raise ParameterError(f"{self.kind.value} needs right-factor multipliers c and d")
        if self.kind is SystemKind.GROUP_DUAL and self.dual is None:
            raise ParameterError("group_dual needs s1_size and cycle declarations")

    def action_spec(self) -> ActionSpec:
        if self.kind is SystemKind.GROUP_DUAL:
            raise ParameterError("group_dual systems act by automorphisms, not characters")
        if self.kind.tensor:
            return ActionSpec.pair(self.p, self.q, self.c, self.d, group=self.group)
        return ActionSpec.torus(self.p, self.q, group=self.group)


@dataclass(frozen=True)
class FolnerSection:
    shape: RegionShape
    sizes: Tuple[Fraction, ...]
    start: Fraction = Fraction(0)

    def __post_init__(self):
        if not self.sizes:
            raise ParameterError("At least one region size is required")
        if any(s <= 0 for s in self.sizes):
            raise ParameterError("Region sizes must be positive")
        if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise ParameterError("Region sizes must be strictly increasing")

    def regions(self) -> Tuple[FolnerRegion, ...]:
        return tuple(FolnerRegion(self.shape, size, self.start) for size in self.sizes)


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully parsed experiment file."""

    system: SystemSection
    folner: Optional[FolnerSection] = None
    element: Optional[Element] = None
    a: Optional[GroupObservable] = None
    b: Optional[GroupObservable] = None
    functional_kind: Optional[FunctionalKind] = None
    seed: int = 0
    source: Optional[str] = None

    def functional(self) -> StateFunctional:
        if self.functional_kind is None:
            raise ParameterError("The [functional] section is missing")
        return StateFunctional(self.functional_kind, self.system.theta1, self.system.theta2)

    def require_folner(self) -> FolnerSection:
        if self.folner is None:
            raise ParameterError("The [folner] section is missing")
        return self.folner

    def require_element(self) -> Element:
        if self.element is None:
            raise ParameterError("[observable] element is missing")
        return self.element


@dataclass(frozen=True)
class ResultRow:
    """One line of a convergence table."""

    size: Fraction
    value: complex
    limit: complex

    @property
    def abs_error(self) -> float:
        return abs(self.value - self.limit)

    def to_record(self) -> Dict[str, Any]:
        size: Union[int, float] = (
            int(self.size) if Fraction(self.size).denominator == 1 else float(self.size)
        )
        return {
            "size": size,
            "re_value": self.value.real,
            "im_value": self.value.imag,
            "re_limit": self.limit.real,
            "im_limit": self.limit.imag,
            "abs_error": self.abs_error,
        }
