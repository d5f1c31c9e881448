from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

from models.surd import ParameterError, ScalarLike, SurdScalar
from models.tensor_element import TensorMonomial
from models.torus_element import Monomial

Frequency = Tuple[SurdScalar, ...]


class GroupKind(Enum):
    """Acting group; all three are abelian, hence unimodular."""

    Z = "Z"
    R = "R"
    R2 = "R2"

    @property
    def dimension(self) -> int:
        return 2 if self is GroupKind.R2 else 1

    @property
    def discrete(self) -> bool:
        return self is GroupKind.Z


@dataclass(frozen=True)
class ActionSpec:
    """Character action by frequency multipliers.

    A torus system scales u^m v^n by e^{2 pi i (m p s + n q t)}; a pair
    system adds (c, d) for the right factor so that (j, k, l, m) has
    frequency (j p + l c, k q + m d). One-parameter groups (Z, R) keep only
    the first component.
    """

    group: GroupKind
    p: SurdScalar
    q: SurdScalar
    c: Optional[SurdScalar] = None
    d: Optional[SurdScalar] = None

    def __post_init__(self):
        object.__setattr__(self, "group", GroupKind(self.group))
        object.__setattr__(self, "p", SurdScalar.of(self.p))
        object.__setattr__(self, "q", SurdScalar.of(self.q))
        if (self.c is None) != (self.d is None):
            raise ParameterError("Right-factor multipliers c and d must be given together")
        if self.c is not None:
            object.__setattr__(self, "c", SurdScalar.of(self.c))
            object.__setattr__(self, "d", SurdScalar.of(self.d))

    @classmethod
    def torus(cls, p: ScalarLike = 1, q: ScalarLike = 1, group: GroupKind = GroupKind.R2) -> "ActionSpec":
        return cls(group, p, q)

    @classmethod
    def pair(
        cls,
        p: ScalarLike,
        q: ScalarLike,
        c: ScalarLike,
        d: ScalarLike,
        group: GroupKind = GroupKind.R2,
    ) -> "ActionSpec":
        return cls(group, p, q, c, d)

    @property
    def is_pair(self) -> bool:
        return self.c is not None

    @property
    def dimension(self) -> int:
        return self.group.dimension

    def left_factor(self) -> "ActionSpec":
        return ActionSpec(self.group, self.p, self.q)

    def right_factor(self) -> "ActionSpec":
        if not self.is_pair:
            raise ParameterError("A single torus system has no right factor")
        return ActionSpec(self.group, self.c, self.d)

    def require_nonzero(self) -> None:
        """Ergodic settings need every multiplier nonzero."""
        multipliers = [self.p, self.q] + ([self.c, self.d] if self.is_pair else [])
        if any(x.is_zero for x in multipliers):
            raise ParameterError("All frequency multipliers must be nonzero for an ergodic system")

    def frequency(self, monomial: Union[Monomial, TensorMonomial]) -> Frequency:
        """Exact frequency vector of a monomial."""
        if isinstance(monomial, TensorMonomial):
            if not self.is_pair:
                raise ParameterError("Tensor monomials need a pair action (c, d)")
            first = self.p * monomial.j + self.c * monomial.l
            second = self.q * monomial.k + self.d * monomial.m
        else:
            if self.is_pair:
                raise ParameterError("Torus monomials need a single-system action")
            first = self.p * monomial.m
            second = self.q * monomial.n
        return (first, second) if self.dimension == 2 else (first,)

    def is_fixed(self, monomial: Union[Monomial, TensorMonomial]) -> bool:
        """True when the action leaves the monomial untouched.

        Over R and R^2 that means zero frequency; over Z a character is trivial
        exactly when its frequency is an integer.
        """
        freq = self.frequency(monomial)
        if self.group.discrete:
            return all(f.is_integer for f in freq)
        return all(f.is_zero for f in freq)
