from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from models.surd import ParameterError, ScalarLike, SurdScalar
from models.tensor_element import TensorElement, TensorMonomial


class FunctionalKind(Enum):
    PRODUCT_TRACE = "product_trace"
    KAPPA_D = "kappa_D"
    KAPPA_DIAG = "kappa_diag"
    OMEGA_REL = "omega_rel"

    @property
    def mirrored(self) -> bool:
        """Kinds built on the commuting pair A_theta, A_-theta."""
        return self in (FunctionalKind.KAPPA_DIAG, FunctionalKind.OMEGA_REL)


@dataclass(frozen=True)
class StateFunctional:
    """One of the four vector states on the tensor product of two quantum tori.

    product_trace  Tr (x) Tr
    kappa_D        <Omega, v^k z^m Omega> after killing u and w powers
    kappa_diag     <Omega, u^j v^k u~^l v~^m Omega> with u~, v~ generating A_-theta
    omega_rel      kappa_diag after killing u and u~ powers
    """

    kind: FunctionalKind
    theta1: SurdScalar
    theta2: SurdScalar

    def __post_init__(self):
        object.__setattr__(self, "kind", FunctionalKind(self.kind))
        object.__setattr__(self, "theta1", SurdScalar.of(self.theta1))
        object.__setattr__(self, "theta2", SurdScalar.of(self.theta2))
        if self.kind.mirrored and self.theta2 != -self.theta1:
            raise ParameterError(
                f"{self.kind.value} needs theta2 = -theta1, got {self.theta1} and {self.theta2}"
            )

    @classmethod
    def mirror(cls, kind: FunctionalKind, theta: ScalarLike) -> "StateFunctional":
        theta = SurdScalar.of(theta)
        return cls(kind, theta, -theta)

    def monomial_value(self, mono: TensorMonomial) -> int:
        """Kronecker closed form on a single tensor monomial."""
        if self.kind is FunctionalKind.PRODUCT_TRACE:
            hit = mono.j == 0 and mono.k == 0 and mono.l == 0 and mono.m == 0
        elif self.kind is FunctionalKind.KAPPA_DIAG:
            hit = mono.j + mono.l == 0 and mono.k + mono.m == 0
        else:
            # kappa_D and omega_rel share the rule: only v/z powers survive
            hit = mono.j == 0 and mono.l == 0 and mono.k + mono.m == 0
        return 1 if hit else 0

    def check_element(self, c: TensorElement) -> None:
        if c.params != (self.theta1, self.theta2):
            raise ParameterError(
                f"Element parameters {c.params} do not match functional "
                f"{self.kind.value} on ({self.theta1}, {self.theta2})"
            )

    def __str__(self) -> str:
        return f"{self.kind.value}(theta1={self.theta1}, theta2={self.theta2})"
