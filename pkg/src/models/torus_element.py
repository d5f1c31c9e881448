from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, NamedTuple, Optional, Tuple

import numpy as np

from models.sparse_element import SparseElement, pruned
from models.surd import ScalarLike, SurdScalar, unit_phase


class Monomial(NamedTuple):
    """Normal-ordered monomial u^m v^n."""

    m: int
    n: int

    def __str__(self) -> str:
        return f"u^{self.m} v^{self.n}"


UNIT = Monomial(0, 0)


def twist(theta: SurdScalar, k: int) -> complex:
    """e^{-2 pi i theta k}: the phase picked up moving v^n past u^m' (k = n*m')."""
    if k == 0:
        return 1 + 0j
    return unit_phase(-(theta * k))


def monomial_mul(a: Monomial, b: Monomial, theta: SurdScalar) -> Tuple[complex, Monomial]:
    """u^m v^n . u^m' v^n' = e^{-2 pi i theta n m'} u^{m+m'} v^{n+n'}."""
    return twist(theta, a.n * b.m), Monomial(a.m + b.m, a.n + b.n)


def monomial_adjoint(a: Monomial, theta: SurdScalar) -> Tuple[complex, Monomial]:
    """(u^m v^n)* = e^{-2 pi i theta m n} u^-m v^-n."""
    return twist(theta, a.m * a.n), Monomial(-a.m, -a.n)


@dataclass(frozen=True, eq=False)
class TorusElement(SparseElement):
    """Finite sum of monomials u^m v^n in the quantum torus with parameter theta."""

    theta: SurdScalar
    coeffs: Mapping[Monomial, complex] = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        object.__setattr__(self, "theta", SurdScalar.of(self.theta))
        coeffs = {Monomial(*mono): c for mono, c in self.coeffs.items()}
        object.__setattr__(self, "coeffs", pruned(coeffs))

    @property
    def params(self) -> Tuple[SurdScalar]:
        return (self.theta,)

    def _with_coeffs(self, coeffs) -> "TorusElement":
        return TorusElement(self.theta, coeffs)

    def _monomial_product(self, a: Monomial, b: Monomial):
        return monomial_mul(a, b, self.theta)

    def _monomial_adjoint(self, a: Monomial):
        return monomial_adjoint(a, self.theta)

    @classmethod
    def unit_monomial(cls) -> Monomial:
        return UNIT

    def trace(self) -> complex:
        """Canonical trace: the coefficient of the unit monomial."""
        return self.unit_coefficient()

    # -- constructors -----------------------------------------------------------

    @classmethod
    def unit(cls, theta: ScalarLike) -> "TorusElement":
        return cls(theta, {UNIT: 1})

    @classmethod
    def monomial(cls, theta: ScalarLike, m: int, n: int, coeff: complex = 1) -> "TorusElement":
        return cls(theta, {Monomial(m, n): coeff})

    @classmethod
    def u(cls, theta: ScalarLike, power: int = 1) -> "TorusElement":
        return cls.monomial(theta, power, 0)

    @classmethod
    def v(cls, theta: ScalarLike, power: int = 1) -> "TorusElement":
        return cls.monomial(theta, 0, power)

    @classmethod
    def from_terms(cls, theta: ScalarLike, terms: Mapping[Tuple[int, int], complex]) -> "TorusElement":
        return cls(theta, dict(terms))

    @classmethod
    def random(
        cls,
        theta: ScalarLike,
        rng: np.random.Generator,
        radius: int = 4,
        terms: Optional[int] = None,
    ) -> "TorusElement":
        """Random element with support in [-radius, radius]^2.

        ``terms`` monomials are drawn without replacement (all of them when
        omitted); coefficients have independent standard normal parts.
        """
        lattice = [(m, n) for m in range(-radius, radius + 1) for n in range(-radius, radius + 1)]
        count = len(lattice) if terms is None else min(terms, len(lattice))
        picks = rng.choice(len(lattice), size=count, replace=False)
        values = rng.standard_normal(count) + 1j * rng.standard_normal(count)
        return cls(theta, {lattice[i]: complex(c) for i, c in zip(sorted(picks), values)})

    def __repr__(self) -> str:
        body = " + ".join(f"({c:.6g}) {mono}" for mono, c in self.terms()) or "0"
        return f"TorusElement(theta={self.theta}, {body})"

