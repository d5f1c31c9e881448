from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, NamedTuple, Optional, Tuple

import numpy as np

from models.sparse_element import SparseElement, pruned
from models.surd import ScalarLike, SurdScalar
from models.torus_element import Monomial, TorusElement, twist


class TensorMonomial(NamedTuple):
    """u^j v^k (x) w^l z^m; the right factor is written w, z."""

    j: int
    k: int
    l: int  # noqa: E741
    m: int

    @property
    def left(self) -> Monomial:
        return Monomial(self.j, self.k)

    @property
    def right(self) -> Monomial:
        return Monomial(self.l, self.m)

    def __str__(self) -> str:
        return f"u^{self.j} v^{self.k} w^{self.l} z^{self.m}"


TENSOR_UNIT = TensorMonomial(0, 0, 0, 0)


@dataclass(frozen=True, eq=False)
class TensorElement(SparseElement):
    """Element of the algebraic tensor product of two quantum tori.

    Letters of different factors commute; each factor is twisted by its own
    parameter.
    """

    theta1: SurdScalar
    theta2: SurdScalar
    coeffs: Mapping[TensorMonomial, complex] = field(
        default_factory=lambda: MappingProxyType({})
    )

    def __post_init__(self):
        object.__setattr__(self, "theta1", SurdScalar.of(self.theta1))
        object.__setattr__(self, "theta2", SurdScalar.of(self.theta2))
        coeffs = {TensorMonomial(*mono): c for mono, c in self.coeffs.items()}
        object.__setattr__(self, "coeffs", pruned(coeffs))

    @property
    def params(self) -> Tuple[SurdScalar, SurdScalar]:
        return (self.theta1, self.theta2)

    def _with_coeffs(self, coeffs) -> "TensorElement":
        return TensorElement(self.theta1, self.theta2, coeffs)

    def _monomial_product(self, a: TensorMonomial, b: TensorMonomial):
        phase = twist(self.theta1, a.k * b.j) * twist(self.theta2, a.m * b.l)
        return phase, TensorMonomial(a.j + b.j, a.k + b.k, a.l + b.l, a.m + b.m)

    def _monomial_adjoint(self, a: TensorMonomial):
        phase = twist(self.theta1, a.j * a.k) * twist(self.theta2, a.l * a.m)
        return phase, TensorMonomial(-a.j, -a.k, -a.l, -a.m)

    @classmethod
    def unit_monomial(cls) -> TensorMonomial:
        return TENSOR_UNIT

    # -- constructors -----------------------------------------------------------

    @classmethod
    def unit(cls, theta1: ScalarLike, theta2: ScalarLike) -> "TensorElement":
        return cls(theta1, theta2, {TENSOR_UNIT: 1})

    @classmethod
    def monomial(
        cls,
        theta1: ScalarLike,
        theta2: ScalarLike,
        j: int,
        k: int,
        l: int,  # noqa: E741
        m: int,
        coeff: complex = 1,
    ) -> "TensorElement":
        return cls(theta1, theta2, {TensorMonomial(j, k, l, m): coeff})

    @classmethod
    def tensor(cls, a: TorusElement, b: TorusElement) -> "TensorElement":
        """a (x) b."""
        coeffs = {}
        for left, ca in a.terms():
            for right, cb in b.terms():
                coeffs[TensorMonomial(left.m, left.n, right.m, right.n)] = ca * cb
        return cls(a.theta, b.theta, coeffs)

    @classmethod
    def left(cls, a: TorusElement, theta2: ScalarLike) -> "TensorElement":
        """a (x) 1."""
        return cls.tensor(a, TorusElement.unit(theta2))

    @classmethod
    def right(cls, theta1: ScalarLike, b: TorusElement) -> "TensorElement":
        """1 (x) b."""
        return cls.tensor(TorusElement.unit(theta1), b)

    @classmethod
    def random(
        cls,
        theta1: ScalarLike,
        theta2: ScalarLike,
        rng: np.random.Generator,
        radius: int = 3,
        terms: Optional[int] = 6,
    ) -> "TensorElement":
        """Random element with ``terms`` monomials drawn from [-radius, radius]^4."""
        side = 2 * radius + 1
        count = side**4 if terms is None else min(terms, side**4)
        picks = sorted(rng.choice(side**4, size=count, replace=False))
        values = rng.standard_normal(count) + 1j * rng.standard_normal(count)
        coeffs = {}
        for index, c in zip(picks, values):
            digits = np.unravel_index(int(index), (side,) * 4)
            coeffs[TensorMonomial(*(int(d) - radius for d in digits))] = complex(c)
        return cls(theta1, theta2, coeffs)

    def __repr__(self) -> str:
        body = " + ".join(f"({c:.6g}) {mono}" for mono, c in self.terms()) or "0"
        return f"TensorElement(theta1={self.theta1}, theta2={self.theta2}, {body})"
