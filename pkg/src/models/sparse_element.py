from __future__ import annotations

import numbers
from types import MappingProxyType
from typing import Any, Callable, Dict, Hashable, Iterator, Mapping, Tuple

from models.surd import ParameterError

# Coefficients below this modulus are treated as rounding dust and dropped
# after every ring operation.
PRUNE_THRESHOLD = 1e-15


def pruned(coeffs: Mapping[Hashable, complex]) -> Mapping[Hashable, complex]:
    """Drop negligible coefficients and freeze the mapping."""
    kept = {mono: complex(c) for mono, c in coeffs.items() if abs(c) >= PRUNE_THRESHOLD}
    return MappingProxyType(kept)


class SparseElement:
    """Shared behaviour of finite Laurent-type sums over a monomial lattice.

    Subclasses are frozen dataclasses with a ``coeffs`` mapping; they supply
    the deformation parameters, the unit monomial and the twisted monomial
    product and adjoint rules.
    """

    coeffs: Mapping[Any, complex]

    # -- hooks --------------------------------------------------------------

    @property
    def params(self) -> Tuple[Any, ...]:
        raise NotImplementedError

    def _with_coeffs(self, coeffs: Mapping[Any, complex]):
        raise NotImplementedError

    def _monomial_product(self, a: Any, b: Any) -> Tuple[complex, Any]:
        raise NotImplementedError

    def _monomial_adjoint(self, a: Any) -> Tuple[complex, Any]:
        raise NotImplementedError

    @classmethod
    def unit_monomial(cls) -> Any:
        raise NotImplementedError

    # -- inspection -----------------------------------------------------------

    def coefficient(self, monomial: Any) -> complex:
        return self.coeffs.get(monomial, 0j)

    def terms(self) -> Iterator[Tuple[Any, complex]]:
        """Terms in lattice order, so float reductions are reproducible."""
        for mono in sorted(self.coeffs):
            yield mono, self.coeffs[mono]

    def support(self) -> Tuple[Any, ...]:
        return tuple(sorted(self.coeffs))

    def support_radius(self) -> int:
        return max((max(abs(e) for e in mono) for mono in self.coeffs), default=0)

    def one_norm(self) -> float:
        """Sum of coefficient moduli; bounds the operator norm from above."""
        return sum(abs(c) for _, c in self.terms())

    def distance(self, other) -> float:
        return (self - other).one_norm()

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.params == other.params and dict(self.coeffs) == dict(other.coeffs)

    __hash__ = None  # type: ignore[assignment]

    # -- linear structure -------------------------------------------------------

    def _check_compatible(self, other) -> None:
        if type(other) is not type(self):
            raise ParameterError(
                f"Cannot combine {type(self).__name__} with {type(other).__name__}"
            )
        if other.params != self.params:
            raise ParameterError(
                f"Deformation parameters differ: {self.params} vs {other.params}"
            )

    def __add__(self, other):
        if isinstance(other, numbers.Number):
            other = self.scalar(other)
        self._check_compatible(other)
        total: Dict[Any, complex] = dict(self.coeffs)
        for mono, c in other.coeffs.items():
            total[mono] = total.get(mono, 0j) + c
        return self._with_coeffs(total)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if isinstance(other, numbers.Number):
            other = self.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor: complex):
        return self._with_coeffs({m: c * factor for m, c in self.coeffs.items()})

    def scalar(self, value: complex):
        """The multiple ``value * 1`` with this element's parameters."""
        return self._with_coeffs({self.unit_monomial(): complex(value)})

    def map_coefficients(self, fn: Callable[[Any, complex], complex]):
        """Rebuild with ``fn(monomial, coefficient)`` as the new coefficients."""
        return self._with_coeffs({m: fn(m, c) for m, c in self.coeffs.items()})

    def restrict(self, keep: Callable[[Any], bool]):
        """Keep only the monomials satisfying ``keep``."""
        return self._with_coeffs({m: c for m, c in self.coeffs.items() if keep(m)})

    # -- ring structure -----------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            return self.scale(other)
        self._check_compatible(other)
        product: Dict[Any, complex] = {}
        for a_mono, a_coeff in self.terms():
            for b_mono, b_coeff in other.terms():
                phase, mono = self._monomial_product(a_mono, b_mono)
                product[mono] = product.get(mono, 0j) + phase * a_coeff * b_coeff
        return self._with_coeffs(product)

    def __rmul__(self, other):
        if isinstance(other, numbers.Number):
            return self.scale(other)
        return NotImplemented

    def adjoint(self):
        """Conjugate-linear involution."""
        result: Dict[Any, complex] = {}
        for mono, c in self.terms():
            phase, image = self._monomial_adjoint(mono)
            result[image] = result.get(image, 0j) + phase * c.conjugate()
        return self._with_coeffs(result)

    def unit_coefficient(self) -> complex:
        return self.coefficient(self.unit_monomial())
