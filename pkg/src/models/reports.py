from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

from models.tensor_element import TensorMonomial


@dataclass
class MarginalReport:
    """Outcome of comparing a functional's marginals with the canonical traces."""

    functional: str
    window: int
    max_deviation: float
    checked: int
    worst_monomial: Optional[TensorMonomial] = None
    tolerance: float = 1e-12

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "functional": self.functional,
            "window": self.window,
            "max_deviation": self.max_deviation,
            "checked": self.checked,
            "worst_monomial": str(self.worst_monomial) if self.worst_monomial else None,
            "passed": self.passed,
        }


@dataclass
class InvarianceReport:
    """Invariance of a functional under sampled group elements.

    ``witness`` is the first monomial at which invariance fails, with the
    group element and the transported value.
    """

    functional: str
    max_deviation: float
    checked: int
    witness: Optional[TensorMonomial] = None
    witness_element: Optional[Tuple[Any, ...]] = None
    witness_value: Optional[complex] = None
    tolerance: float = 1e-12

    @property
    def invariant(self) -> bool:
        return self.max_deviation <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "functional": self.functional,
            "max_deviation": self.max_deviation,
            "checked": self.checked,
            "invariant": self.invariant,
            "witness": str(self.witness) if self.witness else None,
            "witness_element": [str(x) for x in self.witness_element] if self.witness_element else None,
            "witness_value": [self.witness_value.real, self.witness_value.imag]
            if self.witness_value is not None
            else None,
        }


@dataclass
class KernelCertificate:
    """Exact list of zero-frequency tensor monomials inside a window."""

    window: int
    fixed: FrozenSet[TensorMonomial]
    enumerated: int

    @property
    def only_unit(self) -> bool:
        return self.fixed == frozenset({TensorMonomial(0, 0, 0, 0)})

    @property
    def only_vz(self) -> bool:
        """True when exactly the monomials v^k (x) z^m are fixed."""
        expected = {
            TensorMonomial(0, k, 0, m)
            for k in range(-self.window, self.window + 1)
            for m in range(-self.window, self.window + 1)
        }
        return self.fixed == frozenset(expected)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "window": self.window,
            "enumerated": self.enumerated,
            "fixed": sorted(str(mono) for mono in self.fixed),
        }


@dataclass
class InvariantResult:
    """One verified property: machine-readable as ``PASS|FAIL suite id deviation``."""

    suite: str
    invariant_id: str
    max_deviation: float
    tolerance: float
    details: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite} {self.invariant_id} {self.max_deviation:.3e}"
