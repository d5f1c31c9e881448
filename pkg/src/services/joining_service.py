from __future__ import annotations

import itertools
from typing import Iterable, List, Optional, Sequence, Set, Tuple

import structlog

from models.action_spec import ActionSpec
from models.experiment import ResultRow
from models.folner_region import FolnerRegion
from models.reports import InvarianceReport, KernelCertificate, MarginalReport
from models.state_functional import FunctionalKind, StateFunctional
from models.surd import ParameterError, SurdScalar
from models.tensor_element import TENSOR_UNIT, TensorElement, TensorMonomial
from models.torus_element import TorusElement
from services.dynamics_service import DynamicsService, GroupElement, pairing_phase

INVARIANCE_TOLERANCE = 1e-12


def window_order(mono: TensorMonomial) -> Tuple:
    """Radius first, then positive exponents before negative ones."""
    return (max(abs(e) for e in mono), tuple((abs(e), e < 0) for e in mono))


def window_monomials(window: int) -> List[TensorMonomial]:
    span = range(-window, window + 1)
    return sorted((TensorMonomial(*t) for t in itertools.product(span, repeat=4)), key=window_order)


class JoiningService:
    """Couplings on the tensor product of two quantum tori and their limits."""

    def __init__(self, dynamics: Optional[DynamicsService] = None):
        self.logger = structlog.get_logger("ncergo.joinings")
        self.dynamics = dynamics or DynamicsService()

    def state_eval(self, functional: StateFunctional, c: TensorElement) -> complex:
        """Linear extension of the functional's monomial rule.

        Raises:
            ParameterError: when c's parameters do not fit the functional
        """
        functional.check_element(c)
        return complex(sum(coeff * functional.monomial_value(mono) for mono, coeff in c.terms()))

    def relative_expectation(self, c: TensorElement) -> TensorElement:
        """Keep only the monomials without u and w letters (j = l = 0)."""
        return c.restrict(lambda mono: mono.j == 0 and mono.l == 0)

    def marginal_check(self, functional: StateFunctional, window: int) -> MarginalReport:
        """Compare a (x) 1 and 1 (x) b against the canonical traces on the window."""
        worst, worst_mono, checked = 0.0, None, 0
        span = range(-window, window + 1)
        for m, n in itertools.product(span, span):
            trace_left = TorusElement.monomial(functional.theta1, m, n).trace()
            trace_right = TorusElement.monomial(functional.theta2, m, n).trace()
            for mono, expected in (
                (TensorMonomial(m, n, 0, 0), trace_left),
                (TensorMonomial(0, 0, m, n), trace_right),
            ):
                element = TensorElement(functional.theta1, functional.theta2, {mono: 1})
                deviation = abs(self.state_eval(functional, element) - expected)
                checked += 1
                if deviation > worst:
                    worst, worst_mono = deviation, mono
        report = MarginalReport(functional.kind.value, window, worst, checked, worst_mono)
        self.logger.info("Marginals checked", **report.to_dict())
        return report

    def invariance_check(
        self,
        functional: StateFunctional,
        spec: ActionSpec,
        samples: Sequence[GroupElement],
        window: int,
    ) -> InvarianceReport:
        """Largest |f(alpha_g(mono)) - f(mono)| over samples and window monomials.

        The witness is the first failing monomial in window order.
        """
        worst, checked = 0.0, 0
        witness: Optional[TensorMonomial] = None
        witness_element, witness_value = None, None
        support = [
            mono for mono in window_monomials(window) if functional.monomial_value(mono) != 0
        ]
        for g in samples:
            g = self.dynamics.check_group_element(g, spec)
            for mono in support:
                value = functional.monomial_value(mono)
                moved = value * pairing_phase(spec.frequency(mono), g)
                deviation = abs(moved - value)
                checked += 1
                worst = max(worst, deviation)
                if deviation > INVARIANCE_TOLERANCE and witness is None:
                    witness, witness_element, witness_value = mono, tuple(g), moved
        report = InvarianceReport(
            functional.kind.value, worst, checked, witness, witness_element, witness_value
        )
        self.logger.info("Invariance checked", **report.to_dict())
        return report

    def _axis_solutions(
        self, first: SurdScalar, second: SurdScalar, window: int, discrete: bool
    ) -> Set[Tuple[int, int]]:
        span = range(-window, window + 1)
        solutions = set()
        for a, b in itertools.product(span, span):
            total = first * a + second * b
            if total.is_integer if discrete else total.is_zero:
                solutions.add((a, b))
        return solutions

    def kernel_certificate(self, spec: ActionSpec, window: int) -> KernelCertificate:
        """Exact set of fixed tensor monomials with every exponent in [-W, W].

        The frequency is linear and splits by axis, so the first component only
        involves (j, l) and the second only (k, m).
        """
        if not spec.is_pair:
            raise ParameterError("kernel_certificate needs a pair action (p, q, c, d)")
        discrete = spec.group.discrete
        first_axis = self._axis_solutions(spec.p, spec.c, window, discrete)
        if spec.dimension == 2:
            second_axis = self._axis_solutions(spec.q, spec.d, window, discrete)
        else:
            span = range(-window, window + 1)
            second_axis = set(itertools.product(span, span))
        fixed = frozenset(
            TensorMonomial(j, k, l, m) for (j, l) in first_axis for (k, m) in second_axis
        )
        certificate = KernelCertificate(window, fixed, (2 * window + 1) ** 4)
        self.logger.info("Kernel certificate", window=window, fixed=len(fixed),
                         only_unit=certificate.only_unit)
        self.logger.debug("Fixed monomials", **certificate.to_dict())
        return certificate

    def target_joining(self, spec: ActionSpec, functional: StateFunctional) -> StateFunctional:
        """The unique joining the averaged coupling converges to.

        Two-parameter actions with irrational ratios leave only the product
        trace; one-parameter mirror systems keep v and its mirror, so the
        limit is omega_rel.
        """
        if spec.dimension == 2:
            return StateFunctional(FunctionalKind.PRODUCT_TRACE, functional.theta1, functional.theta2)
        if functional.kind.mirrored:
            return StateFunctional(FunctionalKind.OMEGA_REL, functional.theta1, functional.theta2)
        raise ParameterError(
            "One-parameter averages need a mirrored coupling (kappa_diag or omega_rel)"
        )

    def averaged_value(
        self, functional: StateFunctional, c: TensorElement, spec: ActionSpec, region: FolnerRegion
    ) -> complex:
        """Følner average of g -> f((alpha (x) beta)_g c), in closed form."""
        functional.check_element(c)
        self.dynamics.check_region(region, spec)
        total = 0j
        for mono, coeff in c.terms():
            value = functional.monomial_value(mono)
            if value:
                total += coeff * value * self.dynamics.char_average(spec.frequency(mono), region)
        return total

    def disjointness_average(
        self,
        functional: StateFunctional,
        c: TensorElement,
        spec: ActionSpec,
        regions: Iterable[FolnerRegion],
    ) -> List[ResultRow]:
        """One row per region: averaged coupling value against the target joining."""
        limit = self.state_eval(self.target_joining(spec, functional), c)
        rows = [
            ResultRow(region.size, self.averaged_value(functional, c, spec, region), limit)
            for region in regions
        ]
        self.logger.info("Disjointness averages computed", functional=functional.kind.value,
                         rows=len(rows))
        return rows

    def disjointness_quadrature(
        self,
        functional: StateFunctional,
        c: TensorElement,
        spec: ActionSpec,
        region: FolnerRegion,
        nodes: Optional[int] = None,
    ) -> complex:
        """averaged_value with quadrature in place of the closed form."""
        functional.check_element(c)
        total = 0j
        for mono, coeff in c.terms():
            value = functional.monomial_value(mono)
            if value:
                freq = spec.frequency(mono)
                average = (
                    self.dynamics.quadrature_average(freq, region)
                    if nodes is None
                    else self.dynamics.quadrature_average(freq, region, nodes)
                )
                total += coeff * value * average
        return total

    def unit_value(self, functional: StateFunctional) -> complex:
        return self.state_eval(
            functional, TensorElement(functional.theta1, functional.theta2, {TENSOR_UNIT: 1})
        )
