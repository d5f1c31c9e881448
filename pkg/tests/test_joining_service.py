import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from models.action_spec import ActionSpec, GroupKind
from models.folner_region import FolnerRegion
from models.state_functional import FunctionalKind, StateFunctional
from models.surd import ParameterError, SurdScalar, unit_phase
from models.tensor_element import TensorElement, TensorMonomial
from services.joining_service import JoiningService, window_monomials
from services.oracle_service import OracleService

SQRT2 = SurdScalar.sqrt(2)
SQRT3 = SurdScalar.sqrt(3)


class TestJoiningService:
    """Couplings, their invariance and the disjointness averages."""

    def setup_method(self):
        self.service = JoiningService()
        self.theta1 = SurdScalar(Fraction(1, 5))
        self.theta2 = SurdScalar(Fraction(1, 3))
        self.kappa_d = StateFunctional(FunctionalKind.KAPPA_D, self.theta1, self.theta2)
        self.product = StateFunctional(FunctionalKind.PRODUCT_TRACE, self.theta1, self.theta2)
        self.diag = StateFunctional.mirror(FunctionalKind.KAPPA_DIAG, self.theta1)
        self.rel = StateFunctional.mirror(FunctionalKind.OMEGA_REL, self.theta1)
        self.irrational_box = ActionSpec.pair(1, 1, SQRT2, SQRT3)
        self.mirror_flow = ActionSpec.pair(1, 1, SQRT2, 1, GroupKind.R)
        self.v_z = TensorElement.monomial(self.theta1, self.theta2, 0, 1, 0, -1)
        self.rng = np.random.default_rng(4)

    def test_unit_value(self):
        """Every functional is unital."""
        for functional in (self.kappa_d, self.product, self.diag, self.rel):
            assert self.service.unit_value(functional) == 1

    def test_marginals_are_the_traces(self):
        """a (x) 1 and 1 (x) b evaluate to tr(a) and tr(b)."""
        for functional in (self.kappa_d, self.product, self.diag, self.rel):
            report = self.service.marginal_check(functional, 4)
            assert report.passed
            assert report.checked == 2 * 9 * 9

    def test_kappa_d_separates_from_product(self):
        """kappa_D(v (x) z^-1) = 1 while the product trace gives 0."""
        assert self.service.state_eval(self.kappa_d, self.v_z) == 1
        assert self.service.state_eval(self.product, self.v_z) == 0

    def test_relative_expectation_factorises_omega_rel(self):
        """omega_rel = kappa_diag o Erel."""
        for _ in range(20):
            c = TensorElement.random(self.theta1, -self.theta1, self.rng, radius=3, terms=8)
            lhs = self.service.state_eval(self.rel, c)
            rhs = self.service.state_eval(self.diag, self.service.relative_expectation(c))
            assert abs(lhs - rhs) <= 1e-12

    def test_positivity_against_oracle(self):
        """kappa(c* c) is real, non-negative and matches the vacuum vector model."""
        oracle = OracleService(truncation=12)
        for functional in (self.kappa_d, self.product, self.diag, self.rel):
            for _ in range(5):
                c = TensorElement.random(functional.theta1, functional.theta2, self.rng, radius=2, terms=6)
                value = self.service.state_eval(functional, c.adjoint() * c)
                assert value.real >= -1e-12
                assert abs(value.imag) <= 1e-12
                assert abs(value - oracle.vacuum_expectation(functional, c.adjoint() * c)) <= 1e-9

    def test_mismatched_element_is_rejected(self):
        """Elements over other parameters raise ParameterError."""
        with pytest.raises(ParameterError):
            self.service.state_eval(self.diag, self.v_z)

    def test_kernel_certificate_irrational_box(self):
        """Multipliers (1, 1) against (sqrt2, sqrt3) fix only the unit."""
        certificate = self.service.kernel_certificate(self.irrational_box, 8)
        assert certificate.only_unit
        assert certificate.enumerated == 17**4
        assert certificate.to_dict()["fixed"] == [str(TensorMonomial(0, 0, 0, 0))]

    def test_kernel_certificate_mirror_flow(self):
        """The one-parameter mirror flow fixes exactly v^k (x) z^m."""
        assert self.service.kernel_certificate(self.mirror_flow, 8).only_vz

    def test_kernel_certificate_rational_overlap(self):
        """c = 2, d = 1 fixes u^2 (x) w^-1."""
        certificate = self.service.kernel_certificate(ActionSpec.pair(1, 1, 2, 1), 2)
        assert TensorMonomial(2, 0, -1, 0) in certificate.fixed
        assert not certificate.only_unit

    def test_kernel_certificate_over_integers(self):
        """Over Z a frequency only needs to be an integer."""
        spec = ActionSpec.pair(Fraction(1, 2), 1, SQRT2, 1, GroupKind.Z)
        certificate = self.service.kernel_certificate(spec, 2)
        assert TensorMonomial(2, 1, 0, 1) in certificate.fixed
        assert TensorMonomial(1, 0, 0, 0) not in certificate.fixed

    def test_window_order_puts_v_z_first(self):
        """v (x) z^-1 comes before v^-1 (x) z among radius-one monomials."""
        order = window_monomials(1)
        assert order[0] == TensorMonomial(0, 0, 0, 0)
        assert order.index(TensorMonomial(0, 1, 0, -1)) < order.index(TensorMonomial(0, -1, 0, 1))

    def test_kappa_d_invariance_witness(self):
        """kappa_D is not invariant under the irrational box; v (x) z^-1 witnesses it."""
        report = self.service.invariance_check(self.kappa_d, self.irrational_box, [(0, Fraction(1, 4))], 2)
        assert not report.invariant
        assert report.witness == TensorMonomial(0, 1, 0, -1)
        assert abs(report.witness_value - unit_phase((1 - SQRT3) / 4)) <= 1e-12
        data = report.to_dict()
        assert data["invariant"] is False
        assert data["witness"] == str(TensorMonomial(0, 1, 0, -1))
        assert data["witness_element"] == ["0", "1/4"]

    def test_invariant_functionals(self):
        """The product trace is invariant for the box; omega_rel for the mirror flow."""
        samples = [(Fraction(3, 7), Fraction(-5, 3)), (SQRT2, Fraction(1, 2))]
        assert self.service.invariance_check(self.product, self.irrational_box, samples, 2).invariant
        flow_samples = [(Fraction(2, 3),), (SQRT2,)]
        assert self.service.invariance_check(self.rel, self.mirror_flow, flow_samples, 2).invariant

    def test_coupling_average_closed_form(self):
        """Averaged kappa_D on v (x) z^-1 decays like 1/((sqrt3 - 1) pi T)."""
        f = 1 - math.sqrt(3)
        value = self.service.averaged_value(self.kappa_d, self.v_z, self.irrational_box, FolnerRegion.box(1000))
        closed = (cmath.exp(2j * math.pi * f * 1000) - 1) / (2j * math.pi * f * 1000)
        assert abs(value - closed) <= 1e-12
        assert abs(value) <= 4.35e-4

    def test_coupling_quadrature(self):
        """The quadrature average at T = 10 agrees with the closed form."""
        region = FolnerRegion.box(10)
        closed = self.service.averaged_value(self.kappa_d, self.v_z, self.irrational_box, region)
        numeric = self.service.disjointness_quadrature(self.kappa_d, self.v_z, self.irrational_box, region)
        assert abs(closed - numeric) <= 1e-8

    def test_disjointness_rows_target_product_trace(self):
        """Two-parameter averages converge to the product trace."""
        rows = self.service.disjointness_average(
            self.kappa_d, self.v_z, self.irrational_box, [FolnerRegion.box(t) for t in (10, 100, 1000)]
        )
        assert [int(row.size) for row in rows] == [10, 100, 1000]
        assert all(row.limit == 0 for row in rows)
        assert rows[-1].abs_error < rows[0].abs_error

    def test_mirror_flow_limit_is_omega_rel(self):
        """kappa_diag averages to omega_rel: 1 on v (x) v~^-1, 0 on u (x) u~^-1."""
        v_mirror = TensorElement.monomial(self.theta1, -self.theta1, 0, 1, 0, -1)
        u_mirror = TensorElement.monomial(self.theta1, -self.theta1, 1, 0, -1, 0)
        regions = [FolnerRegion.interval(t) for t in (10, 100, 1000)]
        fixed_rows = self.service.disjointness_average(self.diag, v_mirror, self.mirror_flow, regions)
        assert all(row.value == 1 and row.limit == 1 for row in fixed_rows)
        decaying = self.service.disjointness_average(self.diag, u_mirror, self.mirror_flow, regions)
        for region, row in zip(regions, decaying):
            assert row.limit == 0
            assert row.abs_error <= 1 / (math.pi * (math.sqrt(2) - 1) * float(region.size))

    def test_target_joining_needs_mirror_for_flows(self):
        """kappa_D under a one-parameter flow has no designated limit."""
        flow = ActionSpec.pair(1, 1, SQRT2, SQRT3, GroupKind.R)
        with pytest.raises(ParameterError):
            self.service.target_joining(flow, self.kappa_d)
