import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from models.surd import ParameterError, SurdScalar, unit_phase
from models.torus_element import Monomial, TorusElement, monomial_adjoint, monomial_mul

THETAS = [
    SurdScalar(Fraction(0)),
    SurdScalar(Fraction(1, 4)),
    SurdScalar(Fraction(1, 3)),
    SurdScalar(Fraction(1, 2), Fraction(1, 5), 2),
]

exponents = st.integers(min_value=-4, max_value=4)
coefficients = st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False)
elements = st.dictionaries(st.tuples(exponents, exponents), coefficients, max_size=5)


def normalised(element):
    norm = element.one_norm()
    return element if norm == 0 else element.scale(1 / norm)


class TestTorusElement:
    """Contract tests for the quantum torus *-algebra."""

    def setup_method(self):
        self.theta = SurdScalar(Fraction(1, 2), Fraction(1, 5), 2)
        self.rng = np.random.default_rng(7)

    @pytest.mark.parametrize("theta", THETAS)
    def test_generators_commute_up_to_phase(self, theta):
        """uv = e^{2 pi i theta} vu."""
        u, v = TorusElement.u(theta), TorusElement.v(theta)
        assert (u * v).distance((v * u).scale(unit_phase(theta))) <= 1e-12

    def test_monomial_product_phase(self):
        """(v^2)(u^3) = e^{-2 pi i theta 6} u^3 v^2; at theta = 1/4 that is -1."""
        phase, product = monomial_mul(Monomial(0, 2), Monomial(3, 0), SurdScalar(Fraction(1, 4)))
        assert product == Monomial(3, 2)
        assert abs(phase + 1) <= 1e-12

    def test_adjoint_of_uv(self):
        """(uv)* = e^{-2 pi i theta} u^-1 v^-1."""
        phase, image = monomial_adjoint(Monomial(1, 1), self.theta)
        assert image == Monomial(-1, -1)
        assert abs(phase - cmath.exp(-2j * math.pi * float(self.theta))) <= 1e-12

    def test_trace_of_square(self):
        """tr((u+v)*(u+v)) = 2."""
        a = TorusElement.u(self.theta) + TorusElement.v(self.theta)
        assert abs((a.adjoint() * a).trace() - 2) <= 1e-12

    def test_mismatched_parameters_are_rejected(self):
        """Elements with different theta never combine."""
        with pytest.raises(ParameterError):
            TorusElement.u(Fraction(1, 5)) * TorusElement.v(Fraction(1, 3))
        with pytest.raises(ParameterError):
            TorusElement.u(Fraction(1, 5)) + TorusElement.v(Fraction(1, 3))

    def test_scalars_act_on_the_unit(self):
        """a + 2 adds 2 to the unit coefficient."""
        a = TorusElement.u(self.theta) + 2
        assert a.trace() == 2
        assert a.coefficient(Monomial(1, 0)) == 1

    def test_rounding_dust_is_pruned(self):
        """Coefficients below the prune threshold vanish."""
        a = TorusElement.from_terms(self.theta, {(1, 0): 1e-17, (0, 1): 1})
        assert a.support() == (Monomial(0, 1),)

    def test_random_is_seeded(self):
        """Same seed, same element."""
        a = TorusElement.random(self.theta, np.random.default_rng(3), radius=2, terms=5)
        b = TorusElement.random(self.theta, np.random.default_rng(3), radius=2, terms=5)
        assert a == b
        assert len(a) == 5
        assert a.support_radius() <= 2

    def test_seeded_samples_satisfy_ring_axioms(self):
        """Associativity, involution, traciality and positivity on seeded samples."""
        for _ in range(20):
            a, b, c = (normalised(TorusElement.random(self.theta, self.rng, radius=3, terms=5)) for _ in range(3))
            assert ((a * b) * c).distance(a * (b * c)) <= 1e-12
            assert (a * b).adjoint().distance(b.adjoint() * a.adjoint()) <= 1e-12
            assert abs((a * b).trace() - (b * a).trace()) <= 1e-12
            value = (a.adjoint() * a).trace()
            assert value.real >= -1e-12
            assert abs(value.imag) <= 1e-12

    @given(elements, elements)
    @settings(max_examples=50, deadline=None)
    def test_commutative_at_theta_zero(self, x, y):
        """theta = 0 gives the commutative torus."""
        a, b = TorusElement(0, x), TorusElement(0, y)
        assert (a * b).distance(b * a) <= 1e-12

    @given(elements)
    @settings(max_examples=50, deadline=None)
    def test_involution(self, x):
        """a** = a."""
        a = TorusElement(self.theta, x)
        assert a.adjoint().adjoint().distance(a) <= 1e-12

    @given(elements, elements)
    @settings(max_examples=50, deadline=None)
    def test_trace_is_tracial(self, x, y):
        """tr(ab) = tr(ba)."""
        a, b = TorusElement(self.theta, x), TorusElement(self.theta, y)
        assert abs((a * b).trace() - (b * a).trace()) <= 1e-12
