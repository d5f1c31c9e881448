from __future__ import annotations

import math
from fractions import Fraction
from typing import FrozenSet, Sequence, Tuple, Union

import numpy as np
import structlog

from models.action_spec import ActionSpec, Frequency
from models.folner_region import FolnerRegion
from models.surd import ParameterError, SurdScalar, real_phase, unit_phase
from models.tensor_element import TensorElement
from models.torus_element import Monomial, TorusElement

Element = Union[TorusElement, TensorElement]
GroupCoordinate = Union[int, Fraction, SurdScalar, float]
GroupElement = Sequence[GroupCoordinate]

QUADRATURE_NODES = 10_001


def _exact(x: GroupCoordinate) -> bool:
    return isinstance(x, (int, Fraction, SurdScalar))


def pairing_phase(freq: Frequency, g: GroupElement) -> complex:
    """e^{2 pi i <freq, g>}.

    Exact range reduction when g is exact and shares the frequencies'
    quadratic field; floating point otherwise.
    """
    if all(_exact(x) for x in g):
        try:
            total = SurdScalar()
            for f, x in zip(freq, g):
                total = total + f * SurdScalar.of(x)
            return unit_phase(total)
        except ParameterError:
            pass
    return real_phase(math.fsum(float(f) * float(x) for f, x in zip(freq, g)))


def _axis_average(f: SurdScalar, lo: Fraction, hi: Fraction, discrete: bool) -> complex:
    if discrete:
        # (1/N) sum_{n=lo}^{hi} e(f n), geometric in closed form
        if f.is_integer:
            return 1 + 0j
        count = hi - lo + 1
        ratio = unit_phase(f)
        return unit_phase(f * lo) * (unit_phase(f * count) - 1) / (float(count) * (ratio - 1))
    if f.is_zero:
        return 1 + 0j
    width = float(hi - lo)
    return (unit_phase(f * hi) - unit_phase(f * lo)) / (2j * math.pi * float(f) * width)


def _simpson_weights(lo: float, hi: float, nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    if nodes < 3 or nodes % 2 == 0:
        raise ParameterError(f"Composite Simpson needs an odd node count >= 3, got {nodes}")
    x = np.linspace(lo, hi, nodes)
    weights = np.ones(nodes)
    weights[1:-1:2] = 4
    weights[2:-1:2] = 2
    return x, weights * (hi - lo) / (3 * (nodes - 1))


class DynamicsService:
    """Character actions, closed-form Følner averages and the fixed-point expectation."""

    def __init__(self):
        self.logger = structlog.get_logger("ncergo.dynamics")

    @staticmethod
    def check_group_element(g: GroupElement, spec: ActionSpec) -> Tuple[GroupCoordinate, ...]:
        g = tuple(g)
        if len(g) != spec.dimension:
            raise ParameterError(
                f"Group element {g} has dimension {len(g)}, action over {spec.group.value} needs {spec.dimension}"
            )
        if spec.group.discrete and not all(
            isinstance(x, int) or (_exact(x) and SurdScalar.of(x).is_integer) for x in g
        ):
            raise ParameterError(f"Group element {g} is not in Z")
        return g

    @staticmethod
    def check_region(region: FolnerRegion, spec: ActionSpec) -> None:
        if region.shape.group is not spec.group:
            raise ParameterError(
                f"A {region.shape.value} region averages over {region.shape.group.value}, "
                f"the action is over {spec.group.value}"
            )

    def apply_action(self, a: Element, g: GroupElement, spec: ActionSpec) -> Element:
        """alpha_g(a): each coefficient times the character at g; exponents unchanged.

        Raises:
            ParameterError: when g's dimension does not match the acting group
        """
        g = self.check_group_element(g, spec)
        return a.map_coefficients(lambda mono, c: c * pairing_phase(spec.frequency(mono), g))

    def char_average(self, freq: Union[SurdScalar, Frequency], region: FolnerRegion) -> complex:
        """(1/|region|) times the integral (or sum) of e^{2 pi i <freq, s>} over the region."""
        if isinstance(freq, SurdScalar):
            freq = (freq,)
        freq = tuple(SurdScalar.of(f) for f in freq)
        if len(freq) != region.dimension:
            raise ParameterError(
                f"Frequency of dimension {len(freq)} cannot be averaged over {region}"
            )
        lo, hi = region.axis_bounds()
        value = 1 + 0j
        for f in freq:
            value *= _axis_average(f, lo, hi, region.shape.discrete)
        return value

    def ergodic_average(self, a: Element, spec: ActionSpec, region: FolnerRegion) -> Element:
        """Følner average of g -> alpha_g(a) over the region, exact monomial by monomial."""
        self.check_region(region, spec)
        result = a.map_coefficients(
            lambda mono, c: c * self.char_average(spec.frequency(mono), region)
        )
        self.logger.debug("Ergodic average", region=str(region), terms=len(a), kept=len(result))
        return result

    def conditional_expectation(self, a: Element, spec: ActionSpec) -> Element:
        """Projection onto the fixed-point algebra: drop every non-fixed monomial."""
        return a.restrict(spec.is_fixed)

    def folner_defect(self, region: FolnerRegion, shift: GroupElement) -> float:
        """|region symmetric-difference (region + shift)| / |region|, exactly."""
        shift = tuple(shift)
        if len(shift) != region.dimension:
            raise ParameterError(f"Shift {shift} does not match region {region}")
        side = region.side()
        overlap: Union[Fraction, float] = Fraction(1)
        for h in shift:
            size = abs(Fraction(h)) if isinstance(h, (int, Fraction)) else abs(float(h))
            if region.shape.discrete and size != int(size):
                raise ParameterError(f"Integer ranges shift by integers, got {h}")
            overlap = overlap * max(0, 1 - size / side)
        return float(2 * (1 - overlap))

    def point_spectrum(self, spec: ActionSpec, window: int) -> FrozenSet[Frequency]:
        """Character frequencies of the monomials with |m|, |n| <= window.

        Over Z a frequency only matters modulo 1, so it is reported reduced to [0, 1).
        """
        if spec.is_pair:
            raise ParameterError("point_spectrum takes a single torus system; split pairs first")
        points = set()
        for m in range(-window, window + 1):
            for n in range(-window, window + 1):
                freq = spec.frequency(Monomial(m, n))
                if spec.group.discrete:
                    freq = tuple(f.frac() for f in freq)
                points.add(freq)
        return frozenset(points)

    def spectrum_intersection(self, spec: ActionSpec, window: int) -> FrozenSet[Frequency]:
        """Common eigenvalues of the two factors of a pair system."""
        return self.point_spectrum(spec.left_factor(), window) & self.point_spectrum(
            spec.right_factor(), window
        )

    def fixed_monomials(self, spec: ActionSpec, window: int) -> FrozenSet[Monomial]:
        return frozenset(
            Monomial(m, n)
            for m in range(-window, window + 1)
            for n in range(-window, window + 1)
            if spec.is_fixed(Monomial(m, n))
        )

    def quadrature_average(
        self,
        freq: Union[SurdScalar, Frequency],
        region: FolnerRegion,
        nodes: int = QUADRATURE_NODES,
    ) -> complex:
        """Numerical counterpart of char_average.

        Composite Simpson per axis for intervals and boxes (the tensor-product
        rule factorises for characters), direct summation for integer ranges.
        """
        if isinstance(freq, SurdScalar):
            freq = (freq,)
        if len(freq) != region.dimension:
            raise ParameterError(f"Frequency of dimension {len(freq)} cannot be averaged over {region}")
        lo, hi = region.axis_bounds()
        value = 1 + 0j
        for f in freq:
            rate = 2j * math.pi * float(f)
            if region.shape.discrete:
                points = np.arange(int(lo), int(hi) + 1, dtype=float)
                value *= complex(np.exp(rate * points).mean())
            else:
                x, weights = _simpson_weights(float(lo), float(hi), nodes)
                value *= complex(np.dot(weights, np.exp(rate * x))) / float(hi - lo)
        return value

    def shift_stability_gap(
        self, a: Element, spec: ActionSpec, region: FolnerRegion, shift: GroupElement
    ) -> float:
        """folner_defect * ||a||_1 - ||avg(a - alpha_h a)||_1; never negative."""
        moved = self.apply_action(a, shift, spec)
        lhs = self.ergodic_average(a - moved, spec, region).one_norm()
        return self.folner_defect(region, shift) * a.one_norm() - lhs

