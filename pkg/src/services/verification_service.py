from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np
import structlog

from models.action_spec import ActionSpec, GroupKind
from models.dual_system import DualSystemConfig
from models.folner_region import FolnerRegion
from models.group_observable import GroupObservable
from models.reports import InvariantResult
from models.state_functional import FunctionalKind, StateFunctional
from models.surd import ParameterError, SurdScalar, unit_phase
from models.tensor_element import TensorElement, TensorMonomial
from models.torus_element import Monomial, TorusElement, monomial_mul
from models.word import Letter, Word
from services.dynamics_service import DynamicsService
from services.group_service import GroupService
from services.joining_service import JoiningService
from services.oracle_service import DEFAULT_TRUNCATION, OracleService, TruncationRangeError

EXACT = 1e-12
ORACLE = 1e-9

SQRT2 = SurdScalar.sqrt(2)
SQRT3 = SurdScalar.sqrt(3)
FIFTH = SurdScalar(Fraction(1, 5))
THIRD = SurdScalar(Fraction(1, 3))

COMMUTATION_THETAS = (
    SurdScalar(Fraction(0)),
    SurdScalar(Fraction(1, 4)),
    THIRD,
    SurdScalar(Fraction(1, 2), Fraction(1, 5), 2),
)
ORACLE_THETAS = (FIFTH, SurdScalar(Fraction(0), Fraction(1, 2), 2))


def _normalised(element):
    norm = element.one_norm()
    return element if norm == 0 else element.scale(1 / norm)


def _flag(ok: bool) -> float:
    return 0.0 if ok else 1.0


def _worst(values: Iterable[float]) -> float:
    return max(values, default=0.0)


class VerificationService:
    """Property suites over seeded samples; every check becomes one PASS/FAIL line."""

    SUITES = ("algebra", "oracle", "dynamics", "joinings", "group", "spectrum")

    def __init__(
        self,
        seed: int = 0,
        truncation: int = DEFAULT_TRUNCATION,
        oracle_samples: int = 100,
        dynamics: Optional[DynamicsService] = None,
        joinings: Optional[JoiningService] = None,
        group: Optional[GroupService] = None,
    ):
        self.logger = structlog.get_logger("ncergo.verify")
        self.seed = seed
        self.truncation = truncation
        self.oracle_samples = oracle_samples
        self.dynamics = dynamics or DynamicsService()
        self.joinings = joinings or JoiningService(self.dynamics)
        self.group = group or GroupService()

    def _rng(self, suite: str) -> np.random.Generator:
        return np.random.default_rng([self.seed, self.SUITES.index(suite)])

    def run(self, suites: Optional[Sequence[str]] = None) -> List[InvariantResult]:
        """Run the named suites (all by default) in their canonical order."""
        selected = list(self.SUITES) if not suites else list(suites)
        unknown = [s for s in selected if s not in self.SUITES]
        if unknown:
            raise ParameterError(f"Unknown suite(s) {unknown}; choose from {list(self.SUITES)}")
        runners: Dict[str, Callable[[], List[InvariantResult]]] = {
            "algebra": self.algebra,
            "oracle": self.oracle,
            "dynamics": self.dynamics_suite,
            "joinings": self.joinings_suite,
            "group": self.group_suite,
            "spectrum": self.spectrum,
        }
        results: List[InvariantResult] = []
        for suite in self.SUITES:
            if suite in selected:
                try:
                    outcome = runners[suite]()
                except TruncationRangeError as e:
                    self.logger.error("Suite needs a larger truncation", suite=suite, truncation=self.truncation)
                    outcome = [InvariantResult(suite, "truncation-range", math.inf, 0.0, [str(e)])]
                failed = sum(not r.passed for r in outcome)
                self.logger.info("Suite finished", suite=suite, checks=len(outcome), failed=failed)
                results.extend(outcome)
        return results

    # -- algebra ---------------------------------------------------------------------

    def algebra(self) -> List[InvariantResult]:
        rng = self._rng("algebra")
        results = []

        def add(name, deviation, tolerance=EXACT):
            results.append(InvariantResult("algebra", name, float(deviation), tolerance))

        add("commutation", _worst(
            (TorusElement.u(t) * TorusElement.v(t)
             - (TorusElement.v(t) * TorusElement.u(t)).scale(unit_phase(t))).one_norm()
            for t in COMMUTATION_THETAS
        ))
        phase, product = monomial_mul(Monomial(0, 2), Monomial(3, 0), SurdScalar(Fraction(1, 4)))
        add("monomial-twist", abs(phase + 1) + _flag(product == Monomial(3, 2)))
        add("adjoint-uv", _worst(
            (TorusElement.monomial(t, 1, 1).adjoint()
             - TorusElement.monomial(t, -1, -1, unit_phase(-t))).one_norm()
            for t in ORACLE_THETAS
        ))
        t = ORACLE_THETAS[1]
        a = TorusElement.u(t) + TorusElement.v(t)
        add("trace-u-plus-v", abs((a.adjoint() * a).trace() - 2))

        involution, associativity, traciality, positivity = [], [], [], []
        for _ in range(20):
            for t in ORACLE_THETAS:
                a, b, c = (_normalised(TorusElement.random(t, rng, radius=3, terms=5)) for _ in range(3))
                involution.append(a.adjoint().adjoint().distance(a))
                associativity.append(((a * b) * c).distance(a * (b * c)))
                traciality.append(abs((a * b).trace() - (b * a).trace()))
                value = (a.adjoint() * a).trace()
                positivity.append(max(0.0, -value.real, abs(value.imag)))
        add("involution", _worst(involution))
        add("associativity", _worst(associativity))
        add("traciality", _worst(traciality))
        add("positivity", _worst(positivity))

        zero = SurdScalar()
        commutative = []
        for _ in range(20):
            a, b = (_normalised(TorusElement.random(zero, rng, radius=3, terms=5)) for _ in range(2))
            commutative.append((a * b).distance(b * a))
        add("commutative-degeneration", _worst(commutative))
        return results

    # -- oracle ------------------------------------------------------------------------

    def oracle_equivalence(
        self, theta: SurdScalar, truncation: int, samples: int, seed: int
    ) -> List[InvariantResult]:
        """mul, adjoint and trace against the truncated matrices for one theta."""
        oracle = OracleService(truncation)
        rng = np.random.default_rng(seed)
        mul, adjoint, trace = [], [], []
        radius = min(4, truncation // 2)
        for _ in range(samples):
            a = TorusElement.random(theta, rng, radius=radius, terms=12)
            b = TorusElement.random(theta, rng, radius=radius, terms=12)
            deviations = oracle.compare(a, b)
            mul.append(deviations[0])
            adjoint.append(deviations[1])
            trace.append(deviations[2])
        return [
            InvariantResult("oracle", "mul", _worst(mul), ORACLE, [f"theta={theta}"]),
            InvariantResult("oracle", "adjoint", _worst(adjoint), ORACLE, [f"theta={theta}"]),
            InvariantResult("oracle", "trace", _worst(trace), ORACLE, [f"theta={theta}"]),
        ]

    def oracle(self) -> List[InvariantResult]:
        results = []
        for index, theta in enumerate(ORACLE_THETAS):
            for result in self.oracle_equivalence(
                theta, self.truncation, self.oracle_samples, self.seed + index
            ):
                result.invariant_id = f"{result.invariant_id}-theta{index}"
                results.append(result)

        oracle = OracleService(2)
        entry = oracle.matrix_rep(TorusElement.u(FIFTH)).entry((1, 1), (0, 1))
        results.append(InvariantResult("oracle", "u-entry", abs(entry - cmath.exp(1j * math.pi / 5)), EXACT))

        oracle = OracleService(self.truncation)
        uv = oracle.matrix_rep(TorusElement.monomial(FIFTH, 1, 1))
        results.append(InvariantResult("oracle", "vacuum-kills-uv", abs(uv.vector_state()), EXACT))
        unitary = all(
            oracle.matrix_rep(gen(FIFTH)).is_unitary_on(1) for gen in (TorusElement.u, TorusElement.v)
        )
        results.append(InvariantResult("oracle", "interior-unitary", _flag(unitary), 0.0))

        mirror = []
        for gen in (TorusElement.u, TorusElement.v):
            for mirrored in (TorusElement.u, TorusElement.v):
                x = oracle.matrix_rep(gen(FIFTH)).matrix
                y = oracle.matrix_rep(mirrored(-FIFTH)).matrix
                cols = oracle.matrix_rep(gen(FIFTH)).interior_indices(1)
                mirror.append(float(np.abs((x @ y - y @ x)[:, cols]).max()))
        results.append(InvariantResult("oracle", "mirror-commutes", _worst(mirror), EXACT))
        return results

    # -- dynamics ----------------------------------------------------------------------

    def dynamics_suite(self) -> List[InvariantResult]:
        rng = self._rng("dynamics")
        dyn = self.dynamics
        results = []

        def add(name, deviation, tolerance=EXACT):
            results.append(InvariantResult("dynamics", name, float(deviation), tolerance))

        torus = ActionSpec.torus(1, 1, GroupKind.R2)
        box = FolnerRegion.box(1000)
        excess = []
        for m in range(-4, 5):
            for n in range(-4, 5):
                mono = TorusElement.monomial(FIFTH, m, n)
                average = dyn.ergodic_average(mono, torus, box)
                if (m, n) == (0, 0):
                    excess.append(average.distance(mono))
                else:
                    bound = 1 / (math.pi * max(abs(m), abs(n)) * 1000)
                    excess.append(max(0.0, average.one_norm() - bound))
        add("unique-ergodicity", _worst(excess))

        half = dyn.char_average(SurdScalar(Fraction(1, 2)), FolnerRegion.interval(1))
        add("half-frequency", abs(half - 2j / math.pi))
        add("half-frequency-quadrature",
            abs(half - dyn.quadrature_average(SurdScalar(Fraction(1, 2)), FolnerRegion.interval(1))), 1e-10)
        add("full-period", abs(dyn.char_average(SurdScalar(Fraction(1)), FolnerRegion.interval(1))))

        # alpha_s = tau_{s,0}: only u carries frequency
        flow = ActionSpec.torus(1, 1, GroupKind.R)
        long_interval = FolnerRegion.interval(10_000)
        basket = [_normalised(TorusElement.random(FIFTH, rng, radius=4, terms=8)) for _ in range(20)]
        limit_gap, projection = [], []
        for a in basket:
            e = dyn.conditional_expectation(a, flow)
            limit_gap.append(dyn.ergodic_average(a, flow, long_interval).distance(e))
            g = (Fraction(int(rng.integers(-50, 50)), int(rng.integers(1, 9))),)
            projection.append(max(
                e.distance(dyn.conditional_expectation(e, flow)),
                dyn.conditional_expectation(dyn.apply_action(a, g, flow), flow).distance(e),
                dyn.apply_action(e, g, flow).distance(e),
                max(0.0, e.one_norm() - a.one_norm()),
            ))
        add("expectation-limit", _worst(limit_gap), 1e-3)
        add("expectation-projection", _worst(projection))
        unit = TorusElement.unit(FIFTH)
        add("expectation-unital", dyn.conditional_expectation(unit, flow).distance(unit))
        sample = TorusElement.from_terms(FIFTH, {(2, 1): 1, (0, 2): 3})
        expected = TorusElement.monomial(FIFTH, 0, 2, 3)
        add("expectation-example", dyn.conditional_expectation(sample, flow).distance(expected))
        add("expectation-example-average",
            dyn.ergodic_average(sample, flow, long_interval).distance(expected), 1e-3)
        fixed = dyn.fixed_monomials(flow, 4)
        add("fixed-generated-by-v", _flag(fixed == {Monomial(0, n) for n in range(-4, 5)}), 0.0)

        spec = ActionSpec.torus(1, SQRT2, GroupKind.R2)
        adjoint_gap, translation = [], []
        for _ in range(50):
            a = _normalised(TorusElement.random(FIFTH, rng, radius=3, terms=6))
            region = FolnerRegion.box(int(rng.integers(1, 100)), Fraction(int(rng.integers(-9, 9)), 2))
            adjoint_gap.append(
                dyn.ergodic_average(a, spec, region).adjoint().distance(
                    dyn.ergodic_average(a.adjoint(), spec, region)
                )
            )
            f = SurdScalar(
                Fraction(int(rng.integers(-20, 20)), int(rng.integers(1, 10))),
                Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 5))),
                2,
            )
            start = Fraction(int(rng.integers(-30, 30)), int(rng.integers(1, 5)))
            h = Fraction(int(rng.integers(-30, 30)), int(rng.integers(1, 5)))
            size = Fraction(int(rng.integers(1, 50)), int(rng.integers(1, 4)))
            lhs = dyn.char_average(f, FolnerRegion.interval(size, start))
            rhs = unit_phase(f * h) * dyn.char_average(f, FolnerRegion.interval(size, start - h))
            translation.append(abs(lhs - rhs))
        add("adjoint-average", _worst(adjoint_gap))
        add("translation-identity", _worst(translation))

        stability = []
        for _ in range(20):
            a = _normalised(TorusElement.random(FIFTH, rng, radius=3, terms=6))
            region = FolnerRegion.box(int(rng.integers(1, 20)))
            shift = tuple(Fraction(int(rng.integers(-40, 40)), 4) for _ in range(2))
            stability.append(max(0.0, -dyn.shift_stability_gap(a, spec, region, shift)))
        add("shift-stability", _worst(stability))

        defects = [
            abs(dyn.folner_defect(FolnerRegion.interval(size), (3,)) - 2 * 3 / size)
            for size in (3, 5, 10, 100)
        ]
        sequence = [dyn.folner_defect(FolnerRegion.interval(size), (3,)) for size in (3, 5, 10, 100, 1000)]
        monotone = all(x > y for x, y in zip(sequence, sequence[1:]))
        add("folner-defect", _worst(defects) + _flag(monotone))
        return results

    # -- joinings -----------------------------------------------------------------------

    def joinings_suite(self) -> List[InvariantResult]:
        rng = self._rng("joinings")
        joins = self.joinings
        results = []

        def add(name, deviation, tolerance=EXACT):
            results.append(InvariantResult("joinings", name, float(deviation), tolerance))

        def functional(kind: FunctionalKind) -> StateFunctional:
            if kind.mirrored:
                return StateFunctional.mirror(kind, FIFTH)
            return StateFunctional(kind, FIFTH, THIRD)

        kinds = list(FunctionalKind)
        add("unit-value", _worst(abs(joins.unit_value(functional(k)) - 1) for k in kinds))
        add("marginals", _worst(joins.marginal_check(functional(k), 8).max_deviation for k in kinds), 0.0)

        kappa_d, product = functional(FunctionalKind.KAPPA_D), functional(FunctionalKind.PRODUCT_TRACE)
        v_z = TensorElement.monomial(FIFTH, THIRD, 0, 1, 0, -1)
        add("kappa-d-example",
            abs(joins.state_eval(kappa_d, v_z) - 1) + abs(joins.state_eval(product, v_z))
            + abs(joins.state_eval(kappa_d, TensorElement.monomial(FIFTH, THIRD, 1, 1, 0, -1))))
        diag, rel = functional(FunctionalKind.KAPPA_DIAG), functional(FunctionalKind.OMEGA_REL)
        u_mirror = TensorElement.monomial(FIFTH, -FIFTH, 1, 0, -1, 0)
        add("kappa-diag-example",
            abs(joins.state_eval(diag, u_mirror) - 1) + abs(joins.state_eval(rel, u_mirror)))

        # two-parameter coupling with irrational ratios
        pair = ActionSpec.pair(1, 1, SQRT2, SQRT3)
        f = 1 - math.sqrt(3)
        value = joins.averaged_value(kappa_d, v_z, pair, FolnerRegion.box(1000))
        closed = (cmath.exp(2j * math.pi * f * 1000) - 1) / (2j * math.pi * f * 1000)
        add("coupling-bound", max(0.0, abs(value) - 1 / (math.pi * (math.sqrt(3) - 1) * 1000)))
        add("coupling-closed-form", abs(value - closed))
        add("coupling-quadrature", abs(
            joins.averaged_value(kappa_d, v_z, pair, FolnerRegion.box(10))
            - joins.disjointness_quadrature(kappa_d, v_z, pair, FolnerRegion.box(10))
        ), 1e-8)
        rows = joins.disjointness_average(
            kappa_d, v_z, pair, [FolnerRegion.box(size) for size in (1, 10, 100, 1000)]
        )
        add("coupling-limit", _worst(abs(row.limit) for row in rows))

        # one-parameter mirror system
        flow = ActionSpec.pair(1, 1, SQRT2, 1, GroupKind.R)
        v_mirror = TensorElement.monomial(FIFTH, -FIFTH, 0, 1, 0, -1)
        rows = joins.disjointness_average(
            diag, v_mirror, flow, [FolnerRegion.interval(size) for size in (1, 10, 100, 1000)]
        )
        mirror_product = StateFunctional(FunctionalKind.PRODUCT_TRACE, FIFTH, -FIFTH)
        add("mirror-nonproduct-limit",
            _worst(abs(row.value - 1) + abs(row.limit - 1) for row in rows)
            + abs(joins.state_eval(mirror_product, v_mirror)))
        decay = []
        for size in (10, 100, 1000):
            row = joins.disjointness_average(diag, u_mirror, flow, [FolnerRegion.interval(size)])[0]
            decay.append(max(0.0, row.abs_error - 1 / (math.pi * (math.sqrt(2) - 1) * size)) + abs(row.limit))
        add("mirror-decay", _worst(decay))

        generic = ActionSpec.pair(1, 1, SQRT2, SQRT3)
        corner = TensorElement.monomial(FIFTH, -FIFTH, 1, 1, -1, -1)
        f1, f2 = 1 - math.sqrt(2), 1 - math.sqrt(3)
        envelope = []
        for size in (10, 100, 1000):
            row = joins.disjointness_average(diag, corner, generic, [FolnerRegion.box(size)])[0]
            envelope.append(max(0.0, row.abs_error - 1 / (math.pi**2 * abs(f1 * f2) * size**2)))
        add("box-decay", _worst(envelope))

        oracle = OracleService(self.truncation)
        # coupled kinds fold c* c onto one lattice, so its support reaches 4 * radius
        radius = max(1, min(3, self.truncation // 4))
        positivity, agreement = [], []
        relative = []
        for _ in range(100):
            for kind in kinds:
                fn = functional(kind)
                c = _normalised(TensorElement.random(fn.theta1, fn.theta2, rng, radius=radius, terms=6))
                square = c.adjoint() * c
                value = joins.state_eval(fn, square)
                positivity.append(max(0.0, -value.real, abs(value.imag)))
                agreement.append(abs(value - oracle.vacuum_expectation(fn, square)))
                if kind in (FunctionalKind.PRODUCT_TRACE, FunctionalKind.KAPPA_DIAG):
                    agreement.append(abs(value - oracle.vacuum_norm_squared(fn, c)))
                if kind is FunctionalKind.OMEGA_REL:
                    relative.append(abs(
                        joins.state_eval(fn, c) - joins.state_eval(diag, joins.relative_expectation(c))
                    ))
        add("positivity", _worst(positivity))
        add("oracle-agreement", _worst(agreement), ORACLE)
        add("relative-factorisation", _worst(relative))

        add("kernel-irrational-box", _flag(joins.kernel_certificate(pair, 8).only_unit), 0.0)
        add("kernel-mirror-flow", _flag(joins.kernel_certificate(flow, 8).only_vz), 0.0)
        rational = joins.kernel_certificate(ActionSpec.pair(1, 1, 2, 1), 2)
        add("kernel-rational", _flag(any(m.j == 2 and m.l == -1 for m in rational.fixed)), 0.0)

        samples = [(Fraction(int(rng.integers(-20, 20)), 3), Fraction(int(rng.integers(-20, 20)), 7)) for _ in range(5)]
        add("invariance-product",
            joins.invariance_check(product, pair, samples, 2).max_deviation)
        add("invariance-relative",
            joins.invariance_check(rel, flow, [(s[0],) for s in samples], 2).max_deviation)
        report = joins.invariance_check(
            StateFunctional(FunctionalKind.KAPPA_D, FIFTH, THIRD), pair, [(0, Fraction(1, 4))], 2
        )
        expected = unit_phase((1 - SQRT3) / 4)
        add("kappa-d-witness",
            _flag(report.witness == TensorMonomial(0, 1, 0, -1) and not report.invariant)
            + abs((report.witness_value or 0) - expected))
        return results

    # -- group -----------------------------------------------------------------------------

    def _random_word(self, rng: np.random.Generator, s1_size: int) -> Word:
        letters = []
        for _ in range(int(rng.integers(0, 7))):
            sign = 1 if rng.random() < 0.5 else -1
            if rng.random() < 0.5:
                letters.append(Letter.s(int(rng.integers(1, s1_size + 1)), sign))
            else:
                letters.append(Letter.t(int(rng.integers(-3, 4)), sign))
        return Word(tuple(letters))

    def group_suite(self) -> List[InvariantResult]:
        rng = self._rng("group")
        grp = self.group
        config = DualSystemConfig.with_increasing_cycles(3)
        results = []

        def add(name, deviation, tolerance=0.0):
            results.append(InvariantResult("group", name, float(deviation), tolerance))

        s1, s2, t0 = Letter.s(1), Letter.s(2), Letter.t(0)
        add("reduce-examples", _flag(
            grp.reduce([s1, s1.inverse()]).is_identity
            and grp.reduce([s1, s2, s2.inverse(), s1]) == Word.of(s1, s1)
            and grp.reduce([s1, s2]) == Word.of(s1, s2)
        ))
        add("automorphism-examples", _flag(
            grp.apply_automorphism(config.T, Word.of(s1, s2.inverse())) == Word.of(s2, s1.inverse())
            and grp.apply_automorphism(config.T, Word.of(t0, Letter.t(5))) == Word.of(Letter.t(1), Letter.t(6))
        ))
        unit = GroupObservable.unit()
        add("trace-examples", abs(grp.trace_product(unit, unit) - 1)
            + abs(grp.trace_product(GroupObservable.l(Word.of(s1)) + GroupObservable.l(Word.of(s2)),
                                    GroupObservable.l(Word.of(s1.inverse()))) - 1))

        structural, tracial, projection = [], [], []
        for _ in range(50):
            w = self._random_word(rng, config.s1_size)
            image = grp.apply_automorphism(config.T, w)
            structural.append(_flag(
                len(image) == len(w)
                and grp.reduce(w.letters) == w
                and grp.apply_automorphism(config.T, w.inverse()) == image.inverse()
            ))
            a = GroupObservable({self._random_word(rng, config.s1_size): complex(rng.standard_normal())
                                 for _ in range(4)})
            b = GroupObservable({self._random_word(rng, config.s1_size): complex(rng.standard_normal())
                                 for _ in range(4)} | {w.inverse(): 1})
            tracial.append(abs(grp.trace_product(a, b) - grp.trace_product(b, a)))
            d = grp.finite_orbit_expectation(a, config)
            projection.append(_flag(
                grp.finite_orbit_expectation(d, config) == d
                and grp.finite_orbit_expectation(grp.push(a, config.T, 1), config) == grp.push(d, config.T, 1)
                and abs(grp.trace_product(d, unit) - grp.trace_product(a, unit)) <= EXACT
            ))
        add("structure", _worst(structural))
        add("tracial", _worst(tracial), EXACT)
        add("expectation-projection", _worst(projection))
        add("expectation-unital", _flag(grp.finite_orbit_expectation(unit, config) == unit))

        pairs = [
            (Word.of(s1), Word.of(s1.inverse())),
            (Word.of(t0), Word.of(t0.inverse())),
            (Word.of(s1, t0), Word.of(t0.inverse(), s1.inverse())),
        ]
        errors = []
        for g, h in pairs:
            rows = grp.conditional_limit_experiment(
                GroupObservable.l(g), GroupObservable.l(h), config, [1, 10, 100]
            )
            errors.extend(row.abs_error for row in rows)
        add("conditional-limit", _worst(errors))

        hits = grp.mixing_decay(Word.of(t0), Word.of(Letter.t(5)), config, 50)
        cesaro = [max(0.0, sum(hits[:n]) / n - 1 / n) for n in range(1, 51)]
        add("mixing-single-hit", _flag(sum(hits) == 1 and hits[4] == 1) + _worst(cesaro))
        periodic = grp.mixing_decay(Word.of(s1), Word.of(s1), config, 20)
        add("mixing-periodic", _flag(periodic == [int(n % 2 == 0) for n in range(1, 21)]))
        add("mixing-partition", _flag(not any(grp.mixing_decay(Word.of(t0), Word.of(s1), config, 20))))

        periods = []
        for cycle in config.t_cycles:
            for index in cycle:
                periods.append(_flag(grp.orbit_period(Word.of(Letter.s(index)), config.T) == len(cycle)))
        periods.append(_flag(grp.orbit_period(Word.of(t0), config.T, bound=1000) is None))
        add("orbit-periods", _worst(periods))
        return results

    # -- spectrum ----------------------------------------------------------------------------

    def spectrum(self) -> List[InvariantResult]:
        dyn = self.dynamics
        two = SurdScalar(Fraction(2))
        zero = SurdScalar()
        results = [
            InvariantResult("spectrum", "lattice", _flag(
                dyn.point_spectrum(ActionSpec.torus(1, 1), 1)
                == {(SurdScalar(Fraction(m)), SurdScalar(Fraction(n))) for m in (-1, 0, 1) for n in (-1, 0, 1)}
            ), 0.0),
            InvariantResult("spectrum", "irrational-disjoint", _flag(
                dyn.spectrum_intersection(ActionSpec.pair(1, 1, SQRT2, SQRT3), 8) == {(zero, zero)}
            ), 0.0),
            InvariantResult("spectrum", "rational-overlap", _flag(
                (two, two) in dyn.spectrum_intersection(ActionSpec.pair(1, 1, 2, 1), 2)
            ), 0.0),
        ]
        return results
