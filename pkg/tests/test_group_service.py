import pytest
from hypothesis import given, settings, strategies as st

from models.dual_system import DualSystemConfig, S2Rule, increasing_cycles
from models.group_observable import GroupObservable
from models.surd import ParameterError
from models.word import Letter, Word
from services.group_service import GroupService

s1, s2, s3 = Letter.s(1), Letter.s(2), Letter.s(3)
t0, t5 = Letter.t(0), Letter.t(5)

letters = st.builds(
    lambda family, index, sign: Letter.s(index % 9 + 1, sign) if family else Letter.t(index, sign),
    st.booleans(),
    st.integers(min_value=-3, max_value=8),
    st.sampled_from([1, -1]),
)
words = st.lists(letters, max_size=6).map(lambda xs: Word(tuple(xs)))


class TestWord:
    """Free reduction and word algebra."""

    def test_reduction_examples(self):
        """s1 s1^-1 -> e; s1 s2 s2^-1 s1 -> s1 s1; s1 s2 stays."""
        service = GroupService()
        assert service.reduce([s1, s1.inverse()]).is_identity
        assert service.reduce([s1, s2, s2.inverse(), s1]) == Word.of(s1, s1)
        assert service.reduce([s1, s2]) == Word.of(s1, s2)

    def test_rendering(self):
        """Words print as letters with ^-1 for inverses, e for the identity."""
        assert str(Word.of(s1, Letter.t(-3, -1))) == "s1 t-3^-1"
        assert str(Word.identity()) == "e"

    @given(words, words)
    def test_inverse_and_product(self, w, x):
        """w w^-1 = e and (wx)^-1 = x^-1 w^-1."""
        assert (w * w.inverse()).is_identity
        assert (w * x).inverse() == x.inverse() * w.inverse()


class TestDualSystemConfig:
    """Letter permutations and the partner-mode constraints."""

    def test_increasing_cycles(self):
        """Cycle i has length i + 1 and the cycles tile s1..s9."""
        assert increasing_cycles(3) == ((1, 2), (3, 4, 5), (6, 7, 8, 9))
        config = DualSystemConfig.with_increasing_cycles(3)
        assert config.s1_size == 9
        config.validate_partner_mode()

    def test_overlapping_cycles_are_rejected(self):
        """A letter may appear in only one cycle."""
        with pytest.raises(ParameterError):
            DualSystemConfig(3, ((1, 2), (2, 3)), (), S2Rule.shift(), S2Rule.identity())

    def test_partner_mode_violations(self):
        """K must agree with T on S1, T must shift S2 and K must have finite S2 orbits."""
        cycles = increasing_cycles(2)
        with pytest.raises(ParameterError):
            DualSystemConfig(5, cycles, (), S2Rule.shift(), S2Rule.identity()).validate_partner_mode()
        with pytest.raises(ParameterError):
            DualSystemConfig(5, cycles, cycles, S2Rule.identity(), S2Rule.identity()).validate_partner_mode()
        with pytest.raises(ParameterError):
            DualSystemConfig(5, cycles, cycles, S2Rule.shift(), S2Rule.shift()).validate_partner_mode()

    def test_s2_cycles_rotate_blocks(self):
        """cycles:3 rotates {t0, t1, t2}, {t3, t4, t5}, ... and handles negatives."""
        rule = S2Rule.cycles(3)
        assert [rule.image(i, 1) for i in (0, 1, 2, 3, -1)] == [1, 2, 0, 4, -3]
        assert rule.image(4, 3) == 4

    def test_powers_are_constant_time(self):
        """A large power uses the cycle position, not repeated application."""
        config = DualSystemConfig.with_increasing_cycles(3)
        assert config.T.apply(Word.of(s3, t0), 10**9 + 1) == Word.of(Letter.s(5), Letter.t(10**9 + 1))


class TestGroupService:
    """Traces, correlations and the finite-orbit expectation."""

    def setup_method(self):
        self.service = GroupService()
        self.config = DualSystemConfig.with_increasing_cycles(3)

    def test_automorphism_examples(self):
        """T(s1 s2^-1) = s2 s1^-1 and T(t0 t5) = t1 t6."""
        T = self.config.T
        assert self.service.apply_automorphism(T, Word.of(s1, s2.inverse())) == Word.of(s2, s1.inverse())
        assert self.service.apply_automorphism(T, Word.of(t0, t5)) == Word.of(Letter.t(1), Letter.t(6))

    def test_trace_examples(self):
        """mu(1) = 1 and mu((l(s1) + l(s2)) l(s1^-1)) = 1."""
        unit = GroupObservable.unit()
        a = GroupObservable.l(Word.of(s1)) + GroupObservable.l(Word.of(s2))
        assert self.service.trace_product(unit, unit) == 1
        assert self.service.trace_product(a, GroupObservable.l(Word.of(s1.inverse()))) == 1

    @pytest.mark.parametrize(
        "g,h,limit",
        [
            (Word.of(s1), Word.of(s1.inverse()), 1),
            (Word.of(t0), Word.of(t0.inverse()), 0),
            (Word.of(s1, t0), Word.of(t0.inverse(), s1.inverse()), 0),
        ],
    )
    def test_conditional_limit_is_exact(self, g, h, limit):
        """Correlation averages equal mu(D(a) D(b)) with zero error for N in {1, 10, 100}."""
        rows = self.service.conditional_limit_experiment(
            GroupObservable.l(g), GroupObservable.l(h), self.config, [1, 10, 100]
        )
        assert [row.limit for row in rows] == [limit] * 3
        assert all(row.abs_error == 0 for row in rows)

    def test_experiment_requires_partner_mode(self):
        """A config where K shifts S2 is rejected."""
        config = DualSystemConfig.with_increasing_cycles(3, k_s2=S2Rule.shift())
        with pytest.raises(ParameterError):
            self.service.conditional_limit_experiment(GroupObservable.unit(), GroupObservable.unit(), config, [1])

    def test_correlation_needs_positive_n(self):
        """N = 0 is not an average."""
        with pytest.raises(ParameterError):
            self.service.correlation_average(GroupObservable.unit(), GroupObservable.unit(), self.config, 0)

    def test_finite_orbit_expectation(self):
        """D keeps s-words and drops anything containing a shifted t-letter."""
        a = (
            GroupObservable.l(Word.of(s1, s3))
            + GroupObservable.l(Word.of(t0), 2)
            + GroupObservable.l(Word.identity(), 3)
        )
        expected = GroupObservable.l(Word.of(s1, s3)) + GroupObservable.l(Word.identity(), 3)
        assert self.service.finite_orbit_expectation(a, self.config) == expected

    def test_mixing_hits_once(self):
        """T^n t0 = t5 only at n = 5; the Cesàro mean is at most 1/N."""
        hits = self.service.mixing_decay(Word.of(t0), Word.of(t5), self.config, 40)
        assert sum(hits) == 1 and hits[4] == 1
        for n in range(1, 41):
            assert sum(hits[:n]) / n <= 1 / n

    def test_periodic_words_return(self):
        """s1 lies on a 2-cycle, so T^n s1 = s1 exactly for even n."""
        hits = self.service.mixing_decay(Word.of(s1), Word.of(s1), self.config, 12)
        assert hits == [int(n % 2 == 0) for n in range(1, 13)]

    def test_orbit_periods_match_cycle_lengths(self):
        """Each s_i returns after its cycle length; t0 never returns."""
        for cycle in self.config.t_cycles:
            for index in cycle:
                assert self.service.orbit_period(Word.of(Letter.s(index)), self.config.T) == len(cycle)
        assert self.service.orbit_period(Word.of(t0), self.config.T, bound=500) is None
        assert self.config.T.letter_orbit_length(t0) is None

    @given(words)
    @settings(max_examples=50, deadline=None)
    def test_automorphism_preserves_structure(self, w):
        """Letterwise images keep length and commute with inversion."""
        image = self.service.apply_automorphism(self.config.T, w)
        assert len(image) == len(w)
        assert self.service.apply_automorphism(self.config.T, w.inverse()) == image.inverse()

    @given(words, words, words)
    @settings(max_examples=50, deadline=None)
    def test_trace_is_tracial(self, w, x, y):
        """mu(ab) = mu(ba)."""
        a = GroupObservable.l(w) + GroupObservable.l(x, 2j)
        b = GroupObservable.l(y) + GroupObservable.l(w.inverse(), 0.5)
        assert self.service.trace_product(a, b) == pytest.approx(self.service.trace_product(b, a))

    @given(words)
    @settings(max_examples=50, deadline=None)
    def test_expectation_commutes_with_action(self, w):
        """D(alpha(a)) = alpha(D(a)) and D is idempotent."""
        a = GroupObservable.l(w) + GroupObservable.unit()
        d = self.service.finite_orbit_expectation(a, self.config)
        assert self.service.finite_orbit_expectation(d, self.config) == d
        pushed = self.service.push(a, self.config.T, 3)
        assert self.service.finite_orbit_expectation(pushed, self.config) == self.service.push(d, self.config.T, 3)
