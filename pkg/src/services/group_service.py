from __future__ import annotations

from typing import Iterable, List, Optional

import structlog

from models.dual_system import Automorphism, DualSystemConfig
from models.experiment import ResultRow
from models.group_observable import GroupObservable
from models.surd import ParameterError
from models.word import Letter, Word, reduce as reduce_letters

ORBIT_PERIOD_BOUND = 10_000


class GroupService:
    """Dual systems on the free group: traces, correlations and the finite-orbit factor."""

    def __init__(self):
        self.logger = structlog.get_logger("ncergo.group")

    def reduce(self, letters: Iterable[Letter]) -> Word:
        return reduce_letters(letters)

    def apply_automorphism(self, automorphism: Automorphism, word: Word, power: int = 1) -> Word:
        """Letterwise image under the power-th iterate."""
        return automorphism.apply(word, power)

    def push(self, a: GroupObservable, automorphism: Automorphism, power: int) -> GroupObservable:
        """l(g) -> l(A^power g)."""
        return a.map_words(lambda word: automorphism.apply(word, power))

    def trace_product(self, a: GroupObservable, b: GroupObservable) -> complex:
        """mu(ab) = sum over g of a(g) b(g^-1)."""
        return complex(sum(c * b.coefficient(word.inverse()) for word, c in a.terms()))

    def correlation_average(
        self, a: GroupObservable, b: GroupObservable, config: DualSystemConfig, n: int
    ) -> complex:
        """(1/N) sum_{n=1}^{N} mu(alpha^n(a) beta^n(b)), summed in increasing n."""
        if n < 1:
            raise ParameterError(f"N must be positive, got {n}")
        total = 0j
        for step in range(1, n + 1):
            total += self.trace_product(self.push(a, config.T, step), self.push(b, config.K, step))
        return total / n

    def finite_orbit_expectation(self, a: GroupObservable, config: DualSystemConfig) -> GroupObservable:
        """Keep the words whose T-orbit is finite, i.e. whose letters all have finite orbits."""
        return a.restrict(config.T.has_finite_orbit)

    def conditional_limit_experiment(
        self,
        a: GroupObservable,
        b: GroupObservable,
        config: DualSystemConfig,
        sizes: Iterable[int],
    ) -> List[ResultRow]:
        """Correlation averages against mu(D(a) D(b)), one row per N.

        Raises:
            ParameterError: when T and K do not form a partner pair
        """
        config.validate_partner_mode()
        limit = self.trace_product(
            self.finite_orbit_expectation(a, config), self.finite_orbit_expectation(b, config)
        )
        rows = [ResultRow(size, self.correlation_average(a, b, config, int(size)), limit) for size in sizes]
        self.logger.info("Correlation table computed", rows=len(rows), limit=str(limit))
        return rows

    def mixing_decay(
        self, g: Word, h: Word, config: DualSystemConfig, n_max: int, automorphism: str = "T"
    ) -> List[int]:
        """[A^n g = h] for n = 1..n_max."""
        auto = config.automorphism(automorphism)
        return [int(auto.apply(g, n) == h) for n in range(1, n_max + 1)]

    def orbit_period(
        self, word: Word, automorphism: Automorphism, bound: int = ORBIT_PERIOD_BOUND
    ) -> Optional[int]:
        """Smallest n >= 1 with A^n(word) = word, found by stepping the orbit; None past ``bound``."""
        current = word
        for n in range(1, bound + 1):
            current = automorphism.apply(current)
            if current == word:
                return n
        self.logger.debug("No period within bound", word=str(word), bound=bound)
        return None
