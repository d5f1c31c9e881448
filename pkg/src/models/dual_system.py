from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

from models.surd import ParameterError
from models.word import Family, Letter, Word

Cycles = Tuple[Tuple[int, ...], ...]


class S2Kind(Enum):
    SHIFT = "shift"
    IDENTITY = "identity"
    CYCLES = "cycles"


@dataclass(frozen=True)
class S2Rule:
    """Bijection of the integer-indexed letters t_i.

    ``shift`` sends t_i to t_{i+1} (every orbit infinite); ``identity`` fixes
    every letter; ``cycles`` of length L rotates each block
    {t_{bL}, ..., t_{bL+L-1}}.
    """

    kind: S2Kind
    length: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", S2Kind(self.kind))
        if self.kind is S2Kind.CYCLES:
            if self.length is None or self.length < 1:
                raise ParameterError("S2 cycles need a positive declared length")
        elif self.length is not None:
            raise ParameterError(f"S2 rule '{self.kind.value}' takes no length")

    @classmethod
    def shift(cls) -> "S2Rule":
        return cls(S2Kind.SHIFT)

    @classmethod
    def identity(cls) -> "S2Rule":
        return cls(S2Kind.IDENTITY)

    @classmethod
    def cycles(cls, length: int) -> "S2Rule":
        return cls(S2Kind.CYCLES, length)

    def image(self, index: int, power: int) -> int:
        if self.kind is S2Kind.SHIFT:
            return index + power
        if self.kind is S2Kind.IDENTITY:
            return index
        block, position = divmod(index, self.length)
        return block * self.length + (position + power) % self.length

    def orbit_length(self) -> Optional[int]:
        """Common orbit length of every S2 letter; None when infinite."""
        if self.kind is S2Kind.SHIFT:
            return None
        if self.kind is S2Kind.IDENTITY:
            return 1
        return self.length

    def __str__(self) -> str:
        return f"cycles:{self.length}" if self.kind is S2Kind.CYCLES else self.kind.value


@dataclass(frozen=True)
class Automorphism:
    """Free-group automorphism induced by a letter bijection preserving S1 and S2."""

    name: str
    s1_size: int
    cycles: Cycles
    s2: S2Rule
    _position: Dict[int, Tuple[int, int]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        position: Dict[int, Tuple[int, int]] = {}
        for c, cycle in enumerate(self.cycles):
            if not cycle:
                raise ParameterError(f"{self.name}: empty cycle")
            for p, index in enumerate(cycle):
                if not 1 <= index <= self.s1_size:
                    raise ParameterError(
                        f"{self.name}: s{index} is outside the alphabet s1..s{self.s1_size}"
                    )
                if index in position:
                    raise ParameterError(f"{self.name}: s{index} appears in two cycles")
                position[index] = (c, p)
        object.__setattr__(self, "_position", position)

    def _s1_image(self, index: int, power: int) -> int:
        if not 1 <= index <= self.s1_size:
            raise ParameterError(f"s{index} is outside the alphabet s1..s{self.s1_size}")
        if index not in self._position:
            return index
        c, p = self._position[index]
        cycle = self.cycles[c]
        return cycle[(p + power) % len(cycle)]

    def letter_image(self, letter: Letter, power: int = 1) -> Letter:
        """Image of a letter under the power-th iterate; inverses map to inverses."""
        if letter.family is Family.S1:
            index = self._s1_image(letter.index, power)
        else:
            index = self.s2.image(letter.index, power)
        return Letter(letter.family, index, letter.sign)

    def apply(self, word: Word, power: int = 1) -> Word:
        """Letterwise image; bijectivity on letters keeps the word reduced."""
        return Word(tuple(self.letter_image(x, power) for x in word))

    def letter_orbit_length(self, letter: Letter) -> Optional[int]:
        if letter.family is Family.S2:
            return self.s2.orbit_length()
        if letter.index in self._position:
            c, _ = self._position[letter.index]
            return len(self.cycles[c])
        return 1

    def has_finite_orbit(self, word: Word) -> bool:
        """Finite iff every letter orbit is finite."""
        return all(self.letter_orbit_length(x) is not None for x in word)

    def restricted_to_s1(self) -> Dict[int, int]:
        return {i: self._s1_image(i, 1) for i in range(1, self.s1_size + 1)}


def increasing_cycles(count: int, first: int = 1) -> Cycles:
    """(s1, s2), (s3, s4, s5), (s6, ..., s9), ... : cycle i has length i + 1."""
    cycles = []
    index = first
    for length in range(2, count + 2):
        cycles.append(tuple(range(index, index + length)))
        index += length
    return tuple(cycles)


@dataclass(frozen=True)
class DualSystemConfig:
    """Pair of dual systems on the free group over S1 and S2.

    T drives the first system, K the second.
    """

    s1_size: int
    t_cycles: Cycles
    k_cycles: Cycles
    t_s2: S2Rule
    k_s2: S2Rule
    T: Automorphism = field(init=False, repr=False, compare=False)
    K: Automorphism = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.s1_size < 0:
            raise ParameterError("s1_size must be non-negative")
        object.__setattr__(self, "t_cycles", tuple(tuple(c) for c in self.t_cycles))
        object.__setattr__(self, "k_cycles", tuple(tuple(c) for c in self.k_cycles))
        object.__setattr__(self, "T", Automorphism("T", self.s1_size, self.t_cycles, self.t_s2))
        object.__setattr__(self, "K", Automorphism("K", self.s1_size, self.k_cycles, self.k_s2))

    @staticmethod
    def increasing_cycles(count: int) -> Cycles:
        return increasing_cycles(count)

    @classmethod
    def with_increasing_cycles(
        cls,
        cycle_count: int = 3,
        t_s2: Optional[S2Rule] = None,
        k_s2: Optional[S2Rule] = None,
    ) -> "DualSystemConfig":
        """T and K agree on S1 as increasing cycles; by default T shifts S2
        and K fixes it."""
        cycles = increasing_cycles(cycle_count)
        size = sum(len(c) for c in cycles)
        return cls(
            s1_size=size,
            t_cycles=cycles,
            k_cycles=cycles,
            t_s2=t_s2 or S2Rule.shift(),
            k_s2=k_s2 or S2Rule.identity(),
        )

    def automorphism(self, name: str) -> Automorphism:
        if name == "T":
            return self.T
        if name == "K":
            return self.K
        raise ParameterError(f"Unknown automorphism '{name}' (expected T or K)")

    def validate_partner_mode(self) -> None:
        """K|S1 = T|S1, T infinite on S2 and K finite on S2."""
        if self.T.restricted_to_s1() != self.K.restricted_to_s1():
            raise ParameterError("K must agree with T on S1")
        if self.t_s2.orbit_length() is not None:
            raise ParameterError("T must have infinite orbits on S2 (use shift)")
        if self.k_s2.orbit_length() is None:
            raise ParameterError("K must have finite orbits on S2 (identity or cycles)")
