from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, List, NamedTuple, Tuple


class Family(Enum):
    """S1 letters (finite alphabet, printed s1, s2, ...) and S2 letters
    (integer-indexed, printed t0, t5, t-3, ...)."""

    S1 = "s"
    S2 = "t"


class Letter(NamedTuple):
    family: Family
    index: int
    sign: int = 1

    @classmethod
    def s(cls, index: int, sign: int = 1) -> "Letter":
        return cls(Family.S1, index, sign)

    @classmethod
    def t(cls, index: int, sign: int = 1) -> "Letter":
        return cls(Family.S2, index, sign)

    def inverse(self) -> "Letter":
        return Letter(self.family, self.index, -self.sign)

    def generator(self) -> "Letter":
        return Letter(self.family, self.index, 1)

    def __str__(self) -> str:
        suffix = "^-1" if self.sign < 0 else ""
        return f"{self.family.value}{self.index}{suffix}"


def _free_reduce(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    stack: List[Letter] = []
    for letter in letters:
        if stack and stack[-1] == letter.inverse():
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """Freely reduced word in the free group on S1 and S2; () is the identity."""

    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _free_reduce(Letter(*x) for x in self.letters))

    @classmethod
    def identity(cls) -> "Word":
        return cls(())

    @classmethod
    def of(cls, *letters: Letter) -> "Word":
        return cls(tuple(letters))

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def inverse(self) -> "Word":
        return Word(tuple(x.inverse() for x in reversed(self.letters)))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> Tuple:
        return (len(self.letters), tuple((x.family.value, x.index, x.sign) for x in self.letters))

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.letters) if self.letters else "e"


def reduce(letters: Iterable[Letter]) -> Word:
    """Free reduction of an arbitrary letter sequence."""
    return Word(tuple(letters))
