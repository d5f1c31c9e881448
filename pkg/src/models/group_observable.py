from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Dict, Iterator, Mapping, Tuple

from models.sparse_element import pruned
from models.word import Word


@dataclass(frozen=True, eq=False)
class GroupObservable:
    """Finite linear combination of left-regular unitaries l(g)."""

    coeffs: Mapping[Word, complex] = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        object.__setattr__(self, "coeffs", pruned(self.coeffs))

    @classmethod
    def l(cls, word: Word, coeff: complex = 1) -> "GroupObservable":  # noqa: E743
        return cls({word: coeff})

    @classmethod
    def unit(cls) -> "GroupObservable":
        return cls({Word.identity(): 1})

    def terms(self) -> Iterator[Tuple[Word, complex]]:
        for word in sorted(self.coeffs):
            yield word, self.coeffs[word]

    def coefficient(self, word: Word) -> complex:
        return self.coeffs.get(word, 0j)

    def __add__(self, other: "GroupObservable") -> "GroupObservable":
        total: Dict[Word, complex] = dict(self.coeffs)
        for word, c in other.coeffs.items():
            total[word] = total.get(word, 0j) + c
        return GroupObservable(total)

    def scale(self, factor: complex) -> "GroupObservable":
        return GroupObservable({w: c * factor for w, c in self.coeffs.items()})

    def __sub__(self, other: "GroupObservable") -> "GroupObservable":
        return self + other.scale(-1)

    def map_words(self, fn: Callable[[Word], Word]) -> "GroupObservable":
        image: Dict[Word, complex] = {}
        for word, c in self.terms():
            target = fn(word)
            image[target] = image.get(target, 0j) + c
        return GroupObservable(image)

    def restrict(self, keep: Callable[[Word], bool]) -> "GroupObservable":
        return GroupObservable({w: c for w, c in self.coeffs.items() if keep(w)})

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupObservable):
            return NotImplemented
        return dict(self.coeffs) == dict(other.coeffs)

    __hash__ = None  # type: ignore[assignment]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __str__(self) -> str:
        return " + ".join(f"({c:.6g}) l({w})" for w, c in self.terms()) or "0"
