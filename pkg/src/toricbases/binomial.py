"""Binomials x^plus - x^minus over a fixed set of variables."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Binomial:
    plus: tuple[int, ...]
    minus: tuple[int, ...]

    def __post_init__(self):
        if len(self.plus) != len(self.minus):
            raise ValueError("exponent vectors differ in length")
        if any(x < 0 for x in self.plus) or any(x < 0 for x in self.minus):
            raise ValueError("exponents must be nonnegative")

    @classmethod
    def from_vector(cls, vec: Iterable[int]) -> "Binomial":
        vec = tuple(vec)
        return cls(tuple(max(x, 0) for x in vec), tuple(max(-x, 0) for x in vec))

    @classmethod
    def from_exponents(cls, size: int, plus: dict[int, int], minus: dict[int, int]) -> "Binomial":
        p = [0] * size
        m = [0] * size
        for i, k in plus.items():
            p[i] += k
        for i, k in minus.items():
            m[i] += k
        return cls(tuple(p), tuple(m))

    @property
    def vector(self) -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.plus, self.minus))

    @property
    def degree(self) -> int:
        return max(sum(self.plus), sum(self.minus))

    @property
    def unreduced(self) -> bool:
        return any(a and b for a, b in zip(self.plus, self.minus))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, (a, b) in enumerate(zip(self.plus, self.minus)) if a or b)

    def reduce(self) -> "Binomial":
        """Cancel the common monomial factor of both sides."""
        return Binomial.from_vector(self.vector)

    def canonical(self) -> "Binomial":
        b = self.reduce()
        return b if b.plus >= b.minus else Binomial(b.minus, b.plus)

    def is_homogeneous(self, matrix: Sequence[Sequence[int]]) -> bool:
        return all(
            sum(r * x for r, x in zip(row, self.plus)) == sum(r * x for r, x in zip(row, self.minus))
            for row in matrix
        )

    def sort_key(self):
        return (self.degree, self.plus, self.minus)

    def text(self) -> str:
        return f"{_monomial(self.plus)} - {_monomial(self.minus)}"

    def to_json(self) -> dict:
        return {
            "plus": [[i, k] for i, k in enumerate(self.plus) if k],
            "minus": [[i, k] for i, k in enumerate(self.minus) if k],
        }

    @classmethod
    def from_json(cls, size: int, obj: dict) -> "Binomial":
        return cls.from_exponents(size, {i: k for i, k in obj["plus"]}, {i: k for i, k in obj["minus"]})

    def __str__(self) -> str:
        return self.text()


def _monomial(exps: Sequence[int]) -> str:
    # variables are printed 1-based: edge index 0 is e1
    parts = [f"e{i + 1}" if k == 1 else f"e{i + 1}^{k}" for i, k in enumerate(exps) if k]
    return "*".join(parts) if parts else "1"


def sorted_binomials(items: Iterable[Binomial]) -> tuple[Binomial, ...]:
    return tuple(sorted(set(items), key=Binomial.sort_key))
