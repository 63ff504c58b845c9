"""Markov bases of arbitrary size for the non-pointed configuration {1, -1}.

The toric ideal of ``A = (1, -1)`` is the principal ideal ``<xy - 1>``. A set of
binomials ``x^a y^a - 1`` generates it exactly when the gcd of the exponents is 1,
and the set is minimal when dropping any one exponent raises the gcd above 1.
Both facts reduce to integer gcds, so verification is exact for any exponent size.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd, prod
from functools import reduce

from .binomial import Binomial
from .lattice import VectorConfig, circuits, graver, is_pointed, ugb

LINE_CONFIG = VectorConfig(((1, -1),))


@dataclass(frozen=True)
class LaurentBinomialSet:
    """Binomials ``x^a y^a - 1``, one per exponent ``a``."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        if any(a <= 0 for a in self.exponents):
            raise ValueError("exponents must be positive")
        if len(set(self.exponents)) != len(self.exponents):
            raise ValueError("exponents must be pairwise distinct")

    def __len__(self):
        return len(self.exponents)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(2 * a for a in self.exponents)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def binomials(self) -> tuple[Binomial, ...]:
        return tuple(Binomial((a, a), (0, 0)) for a in self.exponents)

    def text(self) -> list[str]:
        return [f"x^{a}*y^{a} - 1" for a in self.exponents]


def markov_from_coprimes(q) -> LaurentBinomialSet:
    """Exponents ``Q/q_i`` for pairwise coprime ``q_i > 1`` with product ``Q``."""
    q = tuple(int(x) for x in q)
    if len(q) < 2:
        raise ValueError("need at least two integers")
    if any(x <= 1 for x in q):
        raise ValueError("integers must be greater than 1")
    for a, b in combinations(q, 2):
        if gcd(a, b) != 1:
            raise ValueError(f"{a} and {b} are not coprime (gcd {gcd(a, b)})")
    total = prod(q)
    return LaurentBinomialSet(tuple(total // x for x in q))


@dataclass(frozen=True)
class MarkovCertificate:
    generates: bool
    minimal: bool
    gcd_all: int
    gcd_without: tuple[int, ...]  # gcd of the exponents with the i-th one removed

    @property
    def ok(self) -> bool:
        return self.generates and self.minimal


def verify_markov(s: LaurentBinomialSet) -> MarkovCertificate:
    if not s.exponents:
        raise ValueError("empty binomial set")
    ex = s.exponents
    gcd_all = reduce(gcd, ex)
    # with a single binomial nothing can be dropped; gcd of the empty set is 0
    without = tuple(reduce(gcd, ex[:i] + ex[i + 1:], 0) for i in range(len(ex)))
    minimal = len(ex) == 1 or all(g > 1 for g in without)
    return MarkovCertificate(gcd_all == 1, minimal, gcd_all, without)


@dataclass(frozen=True)
class LineBases:
    circuits: tuple[Binomial, ...]
    ugb: tuple[Binomial, ...]
    graver: tuple[Binomial, ...]
    pointed: bool

    @property
    def all_equal(self) -> bool:
        return self.circuits == self.ugb == self.graver


def bases_of_line_config(degree_cap: int = 4) -> LineBases:
    """Circuits, universal Groebner and Graver bases of ``(1, -1)``, each the single ``xy - 1``.

    The kernel has rank one, so every basis is its primitive generator; the
    oracle computes each set independently under a degree cap.
    """
    expected = (Binomial((1, 1), (0, 0)),)
    gr = graver(LINE_CONFIG, degree_cap=degree_cap).binomials()
    ci = circuits(LINE_CONFIG).binomials()
    u = ugb(LINE_CONFIG, degree_cap=degree_cap).binomials()
    for name, found in (("graver", gr), ("circuits", ci), ("ugb", u)):
        if found != expected:
            raise AssertionError(f"{name} of (1, -1) is {found}, expected xy - 1")
    return LineBases(ci, u, gr, is_pointed(LINE_CONFIG))
