from __future__ import annotations

from math import prod

import pytest
from hypothesis import given, strategies as st

from toricbases.lattice import VectorConfig, graver, is_pointed
from toricbases.nonpointed import (
    LaurentBinomialSet,
    bases_of_line_config,
    markov_from_coprimes,
    verify_markov,
)

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


def test_two_three():
    s = markov_from_coprimes((2, 3))
    assert s.exponents == (3, 2) and s.degrees == (6, 4)


def test_two_three_five():
    assert markov_from_coprimes((2, 3, 5)).exponents == (15, 10, 6)


def test_non_coprime_pair_named():
    with pytest.raises(ValueError, match="2 and 4"):
        markov_from_coprimes((2, 4))


def test_needs_two():
    with pytest.raises(ValueError):
        markov_from_coprimes((5,))


def test_verify_examples():
    cert = verify_markov(LaurentBinomialSet((3, 2)))
    assert cert.ok and cert.gcd_all == 1 and cert.gcd_without == (2, 3)
    assert not verify_markov(LaurentBinomialSet((2, 4))).ok
    assert verify_markov(LaurentBinomialSet((1,))).ok
    with pytest.raises(ValueError):
        verify_markov(LaurentBinomialSet(()))


def test_redundant_set_is_not_minimal():
    cert = verify_markov(LaurentBinomialSet((2, 3, 6)))
    assert cert.generates and not cert.minimal


def test_exponents_validated():
    with pytest.raises(ValueError):
        LaurentBinomialSet((2, 2))
    with pytest.raises(ValueError):
        LaurentBinomialSet((0, 1))


@given(st.integers(2, len(PRIMES)))
def test_constructed_sets_verify(s):
    q = PRIMES[:s]
    basis = markov_from_coprimes(q)
    assert verify_markov(basis).ok
    assert len(basis) == s and basis.max_degree == 2 * prod(q) // 2


@given(st.lists(st.integers(2, 40), min_size=2, max_size=5, unique=True))
def test_arbitrary_coprime_tuples(q):
    try:
        basis = markov_from_coprimes(q)
    except ValueError:
        return
    assert verify_markov(basis).ok


def test_big_exponents_are_exact():
    basis = markov_from_coprimes(PRIMES)
    assert basis.max_degree == prod(PRIMES) > 2**32


def test_line_config_bases():
    line = bases_of_line_config()
    assert line.all_equal and len(line.graver) == 1 and line.graver[0].degree == 2
    assert not line.pointed
    assert [v.entries for v in graver(VectorConfig(((1, -1),)), degree_cap=5).elements] == [(1, 1)]
    assert not is_pointed(VectorConfig(((1, -1),)))
