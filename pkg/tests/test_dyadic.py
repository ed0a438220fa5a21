import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cantorthompson.dyadic import (
    Dyadic,
    DyadicInterval,
    address_of_interval,
    interval_of_address,
)
from cantorthompson.errors import NotStandard


def test_canonical_form():
    assert Dyadic(2, 2) == Dyadic(1, 1)
    assert (Dyadic(2, 2).num, Dyadic(2, 2).exp) == (1, 1)
    assert (Dyadic(0, 5).num, Dyadic(0, 5).exp) == (0, 0)
    assert (Dyadic(7, 3).num, Dyadic(7, 3).exp) == (7, 3)


def test_arithmetic_examples():
    assert Dyadic(1, 1) + Dyadic(1, 2) == Dyadic(3, 2)
    assert Dyadic(3, 2) * Dyadic(1, 1) == Dyadic(3, 3)
    assert Dyadic(5, 3) > Dyadic(1, 1)


def test_parse_and_str():
    assert Dyadic.parse("3/2^3") == Dyadic(3, 3)
    assert Dyadic.parse("3/4") == Dyadic(3, 2)
    assert Dyadic.parse("-2") == Dyadic(-2)
    assert str(Dyadic(3, 3)) == "3/2^3"
    assert str(Dyadic(5)) == "5"
    with pytest.raises(ValueError):
        Dyadic.parse("1/3")


def test_json_round_trip():
    x = Dyadic(13, 5)
    assert Dyadic.from_json(x.to_json()) == x


def test_interval_of_address_examples():
    assert interval_of_address("") == DyadicInterval(Dyadic(0), Dyadic(1))
    assert interval_of_address("L") == DyadicInterval(Dyadic(0), Dyadic(1, 1))
    assert interval_of_address("RL") == DyadicInterval(Dyadic(1, 1), Dyadic(3, 2))


def test_address_of_interval_examples():
    assert address_of_interval(DyadicInterval(Dyadic(0), Dyadic(1))) == ""
    assert address_of_interval(DyadicInterval(Dyadic(3, 2), Dyadic(7, 3))) == "RRL"
    with pytest.raises(NotStandard):
        address_of_interval(DyadicInterval(Dyadic(1, 2), Dyadic(3, 2)))


@given(st.lists(st.sampled_from("LR"), max_size=12))
@settings(deadline=None)
def test_address_round_trip(bits):
    address = "".join(bits)
    assert address_of_interval(interval_of_address(address)) == address


@given(
    st.integers(-(2**40), 2**40),
    st.integers(0, 30),
    st.integers(-(2**40), 2**40),
    st.integers(0, 30),
)
@settings(deadline=None)
def test_closure_and_exactness(n1, e1, n2, e2):
    a, b = Dyadic(n1, e1), Dyadic(n2, e2)
    assert (a + b).as_fraction() == a.as_fraction() + b.as_fraction()
    assert (a - b).as_fraction() == a.as_fraction() - b.as_fraction()
    assert (a * b).as_fraction() == a.as_fraction() * b.as_fraction()
    # closure: exponents never exceed the sum of the operands'
    assert (a + b).exp <= max(e1, e2)
    assert (a * b).exp <= e1 + e2


def test_order_embedding_bulk():
    rng = random.Random(4)
    for _ in range(10_000):
        a = Dyadic(rng.randint(-999, 999), rng.randint(0, 12))
        b = Dyadic(rng.randint(-999, 999), rng.randint(0, 12))
        assert (a < b) == (a.as_fraction() < b.as_fraction())
        assert (a == b) == (a.as_fraction() == b.as_fraction())


def test_interval_standardness():
    assert DyadicInterval(Dyadic(3, 2), Dyadic(1)).is_standard
    assert not DyadicInterval(Dyadic(1, 2), Dyadic(3, 2)).is_standard
    assert not DyadicInterval(Dyadic(1), Dyadic(2)).is_standard  # hi > 1
    with pytest.raises(ValueError):
        DyadicInterval(Dyadic(1), Dyadic(0))
