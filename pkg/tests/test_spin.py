"""Tests für halbzahlige Quantenzahlen und Indexbereiche."""

from __future__ import annotations

import pytest

from core.spin import HalfInt, SpinRange, from_photon_number, k_of
from core.utils import MAX_PHOTON_NUMBER, DomainError


@pytest.mark.parametrize("n, twice", [(0, 0), (1, 1), (2, 2), (17, 17)])
def test_from_photon_number(n, twice):
    assert from_photon_number(n).twice == twice


def test_from_photon_number_bounds():
    with pytest.raises(DomainError):
        from_photon_number(-1)
    with pytest.raises(DomainError):
        from_photon_number(MAX_PHOTON_NUMBER + 1)
    assert from_photon_number(MAX_PHOTON_NUMBER).twice == MAX_PHOTON_NUMBER


def test_halfint_arithmetic_is_exact():
    half = HalfInt(1)
    assert half + half == HalfInt(2)
    assert (half + half).is_integral
    assert not half.is_integral
    assert HalfInt(3) - HalfInt(5) == HalfInt(-2)
    assert -HalfInt(3) == HalfInt(-3)
    assert str(HalfInt(3)) == "3/2"
    assert str(HalfInt(-4)) == "-2"
    assert HalfInt(3).value == 1.5
    assert int(HalfInt(4)) == 2


def test_halfint_of():
    assert HalfInt.of(0.5) == HalfInt(1)
    assert HalfInt.of(-2) == HalfInt(-4)
    with pytest.raises(DomainError):
        HalfInt.of(0.3)


@pytest.mark.parametrize(
    "j_twice, mu_twice, k_twice",
    [
        (2, 2, 2),  # j=1, μ=1 -> k=1
        (1, 1, 1),  # j=1/2, μ=1/2 -> k=1/2
        (10, -10, 0),  # j=5, μ=-5 -> k=0
        (3, 1, 2),  # j=3/2, μ=1/2 -> k=1
    ],
)
def test_k_of(j_twice, mu_twice, k_twice):
    assert k_of(HalfInt(j_twice), HalfInt(mu_twice)) == HalfInt(k_twice)


def test_k_of_rejects_outside_range():
    with pytest.raises(DomainError):
        k_of(HalfInt(2), HalfInt(4))
    # falsche Parität: μ = 1/2 gehört nicht zu j = 1
    with pytest.raises(DomainError):
        k_of(HalfInt(2), HalfInt(1))


@pytest.mark.parametrize("two_j", range(0, 31))
def test_spin_range_shape(two_j):
    spin_range = SpinRange(HalfInt(two_j))
    values = spin_range.values
    assert len(values) == two_j + 1
    assert [v.twice for v in values] == [-v.twice for v in reversed(values)]
    assert all(b.twice - a.twice == 2 for a, b in zip(values, values[1:]))
    for idx, mu in enumerate(values):
        assert spin_range.index_of(mu) == idx
        k = k_of(spin_range.j, mu)
        assert 0 <= k.twice <= two_j


def test_spin_range_membership():
    spin_range = SpinRange(HalfInt(3))
    assert HalfInt(-3) in spin_range
    assert HalfInt(2) not in spin_range
    assert 0.5 not in spin_range
    with pytest.raises(DomainError):
        spin_range.index_of(HalfInt(5))
