"""
Let's Do. | CanoPhase – Halbzahlige Quantenzahlen.

Exakte Arithmetik für j, μ, k, m (als verdoppelte Ganzzahlen gespeichert)
und die Indexbereiche -j … +j, die alle anderen Module teilen.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Tuple, Union

from core.utils import DomainError, check_photon_number


@dataclass(frozen=True, order=True)
class HalfInt:
    """Halbzahliger Wert, gespeichert als twice = 2·x."""

    twice: int

    @classmethod
    def of(cls, value: Union[int, float, Fraction, "HalfInt"]) -> "HalfInt":
        """Erzeugt einen HalfInt aus int/float/Fraction (nur exakte Halbzahlen)."""
        if isinstance(value, HalfInt):
            return value
        doubled = 2 * Fraction(value)
        if doubled.denominator != 1:
            raise DomainError(f"{value!r} is not a half-integer")
        return cls(int(doubled))

    @property
    def value(self) -> float:
        return self.twice / 2

    @property
    def is_integral(self) -> bool:
        return self.twice % 2 == 0

    def __add__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice + other.twice)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice - other.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __int__(self) -> int:
        if not self.is_integral:
            raise DomainError(f"{self} is not integral")
        return self.twice // 2

    def __str__(self) -> str:
        if self.is_integral:
            return str(self.twice // 2)
        return f"{self.twice}/2"


@dataclass(frozen=True)
class SpinRange:
    """Der Bereich μ = -j, -j+1, …, +j."""

    j: HalfInt

    def __post_init__(self) -> None:
        if self.j.twice < 0:
            raise DomainError(f"j must be >= 0, got {self.j}")

    def __len__(self) -> int:
        return self.j.twice + 1

    def __iter__(self) -> Iterator[HalfInt]:
        for twice in range(-self.j.twice, self.j.twice + 1, 2):
            yield HalfInt(twice)

    def __contains__(self, mu: object) -> bool:
        if not isinstance(mu, HalfInt):
            return False
        return (
            -self.j.twice <= mu.twice <= self.j.twice
            and (mu.twice - self.j.twice) % 2 == 0
        )

    @property
    def values(self) -> Tuple[HalfInt, ...]:
        return tuple(self)

    def index_of(self, mu: HalfInt) -> int:
        """Position von μ im dichten Array (0 für μ = -j)."""
        if mu not in self:
            raise DomainError(f"mu={mu} is outside [-{self.j}, {self.j}]")
        return (mu.twice + self.j.twice) // 2


def from_photon_number(n: int) -> HalfInt:
    """j = N/2."""
    return HalfInt(check_photon_number(n))


def k_of(j: HalfInt, mu: HalfInt) -> HalfInt:
    """
    Drehimpuls der Verlust-Strahlteiler-Moden, k = (j+μ)/2.

    Args:
        j: Gesamtspin
        mu: Index aus SpinRange(j)

    Returns:
        k als HalfInt; 2k = j+μ ist die Photonenzahl in Mode a
    """
    if mu not in SpinRange(j):
        raise DomainError(f"mu={mu} is outside [-{j}, {j}]")
    # 2k = j + μ, und j + μ ist ganzzahlig
    return HalfInt((j.twice + mu.twice) // 2)
