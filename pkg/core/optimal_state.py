"""
Let's Do. | CanoPhase – Optimaler Eingangszustand.

Amplituden ψ_μ = sin[(μ+j+1)π/(2j+2)] / √(j+1) des phasenoptimalen
Zwei-Moden-Zustands, plus Prüfung extern gelieferter Amplitudenvektoren.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from core.spin import HalfInt, SpinRange, from_photon_number
from core.utils import NORMALIZATION_TOL, DomainError, check_photon_number


@dataclass(frozen=True, eq=False)
class AmplitudeVector:
    """Reelle Amplituden ψ_μ, dicht gespeichert von μ = -j bis μ = +j."""

    j: HalfInt
    psi: np.ndarray

    def __post_init__(self) -> None:
        psi = np.asarray(self.psi, dtype=float)
        if psi.ndim != 1 or psi.size != len(SpinRange(self.j)):
            raise DomainError(
                f"expected {len(SpinRange(self.j))} amplitudes for j={self.j}, "
                f"got shape {psi.shape}"
            )
        norm = float(np.dot(psi, psi))
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise DomainError(f"amplitudes are not normalized (sum of squares {norm!r})")
        psi.setflags(write=False)
        object.__setattr__(self, "psi", psi)

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "AmplitudeVector":
        """Übernimmt einen externen Zustand; N ergibt sich aus der Länge."""
        values = np.asarray(values, dtype=float)
        if values.size < 1:
            raise DomainError("amplitude vector must not be empty")
        return cls(j=from_photon_number(values.size - 1), psi=values)

    @property
    def photon_number(self) -> int:
        return self.j.twice

    @property
    def spin_range(self) -> SpinRange:
        return SpinRange(self.j)

    def amplitude(self, mu: HalfInt) -> float:
        return float(self.psi[self.spin_range.index_of(mu)])

    def __len__(self) -> int:
        return int(self.psi.size)


def optimal_amplitudes(n: int) -> AmplitudeVector:
    """
    Konstruiert den optimalen Zustand für N Photonen.

    Args:
        n: Photonenzahl N >= 1

    Returns:
        AmplitudeVector der Länge N+1
    """
    n = check_photon_number(n, minimum=1)
    j = from_photon_number(n)
    # (μ + j + 1) läuft über 1 … N+1, (2j + 2) = N + 2
    steps = np.arange(1, n + 2, dtype=float)
    psi = np.sin(steps * math.pi / (n + 2)) / math.sqrt(n / 2 + 1)
    # Rundungsfehler der Sinusfolge ausgleichen, bevor die Prüfung greift
    psi = psi / math.sqrt(float(np.dot(psi, psi)))
    return AmplitudeVector(j=j, psi=psi)


def lossless_sharpness(state: AmplitudeVector) -> float:
    """Σ_μ ψ_μ ψ_{μ-1}; für den optimalen Zustand gleich cos(π/(N+2))."""
    return float(np.dot(state.psi[1:], state.psi[:-1]))
