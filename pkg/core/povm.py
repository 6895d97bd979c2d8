"""
Let's Do. | CanoPhase – Kanonische Phasenmessung.

Wahrscheinlichkeitsverteilung P(φ), Schärfe |<e^{iφ}>| und
Holevo-Varianz, jeweils über den geschlossenen Pfad (direkt aus den
Amplituden) und über den Dichtematrix-Pfad (aus ρ').
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from core.loss import LossChannel, ReducedDensity
from core.optimal_state import AmplitudeVector
from core.spin import HalfInt, SpinRange
from core.utils import IMAG_GUARD_TOL, SHARPNESS_TOL, DomainError, check_photon_number

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True, eq=False)
class PhaseDistribution:
    """
    P(φ) = Σ_{μν} c_{μν} e^{i(ν-μ)φ} als trigonometrisches Polynom.

    coeff[row, col] gehört zu μ = row - j, ν = col - j.
    """

    j: HalfInt
    coeff: np.ndarray
    renormalized: bool = False

    @property
    def mus(self) -> np.ndarray:
        return np.array([mu.value for mu in SpinRange(self.j)])

    def evaluate(self, phi: ArrayLike) -> ArrayLike:
        """P(φ) an einer Stelle oder auf einem Gitter."""
        phi_arr = np.atleast_1d(np.asarray(phi, dtype=float))
        waves = np.exp(1j * np.outer(phi_arr, self.mus))
        values = np.einsum("pm,mn,pn->p", waves.conj(), self.coeff, waves).real
        if np.ndim(phi) == 0:
            return float(values[0])
        return values

    def fourier(self, order: int) -> complex:
        """
        ∫_0^{2π} P(φ) e^{i·order·φ} dφ, exakt über die Nebendiagonale
        ν = μ - order.
        """
        size = self.coeff.shape[0]
        if abs(order) >= size:
            return 0j
        return complex(2.0 * math.pi * np.trace(self.coeff, offset=-order))

    def integral(self) -> float:
        return self.fourier(0).real

    def normalized(self) -> "PhaseDistribution":
        """Auf ∫P dφ = 1 skalierte Kopie (nicht die Größe des Verlustmodells)."""
        total = self.integral()
        if total <= 0.0:
            raise DomainError("cannot renormalize a distribution with zero weight")
        return PhaseDistribution(j=self.j, coeff=self.coeff / total, renormalized=True)

    def sharpness(self) -> float:
        """|<e^{iφ}>| aus dem ersten Fourier-Koeffizienten (mittlere Phase 0)."""
        first = self.fourier(1)
        if abs(first.imag) > IMAG_GUARD_TOL:
            raise DomainError(
                f"first Fourier coefficient is not real (imag={first.imag!r}); "
                "mean phase is not 0"
            )
        return abs(first.real)


@dataclass(frozen=True)
class PhaseEstimate:
    """Schärfe, Holevo-Varianz und minimal detektierbare Phase."""

    sharpness: float
    holevo_variance: float
    min_detectable_phase: float

    @property
    def diverged(self) -> bool:
        return math.isinf(self.holevo_variance)


def _loss_weights(state: AmplitudeVector, ch: LossChannel) -> np.ndarray:
    """g_μ = ψ_μ [cos²(θ/2)]^{(j+μ)/2}, im Log-Raum gerechnet."""
    half_powers = 0.5 * np.arange(state.psi.size, dtype=float)
    return state.psi * np.exp(half_powers * ch.log_transmission)


def distribution(state: AmplitudeVector, ch: LossChannel) -> PhaseDistribution:
    """
    Verteilung im geschlossenen Pfad.

    Nur der Block ohne verlorene Photonen trifft den POVM mit festem j,
    daher ist P(φ) für L > 0 unternormiert.
    """
    g = _loss_weights(state, ch)
    coeff = np.outer(g, g) / (2.0 * math.pi)
    coeff.setflags(write=False)
    return PhaseDistribution(j=state.j, coeff=coeff)


def distribution_from_density(rho: ReducedDensity) -> PhaseDistribution:
    """
    Verteilung über Tr[ρ' F(φ)]; nur der Block ℓ = 0 trägt bei.
    """
    size = rho.photon_number + 1
    coeff = np.zeros((size, size))
    block = rho.blocks.get(0)
    if block is not None:
        # Block ℓ = 0 enthält alle μ in aufsteigender Reihenfolge
        coeff[:, :] = block.matrix / (2.0 * math.pi)
    coeff.setflags(write=False)
    return PhaseDistribution(j=rho.j, coeff=coeff)


def sharpness_closed(
    state: AmplitudeVector,
    ch: LossChannel,
    renormalized: bool = False,
) -> float:
    """
    S = Σ_μ ψ_μ ψ_{μ-1} [cos²(θ/2)]^{j+μ-1/2}.

    Args:
        state: normierter Zustand mit N >= 1
        ch: Verlustkanal
        renormalized: S zusätzlich durch ∫P dφ teilen (nicht die Größe
            des Verlustmodells, nur als Vergleich)

    Returns:
        Schärfe in [0, 1]
    """
    if state.photon_number < 1:
        raise DomainError("sharpness needs N >= 1")
    psi = state.psi
    # Exponent j+μ-1/2 für μ = -j+1 … j, also 1/2, 3/2, …, N-1/2
    exponents = np.arange(1, psi.size, dtype=float) - 0.5
    value = abs(float(np.sum(psi[1:] * psi[:-1] * np.exp(exponents * ch.log_transmission))))
    if renormalized:
        integral = float(
            np.sum(psi * psi * np.exp(np.arange(psi.size) * ch.log_transmission))
        )
        value /= integral
    return value


def holevo(sharpness: float) -> PhaseEstimate:
    """
    Holevo-Varianz (Δφ)² = -1 + S^{-2}.

    S = 0 ergibt unendliche Varianz, keinen Fehler.
    """
    if math.isnan(sharpness) or sharpness < 0.0 or sharpness > 1.0 + SHARPNESS_TOL:
        raise DomainError(f"sharpness must lie in [0, 1], got {sharpness}")
    sharpness = min(float(sharpness), 1.0)
    if sharpness == 0.0:
        return PhaseEstimate(
            sharpness=0.0, holevo_variance=math.inf, min_detectable_phase=math.inf
        )
    # 1/S quadriert läuft bei winzigem S nach inf statt in einen OverflowError
    inverse = 1.0 / sharpness
    variance = max(0.0, -1.0 + inverse * inverse)
    return PhaseEstimate(
        sharpness=sharpness,
        holevo_variance=variance,
        min_detectable_phase=math.sqrt(variance),
    )


def lossless_reference(n: int) -> float:
    """Holevo-Varianz des optimalen Zustands ohne Verlust, tan²(π/(N+2))."""
    n = check_photon_number(n, minimum=1)
    return math.tan(math.pi / (n + 2)) ** 2


def heisenberg_asymptote(n: int) -> float:
    """Großes-N-Verhalten π/N der minimal detektierbaren Phase."""
    n = check_photon_number(n, minimum=1)
    return math.pi / n


def shot_noise(n: int) -> float:
    """Schrotrauschgrenze 1/√N."""
    n = check_photon_number(n, minimum=1)
    return 1.0 / math.sqrt(n)
