"""
Let's Do. | CanoPhase – Verlustkanal.

Modelliert Photonenverlust in Mode a als fiktiven Strahlteiler mit
Vakuum im zweiten Eingang. Liefert den reinen Drei-Moden-Zustand
(a', c', b) und die reduzierte Dichtematrix der inneren Moden (a', b)
nach Ausspuren der Verlustmode c'.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Tuple

import numpy as np

from core.optimal_state import AmplitudeVector
from core.spin import HalfInt, SpinRange, k_of
from core.utils import (
    DENSITY_MAX_N,
    LOSS_ANGLE_TOL,
    CapacityError,
    DomainError,
    check_loss,
)
from core.wigner import d_value

# i^t für t mod 4, exakt
_QUARTER_TURNS = (1 + 0j, 1j, -1 + 0j, -1j)


@dataclass(frozen=True)
class LossChannel:
    """Verlust L und äquivalenter Strahlteilerwinkel θ mit L = 1 - cos²(θ/2)."""

    L: float
    theta: float

    def __post_init__(self) -> None:
        check_loss(self.L)
        if not (0.0 <= self.theta < math.pi):
            raise DomainError(f"theta must lie in [0, pi), got {self.theta}")
        implied = 1.0 - math.cos(self.theta / 2.0) ** 2
        if abs(self.L - implied) > LOSS_ANGLE_TOL:
            raise DomainError(
                f"loss L={self.L!r} does not match theta={self.theta!r} "
                f"(1 - cos^2(theta/2) = {implied!r})"
            )

    @property
    def transmission(self) -> float:
        return 1.0 - self.L

    @property
    def log_transmission(self) -> float:
        """ln(1-L), genau auch für sehr kleine L."""
        return math.log1p(-self.L)


def channel_from_loss(loss: float) -> LossChannel:
    """
    Erzeugt den Kanal zu einem Verlust L.

    Args:
        loss: Verlustanteil in [0, 1)

    Returns:
        LossChannel mit θ = 2·arccos(√(1-L))
    """
    loss = check_loss(loss)
    theta = 2.0 * math.acos(min(1.0, math.sqrt(1.0 - loss)))
    return LossChannel(L=loss, theta=theta)


def loss_amplitudes(k: HalfInt, theta: float) -> np.ndarray:
    """
    d^k_{m,k}(θ) für m = -k … +k: Amplitude, dass von 2k Photonen
    k+m in a' bleiben und k-m nach c' gestreut werden.
    """
    return np.array([d_value(k, m, k, theta) for m in SpinRange(k)])


@dataclass(frozen=True, eq=False)
class PureLossyState:
    """
    Reiner Zustand nach dem Verlust-Strahlteiler.

    branches[i] gehört zu μ = i - j (k = (j+μ)/2) und enthält die komplexen
    Koeffizienten für m = -k … +k vor dem Ket |k+m>_{a'} |k-m>_{c'} |j-μ>_b.
    """

    state: AmplitudeVector
    channel: LossChannel
    branches: Tuple[np.ndarray, ...]

    @property
    def j(self) -> HalfInt:
        return self.state.j

    def norm(self) -> float:
        return float(sum(np.vdot(branch, branch).real for branch in self.branches))

    def entries(self) -> Iterator[Tuple[HalfInt, HalfInt, complex]]:
        """Liefert (μ, m, Koeffizient) für alle Einträge."""
        for mu, branch in zip(self.state.spin_range, self.branches):
            k = k_of(self.j, mu)
            for m, coeff in zip(SpinRange(k), branch):
                yield mu, m, complex(coeff)

    def fock_occupation(self, mu: HalfInt, m: HalfInt) -> Tuple[int, int, int]:
        """Photonenzahlen (a', c', b) des Basiskets zu (μ, m)."""
        k = k_of(self.j, mu)
        return (k + m).twice // 2, (k - m).twice // 2, (self.j - mu).twice // 2


def pure_lossy_state(state: AmplitudeVector, ch: LossChannel) -> PureLossyState:
    """
    Wendet den Verlust-Strahlteiler auf Mode a an.

    Koeffizienten: ψ_μ · e^{i(π/2)(m-k)} · d^k_{m,k}(θ).
    """
    branches: List[np.ndarray] = []
    for psi_mu, mu in zip(state.psi, state.spin_range):
        k = k_of(state.j, mu)
        amps = loss_amplitudes(k, ch.theta)
        # m - k läuft über -2k … 0
        phases = np.array(
            [_QUARTER_TURNS[((m - k).twice // 2) % 4] for m in SpinRange(k)]
        )
        branch = psi_mu * phases * amps
        branch.setflags(write=False)
        branches.append(branch)
    return PureLossyState(state=state, channel=ch, branches=tuple(branches))


@dataclass(frozen=True, eq=False)
class LostPhotonBlock:
    """
    Block ℓ = k - m der reduzierten Dichtematrix.

    Zeilen/Spalten laufen über die μ mit j+μ >= ℓ; der Eintrag (μ, ν)
    gehört zu m = k - ℓ und n = k' - ℓ.
    """

    ell: int
    mus: Tuple[HalfInt, ...]
    matrix: np.ndarray

    @property
    def weight(self) -> float:
        return float(np.trace(self.matrix))


@dataclass(frozen=True, eq=False)
class ReducedDensity:
    """Reduzierte Dichtematrix ρ' der Moden (a', b), blockweise nach ℓ."""

    j: HalfInt
    L: float
    blocks: Dict[int, LostPhotonBlock]

    @property
    def photon_number(self) -> int:
        return self.j.twice

    def trace(self) -> float:
        return float(sum(block.weight for block in self.blocks.values()))

    def block_weights(self) -> Dict[int, float]:
        """Wahrscheinlichkeit, genau ℓ Photonen zu verlieren."""
        return {ell: block.weight for ell, block in sorted(self.blocks.items())}

    def mean_lost_photons(self) -> float:
        return float(sum(ell * w for ell, w in self.block_weights().items()))

    def purity(self) -> float:
        """Tr(ρ'^2); Blöcke mischen nicht."""
        return float(
            sum(np.sum(block.matrix * block.matrix) for block in self.blocks.values())
        )

    def symmetry_defect(self) -> float:
        return float(
            max(
                (np.max(np.abs(b.matrix - b.matrix.T)) for b in self.blocks.values()),
                default=0.0,
            )
        )

    def min_eigenvalue(self) -> float:
        return float(
            min(
                (np.linalg.eigvalsh(b.matrix)[0] for b in self.blocks.values()),
                default=0.0,
            )
        )

    def entry(self, mu: HalfInt, m: HalfInt, nu: HalfInt, n: HalfInt) -> float:
        """
        Eintrag <(μ,m)| ρ' |(ν,n)>.

        Außerhalb von k-m = k'-n ist er strukturell null.
        """
        k = k_of(self.j, mu)
        k_prime = k_of(self.j, nu)
        ell = k - m
        if ell != k_prime - n or not ell.is_integral:
            return 0.0
        block = self.blocks.get(int(ell))
        if block is None or mu not in block.mus or nu not in block.mus:
            return 0.0
        return float(block.matrix[block.mus.index(mu), block.mus.index(nu)])

    def fock_index(self, mu: HalfInt, ell: int) -> int:
        """Zeilenindex im Fock-Produktbasis-Layout a'·(N+1) + b."""
        n_photons = self.photon_number
        i = (self.j + mu).twice // 2
        return (i - ell) * (n_photons + 1) + (n_photons - i)

    def to_fock_matrix(self) -> np.ndarray:
        """Dichte Matrix über |a'>|b> mit a', b in 0 … N."""
        dim = (self.photon_number + 1) ** 2
        out = np.zeros((dim, dim))
        for ell, block in self.blocks.items():
            idx = [self.fock_index(mu, ell) for mu in block.mus]
            out[np.ix_(idx, idx)] = block.matrix
        return out


def reduced_density(
    state: AmplitudeVector,
    ch: LossChannel,
    max_n: int = DENSITY_MAX_N,
) -> ReducedDensity:
    """
    Spurt die Verlustmode c' aus.

    Args:
        state: normierter Eingangszustand
        ch: Verlustkanal
        max_n: Speicher-Guard für N

    Returns:
        ReducedDensity mit Einträgen ψ_μ ψ_ν d^k_{m,k}(θ) d^{k'}_{n,k'}(θ)
        für k-m = k'-n
    """
    n_photons = state.photon_number
    if n_photons > max_n:
        raise CapacityError(
            f"density-matrix path is capped at N={max_n}, got N={n_photons}"
        )

    # columns[i][ℓ] = d^k_{k-ℓ,k}(θ) für i = j+μ = 2k
    mus = state.spin_range.values
    columns = [loss_amplitudes(k_of(state.j, mu), ch.theta)[::-1] for mu in mus]

    blocks: Dict[int, LostPhotonBlock] = {}
    for ell in range(n_photons + 1):
        members = range(ell, n_photons + 1)
        vec = np.array([state.psi[i] * columns[i][ell] for i in members])
        matrix = np.outer(vec, vec)
        matrix.setflags(write=False)
        blocks[ell] = LostPhotonBlock(
            ell=ell,
            mus=tuple(mus[i] for i in members),
            matrix=matrix,
        )
    return ReducedDensity(j=state.j, L=ch.L, blocks=blocks)
