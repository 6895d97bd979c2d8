"""
Let's Do. | CanoPhase – Brute-Force-Referenzen.

Unabhängige Gegenrechnungen für Tests und `validate`: Drehimpuls-
Generatoren, Strahlteiler-Unitäre per Matrixexponential, explizites
Ausspuren des Drei-Moden-Zustands und Quadratur der Phasenverteilung.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from core.loss import LostPhotonBlock, PureLossyState, ReducedDensity
from core.povm import PhaseDistribution
from core.spin import HalfInt, SpinRange
from core.utils import (
    EXPLICIT_TRACE_MAX_N,
    ORACLE_MAX_TWO_J,
    CapacityError,
    DomainError,
)


@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    """J_x, J_y oder J_z in der Basis |j,m>_z, m aufsteigend von -j bis +j."""

    j: HalfInt
    axis: str
    entries: np.ndarray


def _check_oracle_size(j: HalfInt) -> SpinRange:
    if j.twice > ORACLE_MAX_TWO_J:
        raise CapacityError(f"oracle is capped at 2j={ORACLE_MAX_TWO_J}, got 2j={j.twice}")
    return SpinRange(j)


def _raising(j: HalfInt) -> np.ndarray:
    """J_+ mit <m+1|J_+|m> = √(j(j+1) - m(m+1))."""
    spin_range = _check_oracle_size(j)
    m = np.array([mu.value for mu in spin_range])
    jj = j.value * (j.value + 1.0)
    return np.diag(np.sqrt(jj - m[:-1] * (m[:-1] + 1.0)), k=-1).astype(complex)


def jx_matrix(j: HalfInt) -> GeneratorMatrix:
    """J_x = (J_+ + J_-)/2."""
    up = _raising(j)
    return GeneratorMatrix(j=j, axis="x", entries=0.5 * (up + up.conj().T))


def jy_matrix(j: HalfInt) -> GeneratorMatrix:
    """J_y = (J_+ - J_-)/(2i)."""
    up = _raising(j)
    return GeneratorMatrix(j=j, axis="y", entries=-0.5j * (up - up.conj().T))


def jz_matrix(j: HalfInt) -> GeneratorMatrix:
    spin_range = _check_oracle_size(j)
    m = np.array([mu.value for mu in spin_range], dtype=complex)
    return GeneratorMatrix(j=j, axis="z", entries=np.diag(m))


def bs_unitary(j: HalfInt, theta: float) -> np.ndarray:
    """Strahlteiler exp(iθJ_x); Beträge stimmen mit |d^j(θ)| überein."""
    return expm(1j * theta * jx_matrix(j).entries)


def rotation_y(j: HalfInt, theta: float) -> np.ndarray:
    """exp(-iθJ_y); reell und elementweise gleich d^j(θ) inklusive Vorzeichen."""
    return expm(-1j * theta * jy_matrix(j).entries)


def trace_out_matrix(state: PureLossyState) -> np.ndarray:
    """
    ρ' als dichte Matrix über |a'>|b>, Index a'·(N+1) + b.

    Baut den vollen Drei-Moden-Vektor ψ[a', c', b] und summiert c' aus.
    """
    n_photons = state.j.twice
    if n_photons > EXPLICIT_TRACE_MAX_N:
        raise CapacityError(
            f"explicit trace-out is capped at N={EXPLICIT_TRACE_MAX_N}, got N={n_photons}"
        )
    dim = n_photons + 1
    tensor = np.zeros((dim, dim, dim), dtype=complex)
    for mu, m, coeff in state.entries():
        a_occ, c_occ, b_occ = state.fock_occupation(mu, m)
        tensor[a_occ, c_occ, b_occ] += coeff
    rho = np.einsum("acb,dce->abde", tensor, tensor.conj())
    return rho.reshape(dim * dim, dim * dim)


def trace_out_explicit(state: PureLossyState) -> ReducedDensity:
    """
    Explizit ausgespurtes ρ' in Blockform.

    Einträge außerhalb der Blöcke k-m = k'-n müssen verschwinden.
    """
    dense = trace_out_matrix(state)
    if np.max(np.abs(dense.imag)) > 1e-12:
        raise DomainError("explicit reduced density is not real")
    real = dense.real

    n_photons = state.j.twice
    mus = state.state.spin_range.values
    covered = np.zeros_like(real, dtype=bool)
    blocks = {}
    for ell in range(n_photons + 1):
        members = [mu for i, mu in enumerate(mus) if i >= ell]
        # a' = j+μ-ℓ, b = j-μ
        idx = [
            ((state.j + mu).twice // 2 - ell) * (n_photons + 1)
            + (state.j - mu).twice // 2
            for mu in members
        ]
        block = real[np.ix_(idx, idx)].copy()
        block.setflags(write=False)
        covered[np.ix_(idx, idx)] = True
        blocks[ell] = LostPhotonBlock(ell=ell, mus=tuple(members), matrix=block)

    leaked = float(np.max(np.abs(real[~covered]), initial=0.0))
    if leaked > 1e-12:
        raise DomainError(f"explicit reduced density mixes lost-photon blocks ({leaked:.3g})")
    return ReducedDensity(j=state.j, L=state.channel.L, blocks=blocks)


def quadrature_sharpness(dist: PhaseDistribution, n_points: int) -> complex:
    """
    Trapezregel für ∫ P(φ) e^{iφ} dφ auf [0, 2π).

    Für ein bandbegrenztes periodisches Integranden ist das bis auf
    Rundung exakt, sobald n_points oberhalb der Nyquist-Grenze liegt.
    """
    size = dist.coeff.shape[0]
    if n_points < 4 * size:
        raise DomainError(
            f"quadrature needs at least {4 * size} points for 2j+1={size}, got {n_points}"
        )
    phi = np.arange(n_points) * (2.0 * math.pi / n_points)
    values = dist.evaluate(phi) * np.exp(1j * phi)
    return complex(np.sum(values) * (2.0 * math.pi / n_points))
