"""
Let's Do. | CanoPhase – Wigner-d-Matrixelemente.

Numerisch stabile Auswertung von d^j_{a,b}(θ) = <j,a| exp(-iθJ_y) |j,b>
über die Jacobi-Polynom-Darstellung. Jede Strahlteiler-Transformation
im Verlustkanal läuft über diese Funktion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import binom, gammaln

from core.spin import HalfInt, SpinRange
from core.utils import DomainError


@dataclass(frozen=True)
class DElementQuery:
    """Anfrage für ein einzelnes Element d^j_{a,b}(θ)."""

    j: HalfInt
    a: HalfInt
    b: HalfInt
    theta: float

    def __post_init__(self) -> None:
        spin_range = SpinRange(self.j)
        if self.a not in spin_range or self.b not in spin_range:
            raise DomainError(
                f"indices a={self.a}, b={self.b} outside [-{self.j}, {self.j}]"
            )
        if not (0.0 <= self.theta <= math.pi):
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}")


def log_factorial(n: int) -> float:
    """ln(n!) über die Log-Gammafunktion."""
    if n < 0:
        raise DomainError(f"log_factorial needs n >= 0, got {n}")
    return float(gammaln(n + 1))


def _jacobi_explicit(n: int, alpha: int, beta: int, x: float) -> float:
    """Endliche Summendarstellung; nur für entartete Rekursionsnenner."""
    total = 0.0
    for s in range(n + 1):
        total += (
            binom(n + alpha, n - s)
            * binom(n + beta, s)
            * ((x - 1.0) / 2.0) ** s
            * ((x + 1.0) / 2.0) ** (n - s)
        )
    return float(total)


def jacobi_poly(n: int, alpha: int, beta: int, x: float) -> float:
    """
    Jacobi-Polynom P_n^{(α,β)}(x) über die Drei-Term-Rekursion in n.

    Args:
        n: Grad (>= 0)
        alpha: erster Parameter
        beta: zweiter Parameter
        x: Stelle in [-1, 1]

    Returns:
        Wert des Polynoms
    """
    if n < 0:
        raise DomainError(f"Jacobi degree must be >= 0, got {n}")
    if n == 0:
        return 1.0

    p_prev = 1.0
    p_curr = (alpha + 1) + (alpha + beta + 2) * (x - 1.0) / 2.0
    for m in range(2, n + 1):
        s = 2 * m + alpha + beta
        lead = 2 * m * (m + alpha + beta) * (s - 2)
        if lead == 0:
            return _jacobi_explicit(n, alpha, beta, x)
        mid = (s - 1) * (s * (s - 2) * x + alpha * alpha - beta * beta)
        tail = 2 * (m + alpha - 1) * (m + beta - 1) * s
        p_prev, p_curr = p_curr, (mid * p_curr - tail * p_prev) / lead
    return p_curr


def d_element(q: DElementQuery) -> float:
    """
    Wigner-d-Element d^j_{a,b}(θ) in der Standardkonvention.

    Der Fakultätsvorfaktor wird im Log-Raum berechnet, damit 2j bis in die
    Tausender nicht überläuft.
    """
    if q.theta == 0.0:
        return 1.0 if q.a == q.b else 0.0

    two_j, two_a, two_b = q.j.twice, q.a.twice, q.b.twice
    j_plus_b = (two_j + two_b) // 2
    j_minus_b = (two_j - two_b) // 2
    j_plus_a = (two_j + two_a) // 2
    j_minus_a = (two_j - two_a) // 2
    a_minus_b = (two_a - two_b) // 2

    n = min(j_plus_b, j_minus_b, j_plus_a, j_minus_a)
    if n == j_plus_b:
        alpha, flip = a_minus_b, a_minus_b
    elif n == j_minus_b:
        alpha, flip = -a_minus_b, 0
    elif n == j_plus_a:
        alpha, flip = -a_minus_b, 0
    else:
        alpha, flip = a_minus_b, a_minus_b
    beta = two_j - 2 * n - alpha

    half = q.theta / 2.0
    sin_half = math.sin(half)
    cos_half = math.cos(half)
    if (alpha > 0 and sin_half == 0.0) or (beta > 0 and cos_half <= 0.0):
        return 0.0

    log_scale = 0.5 * (
        log_factorial(n)
        + log_factorial(n + alpha + beta)
        - log_factorial(n + alpha)
        - log_factorial(n + beta)
    )
    if alpha > 0:
        log_scale += alpha * math.log(sin_half)
    if beta > 0:
        log_scale += beta * math.log(cos_half)

    x = min(1.0, max(-1.0, math.cos(q.theta)))
    sign = -1.0 if flip % 2 else 1.0
    return sign * math.exp(log_scale) * jacobi_poly(n, alpha, beta, x)


def d_value(j: HalfInt, a: HalfInt, b: HalfInt, theta: float) -> float:
    """Kurzform von d_element ohne explizites Query-Objekt."""
    return d_element(DElementQuery(j=j, a=a, b=b, theta=theta))


def d_matrix(j: HalfInt, theta: float) -> np.ndarray:
    """
    Vollständige reelle Matrix d^j(θ), Zeile a und Spalte b aufsteigend
    von -j bis +j.
    """
    spin_range = SpinRange(j)
    values = spin_range.values
    out = np.empty((len(spin_range), len(spin_range)))
    for row, a in enumerate(values):
        for col, b in enumerate(values):
            out[row, col] = d_value(j, a, b, theta)
    return out
