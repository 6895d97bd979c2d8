"""
Let's Do. | CanoPhase – Hilfsfunktionen.

Enthält zentrale Konstanten (Größengrenzen, Toleranzen, Standardwerte),
die Fehlertypen des Pakets und die Zahlenformatierung für Ausgabedateien.
"""

from __future__ import annotations

import math
from typing import Tuple


# Obergrenze für die Photonenzahl N = 2j
MAX_PHOTON_NUMBER = 4096

# Speicher-Guard für den Dichtematrix-Pfad (der geschlossene Pfad hat keinen)
DENSITY_MAX_N = 256

# Größengrenzen der Brute-Force-Referenzen
ORACLE_MAX_TWO_J = 24
EXPLICIT_TRACE_MAX_N = 8

# Standard-Scanbereich für Kurven und N_opt-Suche
DEFAULT_N_RANGE: Tuple[int, int] = (1, 1000)

# Phasengitter für Verteilungen
MIN_PHI_SAMPLES = 64
DEFAULT_PHI_SAMPLES = 1024

# Toleranzen
NORMALIZATION_TOL = 1e-12
IMAG_GUARD_TOL = 1e-12
SHARPNESS_TOL = 1e-12
LOSS_ANGLE_TOL = 1e-12

# 17 signifikante Stellen = verlustfreier Round-Trip für float64
FLOAT_DIGITS = 17

# Prüfwinkel und Verlustwerte der Oracle-Suite
VALIDATION_THETAS = (0.1, 0.7, math.pi / 2, 2.5)
VALIDATION_LOSSES = (0.0, 0.1, 0.3, 0.5)
VALIDATION_MAX_TWO_J = 12


class DomainError(ValueError):
    """Ungültige Eingabe: Quantenzahl, Verlust, Photonenzahl oder Zustand."""


class CapacityError(ValueError):
    """Eingabe überschreitet eine konfigurierte Größengrenze."""


def check_photon_number(n: int, minimum: int = 0) -> int:
    """
    Prüft eine Photonenzahl gegen den unterstützten Bereich.

    Args:
        n: Photonenzahl N
        minimum: kleinster zulässiger Wert

    Returns:
        n als int
    """
    if isinstance(n, bool) or int(n) != n:
        raise DomainError(f"photon number must be an integer, got {n!r}")
    n = int(n)
    if n < minimum:
        raise DomainError(f"photon number must be >= {minimum}, got {n}")
    if n > MAX_PHOTON_NUMBER:
        raise DomainError(
            f"photon number {n} exceeds the supported maximum {MAX_PHOTON_NUMBER}"
        )
    return n


def check_loss(loss: float) -> float:
    """Prüft einen Verlustwert L auf [0, 1)."""
    loss = float(loss)
    if math.isnan(loss) or loss < 0.0:
        raise DomainError(f"loss must be >= 0, got {loss}")
    if loss >= 1.0:
        raise DomainError("loss must be < 1")
    return loss


def format_float(value: float) -> str:
    """
    Formatiert eine Zahl deterministisch mit 17 signifikanten Stellen.

    Unendlich wird als 'inf' geschrieben.
    """
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if math.isnan(value):
        return "nan"
    return f"{value:.{FLOAT_DIGITS}g}"
