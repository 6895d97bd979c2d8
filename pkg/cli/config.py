"""
Let's Do. | CanoPhase – Laufkonfiguration.

RunConfig bündelt alle Kommandozeilen-Optionen eines Laufs und prüft
sie vor der Ausführung. Dazu die Parser für `lo:hi` und
`lo:hi:count[:log]`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from core.utils import (
    DEFAULT_N_RANGE,
    DEFAULT_PHI_SAMPLES,
    MIN_PHI_SAMPLES,
    ORACLE_MAX_TWO_J,
    VALIDATION_MAX_TWO_J,
    DomainError,
    check_loss,
    check_photon_number,
)

COMMANDS = ("curve", "nopt", "dist", "validate")
FORMATS = ("csv", "json")


def parse_n_range(text: str) -> Tuple[int, int]:
    """'lo:hi' -> (lo, hi)."""
    parts = text.split(":")
    if len(parts) != 2:
        raise DomainError(f"n-range must look like lo:hi, got {text!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError:
        raise DomainError(f"n-range bounds must be integers, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise DomainError(f"n-range needs 1 <= lo <= hi, got {text!r}")
    return lo, hi


def parse_loss_grid(text: str) -> Tuple[float, ...]:
    """
    'lo:hi:count[:log]' -> aufsteigendes Verlustgitter.

    Args:
        text: Gitterangabe; mit ':log' logarithmisch verteilt

    Returns:
        Tupel der Verlustwerte
    """
    parts = text.split(":")
    if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "log"):
        raise DomainError(f"loss grid must look like lo:hi:count[:log], got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise DomainError(f"invalid loss grid {text!r}") from None
    if count < 1 or hi < lo:
        raise DomainError(f"loss grid needs count >= 1 and lo <= hi, got {text!r}")
    if len(parts) == 4:
        if lo <= 0.0:
            raise DomainError("log-spaced loss grid needs lo > 0")
        grid = np.geomspace(lo, hi, count) if count > 1 else np.array([lo])
    else:
        grid = np.linspace(lo, hi, count) if count > 1 else np.array([lo])
    return tuple(float(x) for x in grid)


@dataclass(frozen=True)
class RunConfig:
    """Optionen eines CLI-Laufs."""

    command: str
    loss: Optional[float] = None
    loss_grid: Tuple[float, ...] = ()
    n: Optional[int] = None
    n_range: Tuple[int, int] = DEFAULT_N_RANGE
    phi_samples: int = DEFAULT_PHI_SAMPLES
    output_path: Optional[str] = None
    format: str = "csv"
    normalized: bool = False
    jobs: int = 1
    max_two_j: int = VALIDATION_MAX_TWO_J
    plot: bool = True

    def validate(self) -> "RunConfig":
        """Prüft die Optionen; wirft DomainError bei Verstößen."""
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise DomainError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.jobs < 1:
            raise DomainError("jobs must be >= 1")

        if self.command in ("curve", "dist"):
            if self.loss is None:
                raise DomainError(f"{self.command} needs --loss")
            check_loss(self.loss)
        if self.command == "curve":
            check_photon_number(self.n_range[0], minimum=1)
            check_photon_number(self.n_range[1], minimum=self.n_range[0])
        if self.command == "nopt":
            if not self.loss_grid:
                raise DomainError("nopt needs --loss-grid")
            for loss in self.loss_grid:
                check_loss(loss)
            check_photon_number(self.n_range[0], minimum=1)
            check_photon_number(self.n_range[1], minimum=self.n_range[0])
        if self.command == "dist":
            if self.n is None:
                raise DomainError("dist needs --n")
            check_photon_number(self.n, minimum=1)
            if self.phi_samples < MIN_PHI_SAMPLES:
                raise DomainError(f"phi-samples must be >= {MIN_PHI_SAMPLES}")
            nyquist = 4 * (self.n + 1)
            if self.phi_samples < nyquist:
                raise DomainError(
                    f"phi-samples={self.phi_samples} is below the Nyquist guard "
                    f"{nyquist} for N={self.n}"
                )
        if self.command == "validate" and not (0 <= self.max_two_j <= ORACLE_MAX_TWO_J):
            raise DomainError(f"max-2j must lie in [0, {ORACLE_MAX_TWO_J}]")
        return self

    def as_header(self, **extra: object) -> dict:
        """Konfiguration für Datei-Header und JSON (deterministisch sortiert)."""
        header = {"command": self.command, "normalized": self.normalized}
        if self.command in ("curve", "dist"):
            header["loss"] = self.loss
        if self.command == "curve":
            header["n_range"] = list(self.n_range)
        if self.command == "nopt":
            header["loss_grid"] = list(self.loss_grid)
            header["n_min"] = self.n_range[0]
            header["n_max"] = self.n_range[1]
        if self.command == "dist":
            header["n"] = self.n
            header["phi_samples"] = self.phi_samples
        header.update(extra)
        return {key: header[key] for key in sorted(header)}

