"""
Let's Do. | CanoPhase – Photonenzahl-Scans.

Erzeugt Δφ(N)-Kurven mit Schrotrausch- und Heisenberg-Referenz, sucht
die optimale Photonenzahl N_opt(L) und die obere Grenze des
Sub-Schrotrausch-Bereichs.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

from core.loss import LossChannel, channel_from_loss
from core.optimal_state import optimal_amplitudes
from core.povm import holevo, sharpness_closed, shot_noise
from core.utils import DEFAULT_N_RANGE, DomainError, check_photon_number


class SweepLimit(str, Enum):
    """Ergebnis ohne ganzzahligen Wert im Scanbereich."""

    NONE_IN_RANGE = "none-in-range"
    NOT_FOUND = "none"


NumberOrLimit = Union[int, SweepLimit]


@dataclass(frozen=True)
class CurvePoint:
    """Ein Punkt der Δφ(N)-Kurve."""

    N: int
    delta_phi: float
    shot_noise: float
    heisenberg: float

    @property
    def is_subshot(self) -> bool:
        return self.delta_phi < self.shot_noise


@dataclass(frozen=True)
class SweepResult:
    """Kurve für einen Verlustwert samt N_opt und Sub-Schrotrausch-Grenze."""

    L: float
    points: Tuple[CurvePoint, ...]
    n_opt: NumberOrLimit
    n_subshot_max: NumberOrLimit
    renormalized: bool = False

    def subshot_range(self) -> Optional[Tuple[int, int]]:
        """(erstes, letztes) N des Sub-Schrotrausch-Laufs um das Minimum von Δφ."""
        return _subshot_run_of(self.points)


def _evaluate_point(n: int, ch: LossChannel, renormalized: bool) -> CurvePoint:
    estimate = holevo(sharpness_closed(optimal_amplitudes(n), ch, renormalized))
    return CurvePoint(
        N=n,
        delta_phi=estimate.min_detectable_phase,
        shot_noise=shot_noise(n),
        heisenberg=math.tan(math.pi / (n + 2)),
    )


def _argmin_index(points: Sequence[CurvePoint]) -> int:
    # erster Index des Minimums = kleinstes N bei Gleichstand
    return min(range(len(points)), key=lambda i: (points[i].delta_phi, i))


def _n_opt_of(points: Sequence[CurvePoint]) -> NumberOrLimit:
    best = _argmin_index(points)
    if best == len(points) - 1:
        return SweepLimit.NONE_IN_RANGE
    return points[best].N


def _subshot_run_of(points: Sequence[CurvePoint]) -> Optional[Tuple[int, int]]:
    """
    Zusammenhängender Sub-Schrotrausch-Lauf um das Minimum von Δφ.

    Liegt das Minimum selbst nicht unter 1/√N, kann oberhalb kein N
    darunter liegen (Δφ wächst nicht unter das Minimum, 1/√N fällt);
    dann zählt der nächste Lauf unterhalb des Minimums.
    """
    anchor = _argmin_index(points)
    while anchor >= 0 and not points[anchor].is_subshot:
        anchor -= 1
    if anchor < 0:
        return None
    first = last = anchor
    while first > 0 and points[first - 1].is_subshot:
        first -= 1
    while last < len(points) - 1 and points[last + 1].is_subshot:
        last += 1
    return points[first].N, points[last].N


def _subshot_bound_of(points: Sequence[CurvePoint]) -> NumberOrLimit:
    run = _subshot_run_of(points)
    if run is None:
        return SweepLimit.NOT_FOUND
    if run[1] == points[-1].N:
        return SweepLimit.NONE_IN_RANGE
    return run[1]


def _check_range(n_min: int, n_max: int) -> Tuple[int, int]:
    n_min = check_photon_number(n_min, minimum=1)
    n_max = check_photon_number(n_max, minimum=1)
    if n_min > n_max:
        raise DomainError(f"empty photon-number range {n_min}:{n_max}")
    return n_min, n_max


def curve(
    L: float,
    n_min: int = DEFAULT_N_RANGE[0],
    n_max: int = DEFAULT_N_RANGE[1],
    renormalized: bool = False,
    jobs: int = 1,
    on_progress: Optional[Callable[[int, int, str], None]] = None,
) -> SweepResult:
    """
    Scannt N = n_min … n_max bei festem Verlust.

    Args:
        L: Verlust in [0, 1)
        n_min: kleinste Photonenzahl
        n_max: größte Photonenzahl
        renormalized: renormierte Schärfe statt der Größe des Verlustmodells
        jobs: Anzahl Worker-Threads; die Reihenfolge der Ergebnisse bleibt fest
        on_progress: Callback(current, total, label)

    Returns:
        SweepResult mit einem Punkt pro N
    """
    n_min, n_max = _check_range(n_min, n_max)
    ch = channel_from_loss(L)
    photon_numbers = range(n_min, n_max + 1)
    total = len(photon_numbers)

    def _task(n: int) -> CurvePoint:
        return _evaluate_point(n, ch, renormalized)

    points: List[CurvePoint] = []
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for idx, point in enumerate(pool.map(_task, photon_numbers), start=1):
                points.append(point)
                if on_progress:
                    on_progress(idx, total, f"N={point.N}")
    else:
        for idx, n in enumerate(photon_numbers, start=1):
            points.append(_task(n))
            if on_progress:
                on_progress(idx, total, f"N={n}")

    return SweepResult(
        L=ch.L,
        points=tuple(points),
        n_opt=_n_opt_of(points),
        n_subshot_max=_subshot_bound_of(points),
        renormalized=renormalized,
    )


def find_n_opt(
    L: float,
    n_max: int = DEFAULT_N_RANGE[1],
    n_min: int = DEFAULT_N_RANGE[0],
    renormalized: bool = False,
    jobs: int = 1,
) -> NumberOrLimit:
    """Argmin von Δφ; NONE_IN_RANGE, wenn das Minimum bei n_max liegt."""
    return curve(L, n_min, n_max, renormalized=renormalized, jobs=jobs).n_opt


def find_subshot_bound(
    L: float,
    n_max: int = DEFAULT_N_RANGE[1],
    n_min: int = DEFAULT_N_RANGE[0],
    renormalized: bool = False,
    jobs: int = 1,
) -> NumberOrLimit:
    """
    Größtes N mit Δφ < 1/√N im zusammenhängenden Lauf um das Minimum von Δφ.

    NONE_IN_RANGE, wenn der Lauf bis n_max reicht; NOT_FOUND, wenn kein N
    unter der Schrotrauschgrenze liegt.
    """
    return curve(L, n_min, n_max, renormalized=renormalized, jobs=jobs).n_subshot_max


def bound_as_count(bound: NumberOrLimit, n_max: int) -> int:
    """Vergleichbare Zahl: NOT_FOUND = 0, NONE_IN_RANGE = n_max."""
    if bound is SweepLimit.NOT_FOUND:
        return 0
    if bound is SweepLimit.NONE_IN_RANGE:
        return n_max
    return int(bound)


def _check_grid(loss_grid: Sequence[float]) -> List[float]:
    grid = [float(x) for x in loss_grid]
    if not grid:
        raise DomainError("loss grid must not be empty")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise DomainError("loss grid must be ascending")
    return grid


def nopt_vs_loss(
    loss_grid: Sequence[float],
    n_max: int = DEFAULT_N_RANGE[1],
    renormalized: bool = False,
    jobs: int = 1,
    on_progress: Optional[Callable[[int, int, str], None]] = None,
    on_result: Optional[Callable[[SweepResult], None]] = None,
    n_min: int = DEFAULT_N_RANGE[0],
) -> List[Tuple[float, NumberOrLimit]]:
    """
    N_opt für jeden Verlust eines aufsteigenden Gitters.

    Args:
        loss_grid: aufsteigende Verlustwerte
        n_max: größte Photonenzahl je Scan
        renormalized: renormierte Schärfe
        jobs: Worker-Threads je Scan
        on_progress: Callback(current, total, label) pro Gitterpunkt
        on_result: Callback(SweepResult) pro Gitterpunkt
        n_min: kleinste Photonenzahl je Scan

    Returns:
        Liste (L, N_opt) in Gitterreihenfolge
    """
    grid = _check_grid(loss_grid)
    n_min, n_max = _check_range(n_min, n_max)
    rows: List[Tuple[float, NumberOrLimit]] = []
    for idx, loss in enumerate(grid, start=1):
        if on_progress:
            on_progress(idx, len(grid), f"L={loss:g}")
        result = curve(loss, n_min, n_max, renormalized=renormalized, jobs=jobs)
        rows.append((loss, result.n_opt))
        if on_result:
            on_result(result)
    return rows


def subshot_limit_of(results: Iterable[SweepResult]) -> Optional[float]:
    """Größter Verlust unter den Scans, bei dem noch ein N unter 1/√N liegt."""
    losses = [r.L for r in results if r.n_subshot_max is not SweepLimit.NOT_FOUND]
    return max(losses) if losses else None


def subshot_loss_limit(
    loss_grid: Sequence[float],
    n_max: int = DEFAULT_N_RANGE[1],
    jobs: int = 1,
    n_min: int = DEFAULT_N_RANGE[0],
) -> Optional[float]:
    """Größter Gitterverlust, bei dem noch ein N unter der Schrotrauschgrenze liegt."""
    results: List[SweepResult] = []
    nopt_vs_loss(loss_grid, n_max, jobs=jobs, on_result=results.append, n_min=n_min)
    return subshot_limit_of(results)
