"""
Let's Do. | CanoPhase – Kommandos.

Führt curve, nopt, dist und validate aus, schreibt die Datendateien
samt Plot-Skript und meldet den Verlauf über die LogConsole.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Callable, Dict, List, Optional, Union

import numpy as np

from cli.config import RunConfig
from cli.log_console import LogConsole
from cli.output import render, write_text
from cli.plot_script import write_plot_script
from core.loss import channel_from_loss
from core.optimal_state import optimal_amplitudes
from core.povm import distribution, holevo
from core.sweep import SweepLimit, SweepResult, curve, nopt_vs_loss, subshot_limit_of
from validation.checks import CheckResult, first_failure, run_all

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3

CURVE_COLUMNS = ("n", "delta_phi", "shot_noise", "heisenberg")
NOPT_COLUMNS = ("loss", "n_opt")
DIST_COLUMNS = ("phi", "p")


def _limit_text(value: Union[int, SweepLimit]) -> Union[int, str]:
    return value.value if isinstance(value, SweepLimit) else value


def _emit(
    cfg: RunConfig,
    console: LogConsole,
    columns,
    rows,
    header: Dict,
    stdout=None,
) -> None:
    """Schreibt Daten (und ggf. Plot-Skript) und protokolliert die Pfade."""
    text = render(cfg.format, columns, rows, header)
    target = write_text(cfg.output_path, text, stdout=stdout)
    if target is None:
        return
    console.log_success(f"Daten geschrieben: {target} ({len(rows)} Zeilen)")
    if cfg.plot:
        script = write_plot_script(cfg.command, Path(target), cfg.format, header)
        console.log_info(f"Plot-Skript: {script}")


def run_curve(cfg: RunConfig, console: LogConsole, stdout=None) -> int:
    """Δφ(N)-Kurve mit Schrotrausch- und Heisenberg-Spalte."""
    lo, hi = cfg.n_range
    console.log_header(f"Kurve: L={cfg.loss:g}, N={lo}…{hi}")
    result: SweepResult = curve(
        cfg.loss,
        lo,
        hi,
        renormalized=cfg.normalized,
        jobs=cfg.jobs,
        on_progress=console.progress,
    )
    rows = [(p.N, p.delta_phi, p.shot_noise, p.heisenberg) for p in result.points]
    header = cfg.as_header(
        n_opt=_limit_text(result.n_opt),
        n_subshot_max=_limit_text(result.n_subshot_max),
    )
    console.log_info(
        f"N_opt={_limit_text(result.n_opt)}, "
        f"Sub-Schrotrausch-Grenze={_limit_text(result.n_subshot_max)}"
    )
    _emit(cfg, console, CURVE_COLUMNS, rows, header, stdout)
    return EXIT_OK


def run_nopt(cfg: RunConfig, console: LogConsole, stdout=None) -> int:
    """N_opt über einem aufsteigenden Verlustgitter."""
    n_min, n_max = cfg.n_range
    console.log_header(
        f"N_opt-Scan: {len(cfg.loss_grid)} Verlustwerte, N={n_min}…{n_max}"
    )
    results: List[SweepResult] = []
    pairs = nopt_vs_loss(
        cfg.loss_grid,
        n_max,
        renormalized=cfg.normalized,
        jobs=cfg.jobs,
        on_progress=console.progress,
        on_result=results.append,
        n_min=n_min,
    )
    rows = [
        (loss, "none" if n_opt is SweepLimit.NONE_IN_RANGE else n_opt)
        for loss, n_opt in pairs
    ]
    limit = subshot_limit_of(results)
    header = cfg.as_header(subshot_loss_limit="none" if limit is None else limit)
    console.log_info(f"Größter Verlust mit Sub-Schrotrausch-Schätzung: {limit}")
    _emit(cfg, console, NOPT_COLUMNS, rows, header, stdout)
    return EXIT_OK


def run_dist(cfg: RunConfig, console: LogConsole, stdout=None) -> int:
    """P(φ) auf einem gleichmäßigen Gitter über [0, 2π)."""
    console.log_header(f"Verteilung: N={cfg.n}, L={cfg.loss:g}")
    state = optimal_amplitudes(cfg.n)
    ch = channel_from_loss(cfg.loss)
    dist = distribution(state, ch)
    raw_integral = dist.integral()
    if cfg.normalized:
        dist = dist.normalized()

    phi = np.arange(cfg.phi_samples) * (2.0 * math.pi / cfg.phi_samples)
    values = dist.evaluate(phi)
    estimate = holevo(dist.sharpness())
    extra = {
        "integral": dist.integral(),
        "sharpness": estimate.sharpness,
        "delta_phi": estimate.min_detectable_phase,
    }
    if cfg.normalized:
        extra["unnormalized_integral"] = raw_integral
    header = cfg.as_header(**extra)
    console.log_info(f"Integral von P: {dist.integral():.12g}")
    rows = [(float(x), float(y)) for x, y in zip(phi, values)]
    _emit(cfg, console, DIST_COLUMNS, rows, header, stdout)
    return EXIT_OK


def run_validate(
    cfg: RunConfig,
    console: LogConsole,
    stdout=None,
    d_func: Optional[Callable] = None,
) -> int:
    """
    Führt die Oracle-Gegenprüfungen aus und gibt eine Tabelle aus.

    Returns:
        0 wenn alle Prüfungen bestehen, sonst 3
    """
    console.log_header(f"Validierung (2j <= {cfg.max_two_j})")
    kwargs = {"d_func": d_func} if d_func is not None else {}
    results: List[CheckResult] = run_all(cfg.max_two_j, on_log=console.log, **kwargs)

    width = max(len(r.name) for r in results)
    lines = [f"{'check':<{width}}  status  max_error  tolerance"]
    for r in results:
        lines.append(
            f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL':<6}  "
            f"{r.max_error:9.2e}  {r.tolerance:9.0e}"
        )
    write_text(None, "\n".join(lines) + "\n", stdout=stdout)

    failed = first_failure(results)
    if failed is not None:
        console.log_error(f"FAIL: {failed.name} at {failed.witness}")
        return EXIT_VALIDATION
    console.log_success("Alle Gegenprüfungen bestanden")
    return EXIT_OK


COMMAND_HANDLERS = {
    "curve": run_curve,
    "nopt": run_nopt,
    "dist": run_dist,
    "validate": run_validate,
}
