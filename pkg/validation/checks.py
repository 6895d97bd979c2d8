"""
Let's Do. | CanoPhase – Gegenprüfungen.

Führt die Oracle-Vergleiche nacheinander aus und liefert pro Vergleich
ein CheckResult. Läuft hinter dem Kommando `validate`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from core.loss import channel_from_loss, pure_lossy_state, reduced_density
from core.optimal_state import optimal_amplitudes
from core.povm import (
    distribution,
    distribution_from_density,
    holevo,
    lossless_reference,
    sharpness_closed,
)
from core.spin import HalfInt, SpinRange
from core.utils import VALIDATION_LOSSES, VALIDATION_MAX_TWO_J, VALIDATION_THETAS
from core.wigner import d_value
from validation.oracle import (
    bs_unitary,
    quadrature_sharpness,
    rotation_y,
    trace_out_matrix,
)

DFunc = Callable[[HalfInt, HalfInt, HalfInt, float], float]

DENSITY_LOSSES = (0.1, 0.3, 0.7)


@dataclass
class CheckResult:
    """Ergebnis einer einzelnen Gegenprüfung."""

    name: str
    passed: bool
    max_error: float
    tolerance: float
    witness: str = ""


def _result(name: str, worst: float, tolerance: float, witness: str) -> CheckResult:
    return CheckResult(
        name=name,
        passed=bool(worst <= tolerance),
        max_error=float(worst),
        tolerance=tolerance,
        witness=witness,
    )


def _matrix(d_func: DFunc, j: HalfInt, theta: float) -> np.ndarray:
    values = SpinRange(j).values
    return np.array([[d_func(j, a, b, theta) for b in values] for a in values])


def check_wigner_oracle(max_two_j: int, d_func: DFunc = d_value) -> CheckResult:
    """d^j(θ) gegen exp(-iθJ_y) (mit Vorzeichen) und |exp(iθJ_x)|."""
    worst, witness = 0.0, ""
    for two_j in range(max_two_j + 1):
        j = HalfInt(two_j)
        values = SpinRange(j).values
        for theta in VALIDATION_THETAS:
            d = _matrix(d_func, j, theta)
            signed = np.abs(d - rotation_y(j, theta).real)
            magnitude = np.abs(np.abs(d) - np.abs(bs_unitary(j, theta)))
            err = np.maximum(signed, magnitude)
            row, col = np.unravel_index(int(np.argmax(err)), err.shape)
            if err[row, col] > worst:
                worst = float(err[row, col])
                witness = f"j={j}, a={values[row]}, b={values[col]}, theta={theta:.6g}"
    return _result("wigner vs matrix exponential", worst, 1e-8, witness)


def check_wigner_rows(max_two_j: int, d_func: DFunc = d_value) -> CheckResult:
    """Σ_b d² = 1 für jede Zeile."""
    worst, witness = 0.0, ""
    for two_j in range(max_two_j + 1):
        j = HalfInt(two_j)
        values = SpinRange(j).values
        for theta in VALIDATION_THETAS:
            defects = np.abs(np.sum(_matrix(d_func, j, theta) ** 2, axis=1) - 1.0)
            row = int(np.argmax(defects))
            if defects[row] > worst:
                worst = float(defects[row])
                witness = f"j={j}, a={values[row]}, theta={theta:.6g}"
    return _result("wigner row normalization", worst, 1e-10, witness)


def check_lossless_anchor(n_max: int = 100) -> CheckResult:
    """Voller Pfad bei L = 0 gegen tan²(π/(N+2)), relativ."""
    ch = channel_from_loss(0.0)
    worst, witness = 0.0, ""
    for n in range(1, n_max + 1):
        variance = holevo(sharpness_closed(optimal_amplitudes(n), ch)).holevo_variance
        reference = lossless_reference(n)
        err = abs(variance - reference) / reference
        if err > worst:
            worst, witness = err, f"N={n}"
    return _result("lossless anchor tan^2(pi/(N+2))", worst, 1e-9, witness)


def check_dual_path(n_max: int = 20) -> CheckResult:
    """Geschlossene Schärfe gegen Dichtematrix-Pfad + Fourier-Koeffizient."""
    worst, witness = 0.0, ""
    for loss in VALIDATION_LOSSES:
        ch = channel_from_loss(loss)
        for n in range(1, n_max + 1):
            state = optimal_amplitudes(n)
            closed = sharpness_closed(state, ch)
            via_rho = distribution_from_density(reduced_density(state, ch)).sharpness()
            err = abs(closed - via_rho)
            if err > worst:
                worst, witness = err, f"N={n}, L={loss:g}"
    return _result("closed form vs density matrix", worst, 1e-10, witness)


def check_density_physicality(n_max: int = 8) -> CheckResult:
    """Spur, Symmetrie, Positivität und Abgleich mit explizitem Ausspuren."""
    worst, witness = 0.0, ""
    for loss in DENSITY_LOSSES:
        ch = channel_from_loss(loss)
        for n in range(1, n_max + 1):
            state = optimal_amplitudes(n)
            rho = reduced_density(state, ch)
            explicit = trace_out_matrix(pure_lossy_state(state, ch))
            # Fehler relativ zur jeweiligen Toleranz
            ratios = {
                "trace": abs(rho.trace() - 1.0) / 1e-10,
                "symmetry": rho.symmetry_defect() / 1e-12,
                "eigenvalue": max(0.0, -rho.min_eigenvalue()) / 1e-10,
                "explicit": float(np.max(np.abs(rho.to_fock_matrix() - explicit)))
                / 1e-12,
            }
            label, ratio = max(ratios.items(), key=lambda item: item[1])
            if ratio > worst:
                worst, witness = ratio, f"N={n}, L={loss:g} ({label})"
    return _result("reduced density physicality (error/tol)", worst, 1.0, witness)


def check_subnormalization(n_max: int = 20) -> CheckResult:
    """∫P dφ = Σ ψ_μ² (1-L)^{j+μ}."""
    worst, witness = 0.0, ""
    for loss in VALIDATION_LOSSES:
        ch = channel_from_loss(loss)
        for n in range(1, n_max + 1):
            state = optimal_amplitudes(n)
            expected = float(
                np.sum(state.psi ** 2 * (1.0 - loss) ** np.arange(state.psi.size))
            )
            err = abs(distribution(state, ch).integral() - expected)
            if err > worst:
                worst, witness = err, f"N={n}, L={loss:g}"
    return _result("sub-normalization identity", worst, 1e-10, witness)


def check_quadrature(n_max: int = 20, n_points: int = 4096) -> CheckResult:
    """Trapez-Quadratur von P(φ)e^{iφ} gegen die geschlossene Schärfe."""
    worst, witness = 0.0, ""
    for loss in VALIDATION_LOSSES:
        ch = channel_from_loss(loss)
        for n in range(1, n_max + 1):
            state = optimal_amplitudes(n)
            numeric = quadrature_sharpness(distribution(state, ch), n_points)
            err = max(abs(numeric.real - sharpness_closed(state, ch)), abs(numeric.imag))
            if err > worst:
                worst, witness = err, f"N={n}, L={loss:g}"
    return _result("quadrature vs closed sharpness", worst, 1e-8, witness)


def run_all(
    max_two_j: int = VALIDATION_MAX_TWO_J,
    d_func: DFunc = d_value,
    on_log: Optional[Callable[[str, str], None]] = None,
    on_result: Optional[Callable[[CheckResult], None]] = None,
) -> List[CheckResult]:
    """
    Führt alle Gegenprüfungen aus.

    Args:
        max_two_j: größtes 2j für die Wigner-Vergleiche
        d_func: zu prüfende d-Funktion (für Tests austauschbar)
        on_log: Callback(message, tag)
        on_result: Callback(CheckResult) nach jeder Prüfung

    Returns:
        Liste aller CheckResults in Ausführungsreihenfolge
    """
    checks: List[Callable[[], CheckResult]] = [
        lambda: check_wigner_oracle(max_two_j, d_func),
        lambda: check_wigner_rows(max_two_j, d_func),
        check_lossless_anchor,
        check_dual_path,
        check_density_physicality,
        check_subnormalization,
        check_quadrature,
    ]
    results: List[CheckResult] = []
    for idx, check in enumerate(checks, start=1):
        result = check()
        results.append(result)
        if on_log:
            tag = "success" if result.passed else "error"
            on_log(
                f"[{idx}/{len(checks)}] {result.name}: "
                f"{'PASS' if result.passed else 'FAIL'} "
                f"(max error {result.max_error:.3e}, tol {result.tolerance:.0e})",
                tag,
            )
        if on_result:
            on_result(result)
    return results


def first_failure(results: List[CheckResult]) -> Optional[CheckResult]:
    return next((r for r in results if not r.passed), None)
