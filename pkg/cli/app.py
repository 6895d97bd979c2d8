"""
Let's Do. | CanoPhase – Kommandozeile.

Baut den Argument-Parser mit den Unterkommandos curve, nopt, dist und
validate, übersetzt die Optionen in eine RunConfig und ruft das
passende Kommando auf. Fehler werden in Exit-Codes übersetzt
(0 Erfolg, 2 Bedienfehler, 3 Validierung fehlgeschlagen).
"""

from __future__ import annotations

import argparse
import os
from typing import List, Optional

from cli.commands import COMMAND_HANDLERS, EXIT_USAGE
from cli.config import FORMATS, RunConfig, parse_loss_grid, parse_n_range
from cli.log_console import LogConsole
from core.utils import (
    DEFAULT_N_RANGE,
    DEFAULT_PHI_SAMPLES,
    VALIDATION_MAX_TWO_J,
    CapacityError,
    DomainError,
)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", dest="out", default=None, help="Ausgabedatei (sonst stdout)")
    parser.add_argument("--format", choices=FORMATS, default="csv")
    parser.add_argument(
        "--normalized",
        action="store_true",
        help="renormierte Schärfe (nicht die Größe des Verlustmodells)",
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=os.cpu_count() or 1,
        help="Worker-Threads für Scans (Punkte sind kurz, der Gewinn bleibt klein)",
    )
    parser.add_argument("--no-plot", dest="plot", action="store_false", help="kein Plot-Skript")
    parser.add_argument("--quiet", action="store_true", help="nur Fehler protokollieren")


def build_parser() -> argparse.ArgumentParser:
    """Erstellt den Parser mit allen Unterkommandos."""
    from main import APP_NAME, APP_VERSION

    parser = argparse.ArgumentParser(
        prog="canophase",
        description=f"{APP_NAME}: canonical phase measurement with photon loss",
    )
    parser.add_argument("--version", action="version", version=f"{APP_NAME} {APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_curve = sub.add_parser("curve", help="minimum detectable phase vs. N")
    p_curve.add_argument("--loss", type=float, required=True)
    p_curve.add_argument(
        "--n-range", default=f"{DEFAULT_N_RANGE[0]}:{DEFAULT_N_RANGE[1]}", help="lo:hi"
    )
    _add_common(p_curve)

    p_nopt = sub.add_parser("nopt", help="optimal photon number vs. loss")
    p_nopt.add_argument("--loss-grid", required=True, help="lo:hi:count[:log]")
    p_nopt.add_argument(
        "--n-range", default=f"{DEFAULT_N_RANGE[0]}:{DEFAULT_N_RANGE[1]}", help="lo:hi"
    )
    _add_common(p_nopt)

    p_dist = sub.add_parser("dist", help="phase distribution P(phi)")
    p_dist.add_argument("--loss", type=float, required=True)
    p_dist.add_argument("--n", type=int, required=True)
    p_dist.add_argument("--phi-samples", type=int, default=DEFAULT_PHI_SAMPLES)
    _add_common(p_dist)

    p_val = sub.add_parser("validate", help="oracle cross-check suite")
    p_val.add_argument("--max-2j", dest="max_two_j", type=int, default=VALIDATION_MAX_TWO_J)
    p_val.add_argument("--quiet", action="store_true")

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Übersetzt geparste Argumente in eine geprüfte RunConfig."""
    values = {"command": args.command}
    if args.command != "validate":
        values.update(
            output_path=args.out,
            format=args.format,
            normalized=args.normalized,
            jobs=args.jobs,
            plot=args.plot,
        )
    if args.command in ("curve", "dist"):
        values["loss"] = args.loss
    if args.command in ("curve", "nopt"):
        values["n_range"] = parse_n_range(args.n_range)
    if args.command == "nopt":
        values["loss_grid"] = parse_loss_grid(args.loss_grid)
    if args.command == "dist":
        values.update(n=args.n, phi_samples=args.phi_samples)
    if args.command == "validate":
        values["max_two_j"] = args.max_two_j
    return RunConfig(**values).validate()


def main(argv: Optional[List[str]] = None, console: Optional[LogConsole] = None, stdout=None) -> int:
    """
    Einstieg der Kommandozeile.

    Args:
        argv: Argumente ohne Programmnamen (sonst sys.argv)
        console: Protokoll-Ziel (sonst stderr)
        stdout: Ziel für Daten ohne --out

    Returns:
        Exit-Code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if console is None:
        console = LogConsole(quiet=args.quiet)

    try:
        cfg = config_from_args(args)
        return COMMAND_HANDLERS[cfg.command](cfg, console, stdout=stdout)
    except (DomainError, CapacityError) as exc:
        console.log_error(str(exc))
        return EXIT_USAGE
    except OSError as exc:
        console.log_error(f"cannot write output: {exc}")
        return EXIT_USAGE
