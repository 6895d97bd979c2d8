"""
Let's Do. | CanoPhase – Konsolen-Protokoll.

Gibt Statusmeldungen mit Zeitstempel und farblicher Hervorhebung
(Erfolg = grün, Fehler = rot) auf stderr aus, damit Daten auf stdout
und in Dateien sauber bleiben.
"""

from __future__ import annotations

import sys
from datetime import datetime
from typing import List, Optional, TextIO

# ANSI-Farben je Tag
_TAG_COLORS = {
    "success": "\033[92m",
    "error": "\033[91m",
    "warning": "\033[93m",
    "info": "\033[94m",
    "header": "\033[95m",
    "dim": "\033[90m",
    "timestamp": "\033[90m",
}
_RESET = "\033[0m"


class LogConsole:
    """Farbiges Protokoll für die Kommandozeile."""

    def __init__(
        self,
        stream: Optional[TextIO] = None,
        quiet: bool = False,
        color: Optional[bool] = None,
    ):
        self._stream = stream if stream is not None else sys.stderr
        self._quiet = quiet
        if color is None:
            color = bool(getattr(self._stream, "isatty", lambda: False)())
        self._color = color
        self._lines: List[str] = []

    def _get_timestamp(self) -> str:
        """Gibt einen formatierten Zeitstempel zurück."""
        return datetime.now().strftime("[%H:%M:%S] ")

    def _paint(self, text: str, tag: str) -> str:
        if not self._color or tag not in _TAG_COLORS:
            return text
        return f"{_TAG_COLORS[tag]}{text}{_RESET}"

    def log(self, message: str, tag: str = "") -> None:
        """
        Schreibt eine Zeile ins Protokoll.

        Args:
            message: Die Log-Nachricht
            tag: Farb-Tag ('success', 'error', 'warning', 'info', 'header', 'dim')
        """
        self._lines.append(message)
        if self._quiet and tag != "error":
            return
        ts = self._paint(self._get_timestamp(), "timestamp")
        self._stream.write(ts + self._paint(message, tag) + "\n")
        self._stream.flush()

    def log_success(self, message: str) -> None:
        """Erfolgs-Nachricht (grün)."""
        self.log(message, "success")

    def log_error(self, message: str) -> None:
        """Fehler-Nachricht (rot)."""
        self.log(message, "error")

    def log_warning(self, message: str) -> None:
        """Warnung (gelb)."""
        self.log(message, "warning")

    def log_info(self, message: str) -> None:
        """Info-Nachricht (blau)."""
        self.log(message, "info")

    def log_header(self, message: str) -> None:
        """Header-Nachricht (lila)."""
        self.log(message, "header")

    def log_dim(self, message: str) -> None:
        """Abgedimmte Nachricht (grau)."""
        self.log(message, "dim")

    def progress(self, current: int, total: int, label: str) -> None:
        """Fortschritt, nur bei jedem zehnten Schritt und am Ende."""
        step = max(1, total // 10)
        if current % step == 0 or current == total:
            self.log_dim(f"[{current}/{total}] {label}")

    def get_content(self) -> str:
        """Gibt den gesamten Log-Inhalt als String zurück."""
        return "\n".join(self._lines)
