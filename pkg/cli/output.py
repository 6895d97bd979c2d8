"""
Let's Do. | CanoPhase – Ausgabedateien.

Schreibt Tabellen deterministisch als CSV (Metadaten als `# key=value`
vor der Kopfzeile) oder als JSON-Objekt mit `config` und `rows`.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Dict, Optional, Sequence, Union

from core.utils import format_float

Cell = Union[int, float, str]


def _csv_cell(value: Cell) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def _json_literal(value: object, depth: int = 0) -> str:
    """
    JSON-Text eines Werts; Gleitkommazahlen mit 17 signifikanten Stellen
    wie in der CSV, nicht endliche Werte als String ("inf").
    """
    pad = "  " * (depth + 1)
    end = "  " * depth
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(key), ensure_ascii=False)}: {_json_literal(v, depth + 1)}"
            for key, v in value.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{pad}{_json_literal(v, depth + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(value, float):
        text = format_float(value)
        return text if math.isfinite(value) else json.dumps(text)
    return json.dumps(value, ensure_ascii=False)


def _meta_value(value: object) -> str:
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(_meta_value(v) for v in value)
    return str(value)


def render_csv(columns: Sequence[str], rows: Sequence[Sequence[Cell]], header: Dict) -> str:
    """CSV-Text mit Metadatenzeilen, Kopfzeile und Datenzeilen."""
    buf = io.StringIO()
    for key, value in header.items():
        buf.write(f"# {key}={_meta_value(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(cell) for cell in row])
    return buf.getvalue()


def render_json(columns: Sequence[str], rows: Sequence[Sequence[Cell]], header: Dict) -> str:
    """JSON-Text {"config": …, "rows": [{spalte: wert}, …]}."""
    payload = {
        "config": dict(header),
        "rows": [dict(zip(columns, row)) for row in rows],
    }
    return _json_literal(payload) + "\n"


def render(fmt: str, columns: Sequence[str], rows: Sequence[Sequence[Cell]], header: Dict) -> str:
    if fmt == "json":
        return render_json(columns, rows, header)
    return render_csv(columns, rows, header)


def write_text(path: Optional[str], text: str, stdout=None) -> Optional[Path]:
    """
    Schreibt Text in eine Datei (UTF-8) oder, ohne Pfad, auf stdout.

    Returns:
        Pfad der geschriebenen Datei oder None bei stdout
    """
    if path is None:
        (stdout or sys.stdout).write(text)
        return None
    target = Path(path)
    with open(target, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    return target

